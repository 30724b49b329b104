"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import time
from contextlib import contextmanager

import pytest

from gyrotable import catalog, double, double_iterated
from gyrotable.axioms import check_gyration_table, verify
from gyrotable.core import Subset
from gyrotable.iso import isomorphism
from gyrotable.search import SearchConfig, enumerate_gyrogroups
from gyrotable.tablefile import parse, render
from gyrotable import structure as S

import oracles
from conftest import plain

NAMES = catalog.GYROGROUP_NAMES


@contextmanager
def criterion(label, limit=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        dt = time.perf_counter() - t0
        ok = limit is None or dt < limit
        if not ok:
            pytest.fail(f"{label}: took {dt:.2f}s, limit {limit}s")
    finally:
        dt = time.perf_counter() - t0
        print(f"\n[{'PASS' if ok else 'FAIL'}] {label} ({dt:.2f}s)")


def test_ac1_catalog_verification():
    with criterion("AC1 catalog tables are nondegenerate gyrogroups with matching gyr tables", 1.0):
        for name in NAMES:
            g = catalog.gyrogroup(name)
            r = verify(g)
            assert r.is_gyrogroup, (name, r.first_failure())
            assert not r.is_degenerate, name
            v = check_gyration_table(g)
            assert v, (name, v.witness)
            pool, index = g.gyration_pool
            assert all(g.declared(a, b) == pool[index[a, b]] for a in range(8) for b in range(8))


def test_ac2_example_p_in_k1():
    with criterion("AC2 P={0,2} in K1 is conjugation-invariant but not normal", 1.0):
        g = catalog.gyrogroup("K1")
        P = Subset.of(g, [0, 2])
        assert all(S.conj_set(g, a, P) == P for a in range(8))
        assert not S.is_normal(g, P)
        lhs = S.left_coset(g, g.op(5, 6), P)
        rhs = S.product_set(g, S.left_coset(g, 5, P), [6])
        assert set(lhs) == {3, 1}
        assert set(rhs) == {3, 0}


def test_ac3_doubling_identities():
    with criterion("AC3 doubles of the catalog satisfy the doubling identities", 5.0):
        for name in NAMES:
            h = catalog.gyrogroup(name)
            d = double(h)
            g = d.result
            assert g.order == 16
            assert verify(g).is_gyrogroup, name
            assert S.is_normal(g, d.h_plus), name
            assert S.derived_subgyrogroup(g) == d.embed(S.derived_subgyrogroup(h)), name
            for a in range(8):
                base = S.conj_set(h, a, range(8))
                union = d.embed(base) | d.mirror(base)
                plus = S.conj_set(g, a, range(16))
                minus = S.conj_set(g, d.minus(a), range(16))
                assert plus == minus == union, (name, a)
                assert len(plus) == 2 * len(base)
            zero_minus = Subset.of(g, (g.op(d.minus(0), x) for x in d.h_plus))
            assert zero_minus == d.h_minus


def test_ac4_subgyrogroup_classification():
    with criterion("AC4 every subgyrogroup of each double falls into one shape", 30.0):
        for name in NAMES:
            d = double(catalog.gyrogroup(name))
            subs = S.all_subgyrogroups(d.result)
            assert {frozenset(s) for s in subs} == set(oracles.closed_subsets(plain(d.result))), name
            for b in subs:
                c = S.classify_subgyrogroup(d, b)
                a_plus = set(b) & set(range(8))
                l_minus = set(b) - a_plus
                assert set(c.a_plus) == a_plus and set(c.l_minus) == l_minus
                l_plus = {x - 8 for x in l_minus}
                if not l_minus:
                    assert c.shape is S.Shape.INSIDE_H_PLUS
                    continue
                assert len(a_plus) == len(l_minus)
                assert S.is_subgyrogroup(d.base, a_plus | l_plus)
                if c.shape is S.Shape.MIRROR:
                    assert l_plus == a_plus
                else:
                    assert c.shape is S.Shape.SPLIT_DISJOINT
                    assert not (a_plus & l_plus)


def test_ac5_non_isomorphism():
    with criterion("AC5 the ten catalog pairs are non-isomorphic", 10.0):
        pairs = [(a, b) for i, a in enumerate(NAMES) for b in NAMES[i + 1:]]
        assert len(pairs) == 10
        for a, b in pairs:
            assert not isomorphism(catalog.gyrogroup(a), catalog.gyrogroup(b)), (a, b)


def test_ac6_small_order_census():
    with criterion("AC6 orders 1..6 give only groups, counts 1,1,1,2,1,2", 300.0):
        counts = []
        for n in range(1, 7):
            reps = enumerate_gyrogroups(SearchConfig(n, up_to_iso=True)).gyrogroups
            assert all(verify(g).is_degenerate for g in reps)
            brute = {oracles.canonical(t) for t in oracles.reduced_groups(n)}
            assert len(reps) == len(brute), n
            counts.append(len(reps))
        assert counts == [1, 1, 1, 2, 1, 2]


def test_ac7_cogyrogroup():
    with criterion("AC7 coaddition table of each catalog entry is a gyrogroup", 1.0):
        failures = {}
        for name in catalog.names():
            r = verify(S.coaddition_table(catalog.gyrogroup(name)))
            if not r.is_gyrogroup:
                c = r.first_failure()
                failures[name] = (c.name, c.witness)
        assert not failures, failures


def test_ac8_gyrocommutative_seeds():
    with criterion("AC8 doubles of abelian seeds are gyrocommutative groups"):
        for name in ("Z2", "Z3", "Z4", "V4"):
            r = verify(double(catalog.gyrogroup(name)).result)
            assert r.is_gyrogroup and r.is_gyrocommutative and r.is_degenerate, name


def test_ac9_iterated_doubling():
    with criterion("AC9 three doublings of K1 give a gyrogroup of order 64", 60.0):
        g = double_iterated(catalog.gyrogroup("K1"), 3)
        assert g.order == 64
        assert verify(g).is_gyrogroup


def test_ac10_derived_subgyrogroup_of_k1():
    with criterion("AC10 derived subgyrogroup of K1 is {0,1}, not {0}"):
        g = catalog.gyrogroup("K1")
        assert S.commutator(g, 5, 6) == 1
        t = plain(g)
        brute = {oracles.commutator(t, a, b) for a in range(8) for b in range(8)}
        assert set(S.commutators(g)) == brute == {0, 1}
        derived = set(S.derived_subgyrogroup(g))
        assert 1 in derived
        assert derived == {0, 1}
        assert derived != {0}


def test_ac11_round_trip_and_determinism():
    with criterion("AC11 parse/render round trip and parallel determinism"):
        tables = [catalog.gyrogroup(n) for n in catalog.names()]
        tables += [double(catalog.gyrogroup(n)).result for n in catalog.names()]
        for g in tables:
            text = render(g)
            back = parse(text)
            assert back == g and render(back) == text
        one = enumerate_gyrogroups(SearchConfig(6))
        many = enumerate_gyrogroups(SearchConfig(6, jobs=4))
        assert [g.cayley for g in one.gyrogroups] == [g.cayley for g in many.gyrogroups]
        assert [g.name for g in one.gyrogroups] == [g.name for g in many.gyrogroups]
