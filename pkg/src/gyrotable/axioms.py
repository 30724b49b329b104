"""Gyrogroup axiom verification with reproducible failure witnesses.

Checks run in a fixed order (identity, inverses, automorphism,
gyroassociativity, left loop) and every witness is the lexicographically
first violating tuple. Gyrations are always derived from the table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import FiniteGyrogroup, Table, Verdict, gyration_pool_of, gyration_rows, left_inverses_array
from .errors import InputError

LEFT_IDENTITY = "left identity"
LEFT_INVERSE = "left inverse"
AUTOMORPHISM = "gyration automorphism"
GYROASSOCIATIVITY = "gyroassociativity"
LEFT_LOOP = "left loop property"

AXIOMS = (LEFT_IDENTITY, LEFT_INVERSE, AUTOMORPHISM, GYROASSOCIATIVITY, LEFT_LOOP)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[AxiomCheck, ...]
    is_degenerate: bool = False
    is_gyrocommutative: bool = False
    # right counterparts, Latin property etc.; only filled in for gyrogroups
    derived: dict[str, bool] = field(default_factory=dict)

    @property
    def is_gyrogroup(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> AxiomCheck | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        return {
            "is_gyrogroup": self.is_gyrogroup,
            "is_degenerate": self.is_degenerate,
            "is_gyrocommutative": self.is_gyrocommutative,
            "checks": [
                {"axiom": c.name, "passed": c.passed,
                 "witness": list(c.witness) if c.witness is not None else None,
                 "detail": c.detail}
                for c in self.checks
            ],
            "derived": dict(self.derived),
        }


def _table_array(table: FiniteGyrogroup | Table) -> np.ndarray:
    if isinstance(table, FiniteGyrogroup):
        return table.array
    if isinstance(table, np.ndarray):
        rows = table.tolist()
    else:
        rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise InputError("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"table is not square: row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise InputError(f"entry ({i},{j}) is not an integer: {x!r}")
            if not 0 <= x < n:
                raise InputError(f"entry ({i},{j}) = {x} out of range 0..{n - 1}")
    return np.array(rows, dtype=np.int64)


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    return tuple(int(x) for x in hits[0]) if len(hits) else None


def verify(table: FiniteGyrogroup | Table) -> VerificationReport:
    """Run the full axiom suite on a candidate Cayley table."""
    t = _table_array(table)
    n = t.shape[0]
    ar = np.arange(n)
    checks: list[AxiomCheck] = []

    bad = _first(t[0] != ar)
    checks.append(AxiomCheck(LEFT_IDENTITY, bad is None, bad,
                             "" if bad is None else f"0 ⊕ {bad[0]} = {t[0, bad[0]]}"))

    inv = left_inverses_array(t)
    bad = _first(inv < 0)
    checks.append(AxiomCheck(LEFT_INVERSE, bad is None, bad,
                             "" if bad is None else f"no b with b ⊕ {bad[0]} = 0"))
    if bad is not None:
        for name in AXIOMS[2:]:
            checks.append(AxiomCheck(name, False, None, "not evaluated: left inverses missing"))
        return VerificationReport(tuple(checks))

    pool, index = gyration_pool_of(t)

    # automorphism: judge each distinct gyration once, then scan (a, b) in order
    verdicts = []
    for p in pool:
        if len(set(p.tolist())) != n:
            verdicts.append(("not a bijection", None))
            continue
        hom_bad = _first(p[t] != t[p[:, None], p[None, :]])
        verdicts.append(("not a homomorphism", hom_bad) if hom_bad else None)
    auto_bad = None
    for a in range(n):
        for b in range(n):
            v = verdicts[index[a, b]]
            if v is not None:
                reason, xy = v
                auto_bad = ((a, b) + (xy or ()), f"gyr[{a},{b}] {reason}")
                break
        if auto_bad:
            break
    checks.append(AxiomCheck(AUTOMORPHISM, auto_bad is None,
                             auto_bad[0] if auto_bad else None, auto_bad[1] if auto_bad else ""))

    assoc_bad = None
    for a in range(n):
        gyr_a = gyration_rows(t, inv, a)
        lhs = t[a][t]
        rhs = t[t[a][:, None], gyr_a]
        hit = _first(lhs != rhs)
        if hit is not None:
            assoc_bad = (a,) + hit
            break
    checks.append(AxiomCheck(GYROASSOCIATIVITY, assoc_bad is None, assoc_bad,
                             "" if assoc_bad is None else
                             "a ⊕ (b ⊕ c) != (a ⊕ b) ⊕ gyr[a,b]c at (a,b,c)"))

    # pool entries are deduplicated exactly, so equal maps have equal indices
    loop_bad = _first(index[t, ar[None, :]] != index)
    checks.append(AxiomCheck(LEFT_LOOP, loop_bad is None, loop_bad,
                             "" if loop_bad is None else "gyr[a⊕b, b] != gyr[a,b] at (a,b)"))

    ok = all(c.passed for c in checks)
    if not ok:
        return VerificationReport(tuple(checks))

    degenerate = len(pool) == 1
    gyrocomm = _gyrocommutative_witness(t, pool, index) is None
    return VerificationReport(tuple(checks), degenerate, gyrocomm, _derived_properties(t, inv, index))


def _gyrocommutative_witness(t, pool, index) -> tuple[int, int] | None:
    n = t.shape[0]
    for a in range(n):
        for b in range(n):
            if t[a, b] != pool[index[a, b]][t[b, a]]:
                return (a, b)
    return None


def _derived_properties(t: np.ndarray, inv: np.ndarray, index: np.ndarray) -> dict[str, bool]:
    n = t.shape[0]
    ar = np.arange(n)
    return {
        "latin_square": bool(all(len(set(r)) == n for r in t.tolist())
                             and all(len(set(c)) == n for c in t.T.tolist())),
        "two_sided_identity": bool((t[:, 0] == ar).all()),
        "two_sided_inverses": bool((t[ar, inv] == 0).all()),
        # gyr[a, b ⊕ a] = gyr[a, b]
        "right_loop_property": bool((index[ar[:, None], t.T] == index).all()),
    }


def is_gyrocommutative(g: FiniteGyrogroup) -> Verdict:
    """Check ``a ⊕ b = gyr[a,b](b ⊕ a)`` for all pairs; witness is the first failing pair."""
    pool, index = gyration_pool_of(g.array)
    w = _gyrocommutative_witness(g.array, pool, index)
    return Verdict(w is None, w)


def check_gyration_table(g: FiniteGyrogroup) -> Verdict:
    """Compare the declared gyration table against derived gyrations."""
    if g.declared_gyr is None:
        raise InputError(f"{g.name or 'gyrogroup'} has no declared gyration table")
    perms = dict(g.perms)
    for a in g.elements():
        for b in g.elements():
            if perms[g.declared_gyr[a][b]] != g.gyr(a, b):
                return Verdict(False, (a, b))
    return Verdict(True)
