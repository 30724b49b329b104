"""Isomorphisms and automorphisms of finite gyrogroups by backtracking.

Images are chosen for elements 1, 2, ... in turn, smallest candidate first,
and every assignment is propagated through the tables (f(a⊕b) must equal
f(a)⊕f(b)). Hence solutions come out in lexicographic order of their image
sequences. Gyrations need no separate treatment: they are functions of the
operation and are carried along by any operation-preserving bijection.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .config import DEFAULT_ENUMERATION_CAP, size_cap
from .core import FiniteGyrogroup, Permutation
from .errors import InternalError, ResourceError


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    map: Permutation | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def element_orders(g: FiniteGyrogroup) -> list[int]:
    """Least k with a ⊕ (a ⊕ (... ⊕ a)) (k terms) equal to 0, for each a."""
    t = g.cayley
    out = []
    for a in g.elements():
        x, k = a, 1
        while x != 0:
            x = t[a][x]
            k += 1
        out.append(k)
    return out


def _search(g1: FiniteGyrogroup, g2: FiniteGyrogroup) -> Iterator[tuple[int, ...]]:
    n = g1.order
    if g2.order != n:
        return
    o1, o2 = element_orders(g1), element_orders(g2)
    if Counter(o1) != Counter(o2):
        return
    t1, t2 = g1.cayley, g2.cayley
    f = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def assign(x: int, y: int, trail: list[int]) -> bool:
        pending = [(x, y)]
        while pending:
            x, y = pending.pop()
            if f[x] != -1:
                if f[x] != y:
                    return False
                continue
            if used[y] or o1[x] != o2[y]:
                return False
            f[x] = y
            used[y] = True
            trail.append(x)
            assigned.append(x)
            for z in list(assigned):
                fz = f[z]
                pending.append((t1[x][z], t2[y][fz]))
                pending.append((t1[z][x], t2[fz][y]))
        return True

    def undo(trail: list[int]) -> None:
        for x in reversed(trail):
            used[f[x]] = False
            f[x] = -1
            assigned.pop()

    def rec() -> Iterator[tuple[int, ...]]:
        x = next((i for i in range(n) if f[i] == -1), None)
        if x is None:
            yield tuple(f)
            return
        for y in range(n):
            if used[y] or o1[x] != o2[y]:
                continue
            trail: list[int] = []
            if assign(x, y, trail):
                yield from rec()
            undo(trail)

    root: list[int] = []
    if assign(0, 0, root):
        yield from rec()


def _check_map(g1: FiniteGyrogroup, g2: FiniteGyrogroup, f: tuple[int, ...]) -> None:
    t1, t2 = g1.cayley, g2.cayley
    for a in g1.elements():
        for b in g1.elements():
            if f[t1[a][b]] != t2[f[a]][f[b]]:
                raise InternalError(f"map {f} fails to preserve {a} ⊕ {b}")


def isomorphism(g1: FiniteGyrogroup, g2: FiniteGyrogroup) -> IsoResult:
    """Lexicographically least isomorphism ``g1 -> g2``, if one exists."""
    for f in _search(g1, g2):
        _check_map(g1, g2, f)
        return IsoResult(True, Permutation(f))
    return IsoResult(False)


def automorphisms(g: FiniteGyrogroup, *, cap: int | None = None) -> list[Permutation]:
    """All automorphisms, sorted by image sequence."""
    cap = size_cap(DEFAULT_ENUMERATION_CAP) if cap is None else cap
    if g.order > cap:
        raise ResourceError(f"order {g.order} exceeds the automorphism cap {cap}")
    out = []
    for f in _search(g, g):
        _check_map(g, g, f)
        out.append(Permutation(f))
    return out
