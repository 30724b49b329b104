"""Carrier types for finite gyrogroups and the primitive table operations.

Elements are dense indices ``0..n-1`` and ``0`` is always the identity.
A :class:`FiniteGyrogroup` is immutable; derived data (inverses, the
gyration pool) is computed lazily and cached on the instance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InputError, StructureError

Element = int
Table = Sequence[Sequence[int]]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0..n-1}`` stored as its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {list(images)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: str | Iterable[Sequence[int]]) -> Permutation:
        """Build from cycle notation, e.g. ``from_cycles(8, "(4,5)(6,7)")``."""
        if isinstance(cycles, str):
            text = cycles.replace(" ", "")
            if _CYCLE_RE.sub("", text):
                raise InputError(f"bad cycle notation: {cycles!r}")
            cycles = [
                [int(x) for x in body.split(",")] if body else []
                for body in _CYCLE_RE.findall(text)
            ]
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < n or x in seen:
                    raise InputError(f"bad cycle element {x} for degree {n}")
                seen.add(x)
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        # (self * other)(x) = self(other(x))
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> str:
        """Cycle notation without fixed points; ``"()"`` for the identity."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append("(" + ",".join(map(str, cyc)) + ")")
        return "".join(out) or "()"

    def __str__(self) -> str:
        return self.cycles()


def _as_matrix(rows: Table, what: str) -> tuple[tuple[int, ...], ...]:
    try:
        out = tuple(tuple(int(x) for x in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: entries must be integers") from exc
    n = len(out)
    if n == 0:
        raise InputError(f"{what}: empty table")
    for i, row in enumerate(out):
        if len(row) != n:
            raise InputError(f"{what}: row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise InputError(f"{what}: entry ({i},{j}) = {x} out of range 0..{n - 1}")
    return out


@dataclass(frozen=True)
class FiniteGyrogroup:
    """Cayley table of a finite gyrogroup, with an optional declared gyration table.

    Construction enforces a left identity at 0 and the Latin-square property.
    It does not run the full axiom check; use :func:`gyrotable.axioms.verify`.
    ``declared_gyr`` holds names into ``perms``; it is cross-check data only.
    """

    cayley: tuple[tuple[int, ...], ...]
    name: str | None = None
    perms: tuple[tuple[str, Permutation], ...] = ()
    declared_gyr: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        cayley = _as_matrix(self.cayley, "cayley")
        object.__setattr__(self, "cayley", cayley)
        n = len(cayley)
        if cayley[0] != tuple(range(n)):
            raise InputError("row 0 is not the identity row: 0 must be a left identity")
        for i, row in enumerate(cayley):
            if len(set(row)) != n:
                raise InputError(f"row {i} is not a permutation (not a Latin square)")
        for j in range(n):
            if len({row[j] for row in cayley}) != n:
                raise InputError(f"column {j} is not a permutation (not a Latin square)")

        perms = self.perms
        if isinstance(perms, dict):
            perms = perms.items()
        perms = tuple(sorted((str(k), v if isinstance(v, Permutation) else Permutation(v))
                             for k, v in perms))
        object.__setattr__(self, "perms", perms)
        names = dict(perms)
        if len(names) != len(perms):
            raise InputError("duplicate permutation names")
        for pname, p in perms:
            if len(p) != n:
                raise InputError(f"permutation {pname} has degree {len(p)}, expected {n}")

        if self.declared_gyr is not None:
            gyr = tuple(tuple(str(x) for x in row) for row in self.declared_gyr)
            if len(gyr) != n or any(len(row) != n for row in gyr):
                raise InputError(f"gyration table must be {n}x{n}")
            for i, row in enumerate(gyr):
                for j, pname in enumerate(row):
                    if pname not in names:
                        raise InputError(f"gyration entry ({i},{j}) names undeclared permutation {pname!r}")
            object.__setattr__(self, "declared_gyr", gyr)

    @property
    def order(self) -> int:
        return len(self.cayley)

    def __len__(self) -> int:
        return len(self.cayley)

    def __repr__(self) -> str:
        return f"FiniteGyrogroup(name={self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(len(self.cayley))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.cayley, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def op(self, a: Element, b: Element) -> Element:
        return self.cayley[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(gyro_inverse_table(self))

    def inv(self, a: Element) -> Element:
        return self.inverses[a]

    @cached_property
    def gyration_pool(self) -> tuple[tuple[Permutation, ...], np.ndarray]:
        """Distinct derived gyrations and the n x n matrix of pool indices.

        Pool entry 0 is always the identity (``gyr[0,0]``).
        """
        pool, index = gyration_pool_of(self.array)
        return tuple(Permutation(tuple(int(x) for x in p)) for p in pool), index

    def gyr(self, a: Element, b: Element) -> Permutation:
        """Cached derived gyration ``gyr[a,b]``."""
        pool, index = self.gyration_pool
        return pool[index[a, b]]

    def declared(self, a: Element, b: Element) -> Permutation:
        if self.declared_gyr is None:
            raise InputError(f"{self.name or 'gyrogroup'} has no declared gyration table")
        return dict(self.perms)[self.declared_gyr[a][b]]


def _check_element(g: FiniteGyrogroup, *elems: int) -> None:
    n = g.order
    for x in elems:
        if not (isinstance(x, (int, np.integer)) and 0 <= x < n):
            raise InputError(f"element {x!r} out of range 0..{n - 1}")


def op(g: FiniteGyrogroup, a: Element, b: Element) -> Element:
    """Return ``a ⊕ b``."""
    _check_element(g, a, b)
    return g.cayley[a][b]


def left_inverse(g: FiniteGyrogroup, a: Element) -> Element:
    """Return the unique ``b`` with ``b ⊕ a = 0``."""
    _check_element(g, a)
    hits = [b for b in g.elements() if g.cayley[b][a] == 0]
    if len(hits) != 1:
        raise StructureError(f"element {a} has {len(hits)} left inverses: {hits}")
    return hits[0]


def gyro_inverse_table(g: FiniteGyrogroup) -> list[int]:
    return [left_inverse(g, a) for a in g.elements()]


def derive_gyr(g: FiniteGyrogroup, a: Element, b: Element) -> Permutation:
    """Solve the gyroassociative law for the gyration: ``c -> ⊖(a⊕b) ⊕ (a⊕(b⊕c))``."""
    _check_element(g, a, b)
    t = g.cayley
    u = left_inverse(g, t[a][b])
    images = [t[u][t[a][t[b][c]]] for c in g.elements()]
    first: dict[int, int] = {}
    for c, y in enumerate(images):
        if y in first:
            raise StructureError(
                f"gyr[{a},{b}] is not injective: {first[y]} and {c} both map to {y}"
            )
        first[y] = c
    return Permutation(tuple(images))


def left_inverses_array(t: np.ndarray) -> np.ndarray:
    """Smallest ``b`` with ``t[b, a] == 0`` per column; -1 where none exists."""
    zero = t == 0
    has = zero.any(axis=0)
    return np.where(has, zero.argmax(axis=0), -1)


def gyration_rows(t: np.ndarray, inv: np.ndarray, a: int) -> np.ndarray:
    """All derived gyrations ``gyr[a, b]`` for fixed ``a`` as an n x n array (row b)."""
    m = t[a][t]  # m[b, c] = a ⊕ (b ⊕ c)
    u = inv[t[a]]  # u[b] = ⊖(a ⊕ b)
    return t[u[:, None], m]


def gyration_pool_of(t: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
    n = t.shape[0]
    inv = left_inverses_array(t)
    if (inv < 0).any():
        raise StructureError(f"element {int(np.argmax(inv < 0))} has no left inverse")
    keys: dict[bytes, int] = {}
    pool: list[np.ndarray] = []
    index = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        rows = gyration_rows(t, inv, a)
        for b in range(n):
            key = rows[b].tobytes()
            k = keys.get(key)
            if k is None:
                k = keys[key] = len(pool)
                pool.append(rows[b].copy())
            index[a, b] = k
    index.setflags(write=False)
    return pool, index


@dataclass(frozen=True)
class Subset:
    """A set of elements of one gyrogroup, stored as a bit mask.

    Equality and hashing look at the members only, so subsets of a base
    gyrogroup compare equal to their images under the index embedding.
    """

    parent: FiniteGyrogroup = field(compare=False, repr=False)
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.parent.order:
            raise InputError(f"subset mask {self.mask:#x} exceeds order {self.parent.order}")

    @classmethod
    def of(cls, g: FiniteGyrogroup, members: Iterable[int]) -> Subset:
        mask = 0
        for x in members:
            _check_element(g, x)
            mask |= 1 << int(x)
        return cls(g, mask)

    @classmethod
    def full(cls, g: FiniteGyrogroup) -> Subset:
        return cls(g, (1 << g.order) - 1)

    def __iter__(self) -> Iterator[int]:
        m, i = self.mask, 0
        while m:
            if m & 1:
                yield i
            m >>= 1
            i += 1

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and x >= 0 and bool(self.mask >> int(x) & 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def __le__(self, other: Subset) -> bool:
        return self.mask & ~other.mask == 0

    def __or__(self, other: Subset) -> Subset:
        return Subset(self.parent, self.mask | other.mask)

    def __and__(self, other: Subset) -> Subset:
        return Subset(self.parent, self.mask & other.mask)

    def __sub__(self, other: Subset) -> Subset:
        return Subset(self.parent, self.mask & ~other.mask)

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, self)) + "}"


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer plus the first counterexample when the answer is no."""

    holds: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds
