"""Subgyrogroups, cosets, normality, coaddition, conjugation and commutators.

All functions assume the gyrogroup has passed :func:`gyrotable.axioms.verify`;
gyrations come from the cached derived pool on the gyrogroup.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .config import DEFAULT_ENUMERATION_CAP, size_cap
from .core import FiniteGyrogroup, Subset, Verdict, _check_element
from .doubling import DoubledGyrogroup
from .errors import InputError, InternalError, ResourceError


def _subset(g: FiniteGyrogroup, s: Subset | Iterable[int]) -> Subset:
    if isinstance(s, Subset):
        if s.mask >> g.order:
            raise InputError(f"subset {s!r} does not fit in order {g.order}")
        return Subset(g, s.mask)
    return Subset.of(g, s)


def _closure_mask(g: FiniteGyrogroup, mask: int) -> int:
    t = g.cayley
    elems = [i for i in range(g.order) if mask >> i & 1]
    i = 0
    # each newly added element is multiplied against everything seen so far
    while i < len(elems):
        x = elems[i]
        for y in elems[: i + 1]:
            for z in (t[x][y], t[y][x]):
                if not mask >> z & 1:
                    mask |= 1 << z
                    elems.append(z)
        i += 1
    return mask


def _closed(g: FiniteGyrogroup, mask: int) -> bool:
    t = g.cayley
    elems = [i for i in range(g.order) if mask >> i & 1]
    return all(mask >> t[x][y] & 1 for x in elems for y in elems)


def is_subgyrogroup(g: FiniteGyrogroup, s: Subset | Iterable[int]) -> bool:
    """A finite nonempty subset is a subgyrogroup iff it is closed under ⊕.

    Closure already forces 0 and all inverses into the subset, because left
    translations are injective and therefore permute a finite closed set.
    """
    s = _subset(g, s)
    if not s.mask:
        raise InputError("empty subset")
    return _closed(g, s.mask)


def _require_sub(g: FiniteGyrogroup, h) -> Subset:
    h = _subset(g, h)
    if not h.mask or not _closed(g, h.mask):
        raise InputError(f"{h!r} is not a subgyrogroup")
    return h


def generate(g: FiniteGyrogroup, gens: Subset | Iterable[int]) -> Subset:
    """Smallest subgyrogroup containing ``gens``."""
    gens = _subset(g, gens)
    return Subset(g, _closure_mask(g, gens.mask | 1))


def all_subgyrogroups(g: FiniteGyrogroup, *, cap: int | None = None) -> list[Subset]:
    """Every subgyrogroup, found by extending known ones by one element and closing.

    Sorted by size, then by bit mask.
    """
    cap = size_cap(DEFAULT_ENUMERATION_CAP) if cap is None else cap
    if g.order > cap:
        raise ResourceError(f"order {g.order} exceeds the enumeration cap {cap}")
    full = (1 << g.order) - 1
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for mask in frontier:
            outside = full & ~mask
            x = 0
            while outside:
                if outside & 1:
                    m = _closure_mask(g, mask | 1 << x)
                    if m not in seen:
                        seen.add(m)
                        nxt.append(m)
                outside >>= 1
                x += 1
        frontier = nxt
    return [Subset(g, m) for m in sorted(seen, key=lambda m: (bin(m).count("1"), m))]


def coadd(g: FiniteGyrogroup, a: int, b: int) -> int:
    """Coaddition ``a ⊞ b = a ⊕ gyr[a, ⊖b] b``."""
    _check_element(g, a, b)
    return g.op(a, g.gyr(a, g.inv(b))(b))


def cosub(g: FiniteGyrogroup, a: int, b: int) -> int:
    """Co-subtraction ``a ⊟ b = a ⊞ (⊖b)``."""
    _check_element(g, a, b)
    return coadd(g, a, g.inv(b))


def coaddition_table(g: FiniteGyrogroup) -> list[list[int]]:
    return [[coadd(g, a, b) for b in g.elements()] for a in g.elements()]


def conj(g: FiniteGyrogroup, a: int, b: int) -> int:
    """Conjugate of ``b`` by ``a``: ``(a ⊕ b) ⊟ a``."""
    _check_element(g, a, b)
    return cosub(g, g.op(a, b), a)


def conj_set(g: FiniteGyrogroup, a: int, s: Subset | Iterable[int]) -> Subset:
    s = _subset(g, s)
    return Subset.of(g, (conj(g, a, b) for b in s))


def product_set(g: FiniteGyrogroup, s, t) -> Subset:
    """Elementwise ``{x ⊕ y : x in s, y in t}``; ``s`` and ``t`` may be any subsets."""
    s, t = _subset(g, s), _subset(g, t)
    return Subset.of(g, (g.op(x, y) for x in s for y in t))


def left_coset(g: FiniteGyrogroup, a: int, h) -> Subset:
    """``a ⊕ H``."""
    _check_element(g, a)
    h = _require_sub(g, h)
    return Subset.of(g, (g.op(a, x) for x in h))


def right_coset(g: FiniteGyrogroup, a: int, h) -> Subset:
    """``H ⊕ a``."""
    _check_element(g, a)
    h = _require_sub(g, h)
    return Subset.of(g, (g.op(x, a) for x in h))


def _left_coset_masks(g: FiniteGyrogroup, h: Subset) -> list[int]:
    t = g.cayley
    members = list(h)
    out = []
    for a in g.elements():
        m = 0
        for x in members:
            m |= 1 << t[a][x]
        out.append(m)
    return out


def is_normal(g: FiniteGyrogroup, h) -> Verdict:
    """Normality as well-definedness of ``(a⊕H) ⊕ (b⊕H) = (a⊕b) ⊕ H``.

    Elements are grouped by the set ``a ⊕ H``; left cosets of a non-normal
    subgyrogroup need not partition the carrier, so only set equality is used.
    The witness is the lexicographically first ``(a, a', b, b')`` with
    ``a⊕H = a'⊕H``, ``b⊕H = b'⊕H`` but ``(a⊕b)⊕H != (a'⊕b')⊕H``.
    """
    h = _require_sub(g, h)
    t = g.cayley
    key = _left_coset_masks(g, h)
    n = g.order
    classes: dict[int, list[int]] = {}
    for a in range(n):
        classes.setdefault(key[a], []).append(a)
    # fast pass: each pair of classes must produce a single product coset
    bad = False
    for ca in classes.values():
        for cb in classes.values():
            if len({key[t[a][b]] for a in ca for b in cb}) > 1:
                bad = True
                break
        if bad:
            break
    if not bad:
        return Verdict(True)
    for a in range(n):
        for a2 in classes[key[a]]:
            for b in range(n):
                for b2 in classes[key[b]]:
                    if key[t[a][b]] != key[t[a2][b2]]:
                        return Verdict(False, (a, a2, b, b2))
    raise InternalError("fast normality pass disagrees with the exhaustive scan")


@dataclass(frozen=True)
class SufficientConditions:
    """The three classical sufficient conditions for normality."""

    gyr_trivial_on_h: bool  # gyr[h, a] = id for all h in H, a in G
    gyr_invariant: bool  # gyr[a, b](H) ⊆ H for all a, b
    cosets_agree: bool  # a ⊕ H = H ⊕ a for all a

    @property
    def all(self) -> bool:
        return self.gyr_trivial_on_h and self.gyr_invariant and self.cosets_agree


def _image_mask(p, members) -> int:
    m = 0
    for x in members:
        m |= 1 << p(x)
    return m


def normality_sufficient_conditions(g: FiniteGyrogroup, h) -> SufficientConditions:
    h = _require_sub(g, h)
    members = list(h)
    pool, index = g.gyration_pool
    n = g.order
    trivial = all(pool[index[x, a]].is_identity() for x in members for a in range(n))
    invariant_idx = {k for k, p in enumerate(pool) if _image_mask(p, members) & ~h.mask == 0}
    invariant = all(index[a, b] in invariant_idx for a in range(n) for b in range(n))
    agree = all(left_coset(g, a, h) == right_coset(g, a, h) for a in range(n))
    out = SufficientConditions(trivial, invariant, agree)
    if out.all and not is_normal(g, h):
        raise InternalError(f"{h!r} meets all sufficient conditions but is not normal")
    return out


def is_L_subgyrogroup(g: FiniteGyrogroup, h) -> Verdict:
    """``gyr[a, h](H) = H`` for all ``a`` in G and ``h`` in H; witness ``(a, h)``."""
    h = _require_sub(g, h)
    members = list(h)
    for a in g.elements():
        for x in members:
            if _image_mask(g.gyr(a, x), members) != h.mask:
                return Verdict(False, (a, x))
    return Verdict(True)


def commutator(g: FiniteGyrogroup, a: int, b: int) -> int:
    """``[a, b] = ⊖(a ⊕ b) ⊕ gyr[a, b](b ⊕ a)``."""
    _check_element(g, a, b)
    return g.op(g.inv(g.op(a, b)), g.gyr(a, b)(g.op(b, a)))


def commutators(g: FiniteGyrogroup) -> Subset:
    return Subset.of(g, (commutator(g, a, b) for a in g.elements() for b in g.elements()))


def derived_subgyrogroup(g: FiniteGyrogroup) -> Subset:
    """Subgyrogroup generated by all commutators (no normal closure is taken)."""
    return generate(g, commutators(g))


class Shape(enum.Enum):
    INSIDE_H_PLUS = 1
    SPLIT_DISJOINT = 2
    MIRROR = 3


@dataclass(frozen=True)
class SubgyroClassification:
    shape: Shape
    a_plus: Subset
    l_minus: Subset


def classify_subgyrogroup(d: DoubledGyrogroup, b) -> SubgyroClassification:
    """Place a subgyrogroup of a doubled gyrogroup into one of the three shapes.

    ``A+ = B ∩ H+`` and ``L- = B ∩ H-``. Side conditions of the matched shape
    and ``|A+| = |L-|`` are re-checked; a failure means the construction is
    broken and raises :class:`InternalError`.
    """
    g = d.result
    b = _require_sub(g, b)
    a_plus = b & d.h_plus
    l_minus = b & d.h_minus
    if not l_minus.mask:
        return SubgyroClassification(Shape.INSIDE_H_PLUS, a_plus, l_minus)

    l_plus = d.unmirror(l_minus)
    if len(a_plus) != len(l_minus):
        raise InternalError(f"|A+| = {len(a_plus)} but |L-| = {len(l_minus)} for {b!r}")
    if not _closed(g, a_plus.mask):
        raise InternalError(f"A+ = {a_plus!r} is not a subgyrogroup of H+")

    if l_plus == a_plus:
        return SubgyroClassification(Shape.MIRROR, a_plus, l_minus)
    if (a_plus & l_plus).mask:
        raise InternalError(f"{b!r}: A+ and L+ overlap without being equal")
    if not _closed(g, (a_plus | l_plus).mask):
        raise InternalError(f"{b!r}: A+ ∪ L+ is not a subgyrogroup of H+")
    if any(g.op(x, y) not in a_plus for x in l_minus for y in l_minus):
        raise InternalError(f"{b!r}: L- ⊗ L- escapes A+")
    return SubgyroClassification(Shape.SPLIT_DISJOINT, a_plus, l_minus)
