"""Doubling a gyrogroup H+ into G = H+ ∪ H- of twice the order.

Encoding: x+ is index x and x- is index x + n. Products of equal-sign
elements land in H+, mixed-sign products land in H-. Gyrations are lifted
sign-preservingly from H+.
"""

from __future__ import annotations

from dataclasses import dataclass

from .axioms import check_gyration_table, verify
from .config import DEFAULT_DOUBLING_CAP, size_cap
from .core import FiniteGyrogroup, Permutation, Subset
from .errors import InputError, InternalError, ResourceError


@dataclass(frozen=True)
class DoubledGyrogroup:
    base: FiniteGyrogroup
    result: FiniteGyrogroup

    @property
    def n(self) -> int:
        return self.base.order

    def plus(self, x: int) -> int:
        return x

    def minus(self, x: int) -> int:
        """The image of base element ``x`` in H- (the bijection x -> x + n)."""
        return x + self.n

    def positive_part(self, x: int) -> int:
        return x % self.n

    def is_negative(self, x: int) -> bool:
        return x >= self.n

    @property
    def h_plus(self) -> Subset:
        return Subset(self.result, (1 << self.n) - 1)

    @property
    def h_minus(self) -> Subset:
        return Subset(self.result, ((1 << self.n) - 1) << self.n)

    def embed(self, s: Subset) -> Subset:
        """Image of a base subset inside H+."""
        return Subset(self.result, s.mask)

    def mirror(self, s: Subset) -> Subset:
        """Image of a base subset (or an H+ subset) inside H-."""
        return Subset(self.result, s.mask << self.n)

    def unmirror(self, s: Subset) -> Subset:
        """Preimage in H+ of the H- part of ``s``."""
        return Subset(self.result, s.mask >> self.n)


def _doubled_table(t: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    n = len(t)
    out = []
    for a in range(2 * n):
        row = []
        for b in range(2 * n):
            mixed = (a >= n) != (b >= n)
            row.append(t[a % n][b % n] + (n if mixed else 0))
        out.append(row)
    return out


def _lift(p: Permutation, n: int) -> Permutation:
    return Permutation(tuple(p.images) + tuple(x + n for x in p.images))


def _base_gyration_names(h: FiniteGyrogroup) -> tuple[dict[Permutation, str], list[list[str]]]:
    pool, index = h.gyration_pool
    if h.declared_gyr is not None and check_gyration_table(h):
        perms = dict(h.perms)
        names = {perms[nm]: nm for row in h.declared_gyr for nm in row}
        return names, [list(r) for r in h.declared_gyr]
    names = {p: ("I" if p.is_identity() else f"g{k}") for k, p in enumerate(pool)}
    return names, [[names[pool[index[a, b]]] for b in h.elements()] for a in h.elements()]


def double(h: FiniteGyrogroup, *, name: str | None = None, check: bool = True) -> DoubledGyrogroup:
    """Build the doubled gyrogroup of ``h`` with its lifted gyration table.

    The declared gyration table is cross-checked against gyrations derived
    from the new Cayley table; any mismatch raises :class:`InternalError`.
    """
    if check:
        report = verify(h)
        if not report.is_gyrogroup:
            failed = report.first_failure()
            raise InputError(f"cannot double {h.name or 'table'}: {failed.name} fails at {failed.witness}")
    n = h.order
    names, base_gyr = _base_gyration_names(h)
    perms = {nm: _lift(p, n) for p, nm in names.items()}
    gyr = [[base_gyr[a % n][b % n] for b in range(2 * n)] for a in range(2 * n)]
    if name is None:
        name = f"{h.name}-D1" if h.name else None
    g = FiniteGyrogroup(_doubled_table(h.cayley), name=name, perms=perms, declared_gyr=gyr)
    mismatch = check_gyration_table(g)
    if not mismatch:
        raise InternalError(f"lifted gyration disagrees with derived gyration at {mismatch.witness}")
    return DoubledGyrogroup(h, g)


def double_iterated(h: FiniteGyrogroup, k: int, *, cap: int | None = None) -> FiniteGyrogroup:
    """Apply :func:`double` ``k`` times, verifying every intermediate table."""
    if k < 0:
        raise InputError(f"iteration count must be >= 0, got {k}")
    cap = size_cap(DEFAULT_DOUBLING_CAP) if cap is None else cap
    if h.order * 2 ** k > cap:
        raise ResourceError(f"order {h.order * 2 ** k} exceeds the cap {cap}")
    g = h
    for i in range(1, k + 1):
        label = f"{h.name}-D{i}" if h.name else None
        g = double(g, name=label).result
    if k and not verify(g).is_gyrogroup:
        raise InternalError("doubled table failed verification")
    return g
