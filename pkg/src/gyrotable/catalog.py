"""Built-in tables: five nondegenerate gyrogroups of order 8 and small group seeds.

The order-8 tables share rows 0-3 and the same gyration layout; they differ
in rows 4-7 and in the single non-identity gyration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteGyrogroup, Permutation
from .errors import InputError

_ROWS_0_3 = (
    "0 1 2 3 4 5 6 7",
    "1 0 3 2 5 4 7 6",
    "2 3 0 1 6 7 4 5",
    "3 2 1 0 7 6 5 4",
)

_ROWS_4_7 = {
    "K1": ("4 5 6 7 0 1 2 3", "5 4 7 6 1 0 3 2", "6 7 4 5 3 2 1 0", "7 6 5 4 2 3 0 1"),
    "L1": ("4 5 6 7 0 1 2 3", "5 4 7 6 1 0 3 2", "6 7 5 4 3 2 0 1", "7 6 4 5 2 3 1 0"),
    "M1": ("4 5 6 7 1 0 3 2", "5 4 7 6 0 1 2 3", "6 7 5 4 2 3 1 0", "7 6 4 5 3 2 0 1"),
    "N1": ("4 5 6 7 1 0 3 2", "5 4 7 6 0 1 2 3", "6 7 5 4 3 2 0 1", "7 6 4 5 2 3 1 0"),
    "O1": ("4 5 7 6 1 0 2 3", "5 4 6 7 0 1 3 2", "6 7 5 4 2 3 1 0", "7 6 4 5 3 2 0 1"),
}

# X marks the special gyration; identical layout for all five tables
_GYR_LAYOUT = (
    "IIIIIIII",
    "IIIIIIII",
    "IIIIXXXX",
    "IIIIXXXX",
    "IIXXIIXX",
    "IIXXIIXX",
    "IIXXXXII",
    "IIXXXXII",
)

# M1's C is (2,3)(4,5): the transposition (4,5) alone does not preserve the
# M1 operation (2⊕4 = 6 but 2⊕5 = 7), and (2,3)(4,5) is what the table forces.
_SPECIAL = {
    "K1": ("A", "(4,5)(6,7)"),
    "L1": ("B", "(2,3)(4,5)"),
    "M1": ("C", "(2,3)(4,5)"),
    "N1": ("D", "(2,3)(6,7)"),
    "O1": ("E", "(4,5)(6,7)"),
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    gyrogroup: FiniteGyrogroup
    special_perm: Permutation | None = None
    special_name: str | None = None


def _cyclic(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _group_entry(name: str, table: list[list[int]]) -> CatalogEntry:
    n = len(table)
    g = FiniteGyrogroup(
        table, name=name, perms={"I": Permutation.identity(n)},
        declared_gyr=[["I"] * n for _ in range(n)],
    )
    return CatalogEntry(name, g)


def _gyro_entry(name: str) -> CatalogEntry:
    rows = [[int(x) for x in r.split()] for r in _ROWS_0_3 + _ROWS_4_7[name]]
    label, cycles = _SPECIAL[name]
    special = Permutation.from_cycles(8, cycles)
    gyr = [[label if ch == "X" else "I" for ch in row] for row in _GYR_LAYOUT]
    g = FiniteGyrogroup(rows, name=name, perms={"I": Permutation.identity(8), label: special},
                        declared_gyr=gyr)
    return CatalogEntry(name, g, special, label)


GYROGROUP_NAMES = ("K1", "L1", "M1", "N1", "O1")
GROUP_NAMES = ("Z1", "Z2", "Z3", "Z4", "V4")


def _build() -> dict[str, CatalogEntry]:
    entries = {name: _gyro_entry(name) for name in GYROGROUP_NAMES}
    for n in (1, 2, 3, 4):
        entries[f"Z{n}"] = _group_entry(f"Z{n}", _cyclic(n))
    entries["V4"] = _group_entry("V4", [[a ^ b for b in range(4)] for a in range(4)])
    return entries


_ENTRIES = _build()


def names() -> tuple[str, ...]:
    return GYROGROUP_NAMES + GROUP_NAMES


def get(name: str) -> CatalogEntry:
    """Look up a catalog entry; accepts ``K1`` as well as ``K(1)``."""
    key = name.replace("(", "").replace(")", "").strip()
    try:
        return _ENTRIES[key]
    except KeyError:
        raise InputError(f"unknown catalog entry {name!r}; available: {', '.join(names())}") from None


def gyrogroup(name: str) -> FiniteGyrogroup:
    return get(name).gyrogroup
