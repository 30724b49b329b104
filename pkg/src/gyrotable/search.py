"""Exhaustive enumeration of gyrogroups of a given order.

Cayley tables are filled row by row, left to right. Row 0 and column 0 are
fixed to the identity (a gyrogroup's left identity is two-sided). Each
assignment is pruned by the Latin property and by the left Bol identity
``a⊕(b⊕(a⊕c)) = (a⊕(b⊕a))⊕c``, which every gyrogroup satisfies; every
triple becomes checkable once all six cells it reads are filled. Complete
tables then go through the full axiom check.

The search tree is split into subtrees by the assignments of row 1. A
subtree is described by ``(floor, path)``: the values chosen so far and the
depth below which backtracking must not go. That pair is also the resumption
state when a budget runs out.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .axioms import verify
from .core import FiniteGyrogroup
from .errors import InputError, ResourceError
from .iso import element_orders, isomorphism

TableTuple = tuple[tuple[int, ...], ...]
Fragment = Sequence[Sequence[int | None]]

MAX_ORDER = 8


@dataclass(frozen=True)
class SearchConfig:
    order: int
    up_to_iso: bool = False
    nondegenerate_only: bool = False
    node_budget: int | None = None
    time_budget: float | None = None  # seconds
    jobs: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise InputError(f"order must be >= 1, got {self.order}")
        if self.order > MAX_ORDER:
            raise ResourceError(f"order {self.order} is beyond the supported maximum {MAX_ORDER}")
        if self.jobs < 1:
            raise InputError("jobs must be >= 1")


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    verify_rejections: int = 0
    degenerate_skipped: int = 0
    iso_rejections: int = 0

    def merge(self, other: SearchStats) -> None:
        for k, v in asdict(other).items():
            setattr(self, k, getattr(self, k) + v)


@dataclass
class SearchState:
    """Everything needed to continue an interrupted search."""

    order: int
    fragment: list[list[int | None]] | None
    up_to_iso: bool
    nondegenerate_only: bool
    found: list[list[list[int]]] = field(default_factory=list)
    pending: list[dict] = field(default_factory=list)  # {"floor": int, "path": [int]}
    stats: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> SearchState:
        return cls(**json.loads(text))


@dataclass
class SearchResult:
    gyrogroups: list[FiniteGyrogroup]
    stats: SearchStats


class SearchBudgetExhausted(ResourceError):
    """Raised when a node/time budget (or an interrupt) stops the search early."""

    def __init__(self, message: str, partial: SearchResult, state: SearchState):
        super().__init__(message)
        self.partial = partial
        self.state = state


class _Stop(Exception):
    def __init__(self, path: list[int], reason: str):
        self.path = path
        self.reason = reason


class _Engine:
    def __init__(self, n: int, fixed: dict[tuple[int, int], int]):
        self.n = n
        self.cells = [(r, c) for r in range(1, n) for c in range(1, n)]
        self.fixed = [fixed.get(cell) for cell in self.cells]
        self.t = [[-1] * n for _ in range(n)]
        self.rowpos = [[-1] * n for _ in range(n)]
        self.colpos = [[-1] * n for _ in range(n)]
        for x in range(n):
            self._set(0, x, x)
            if x:
                self._set(x, 0, x)
        for (r, c), v in fixed.items():
            if r and c:
                self._set(r, c, v)

    def _set(self, r, c, v):
        self.t[r][c] = v
        self.rowpos[r][v] = c
        self.colpos[c][v] = r

    def _unset(self, r, c):
        v = self.t[r][c]
        self.t[r][c] = -1
        self.rowpos[r][v] = -1
        self.colpos[c][v] = -1

    def _bol(self, a, b, x) -> bool:
        t = self.t
        t1 = t[a][x]
        if t1 < 0:
            return True
        t2 = t[b][t1]
        if t2 < 0:
            return True
        lhs = t[a][t2]
        if lhs < 0:
            return True
        s1 = t[b][a]
        if s1 < 0:
            return True
        s2 = t[a][s1]
        if s2 < 0:
            return True
        rhs = t[s2][x]
        return rhs < 0 or lhs == rhs

    def _bol_ok(self, r, c) -> bool:
        """Check every Bol triple that reads cell (r, c) and is fully determined."""
        n, t, rowpos, colpos, bol = self.n, self.t, self.rowpos, self.colpos, self._bol
        for k in range(n):
            # (r, c) read as a⊕x, as b⊕a
            if not bol(r, k, c) or not bol(c, r, k):
                return False
            # as b⊕(a⊕x): a⊕x = c
            x = rowpos[k][c]
            if x >= 0 and not bol(k, r, x):
                return False
            # as a⊕(b⊕(a⊕x)): b⊕(a⊕x) = c
            t1 = rowpos[k][c]
            if t1 >= 0:
                x = rowpos[r][t1]
                if x >= 0 and not bol(r, k, x):
                    return False
            # as (a⊕(b⊕a))⊕x with a⊕(b⊕a) = r
            s1 = rowpos[k][r]
            if s1 >= 0:
                b = colpos[k][s1]
                if b >= 0 and not bol(k, b, c):
                    return False
        # as a⊕(b⊕a): b⊕a = c with a = r
        b = colpos[r][c]
        if b >= 0:
            for x in range(n):
                if not bol(r, b, x):
                    return False
        return True

    def _try(self, d: int, v: int) -> bool:
        r, c = self.cells[d]
        if self.fixed[d] is None:
            if self.rowpos[r][v] >= 0 or self.colpos[c][v] >= 0:
                return False
            self._set(r, c, v)
        elif self.fixed[d] != v:
            return False
        if self._bol_ok(r, c):
            return True
        self._undo(d)
        return False

    def _undo(self, d: int) -> None:
        if self.fixed[d] is None:
            self._unset(*self.cells[d])

    def run(self, floor: int, path: list[int], on_leaf, stats: SearchStats,
            node_budget: int | None, deadline: float | None) -> None:
        """Explore the subtree below ``path[:floor]``, resuming after ``path``."""
        for d, v in enumerate(path):
            if not self._try(d, v):
                for e in range(d - 1, -1, -1):
                    self._undo(e)
                return
        depth_total = len(self.cells)
        stack = list(path[floor:]) + [-1]
        base = floor
        while stack:
            d = base + len(stack) - 1
            if d == depth_total:
                stats.leaves += 1
                on_leaf(tuple(tuple(row) for row in self.t))
                stack.pop()
                if stack:
                    self._undo(d - 1)
                continue
            fixed = self.fixed[d]
            candidates = (fixed,) if fixed is not None else range(self.n)
            placed = False
            for v in candidates:
                if v <= stack[-1]:
                    continue
                if self._try(d, v):
                    stack[-1] = v
                    placed = True
                    break
            if not placed:
                stack.pop()
                if stack:
                    self._undo(d - 1)
                continue
            stats.nodes += 1
            if node_budget is not None and stats.nodes >= node_budget:
                raise _Stop(path[:floor] + stack, "node budget exhausted")
            if deadline is not None and stats.nodes % 256 == 0 and time.monotonic() > deadline:
                raise _Stop(path[:floor] + stack, "time budget exhausted")
            stack.append(-1)
        for e in range(floor - 1, -1, -1):
            self._undo(e)


def _fragment_cells(n: int, fragment: Fragment | None) -> dict[tuple[int, int], int]:
    if fragment is None:
        return {}
    if len(fragment) != n or any(len(row) != n for row in fragment):
        raise InputError(f"fragment must be {n}x{n} (use None for unknown cells)")
    fixed = {}
    row_seen: list[dict[int, int]] = [{} for _ in range(n)]
    col_seen: list[dict[int, int]] = [{} for _ in range(n)]
    for r in range(n):
        for c in range(n):
            v = fragment[r][c]
            if v is None or v == -1:
                continue
            if not isinstance(v, int) or not 0 <= v < n:
                raise InputError(f"fragment cell ({r},{c}) = {v!r} out of range")
            if r == 0 and v != c:
                raise InputError(f"fragment cell (0,{c}) = {v}: row 0 must be the identity row")
            if v in row_seen[r]:
                raise InputError(f"fragment conflict: value {v} repeated in row {r} "
                                 f"(columns {row_seen[r][v]} and {c})")
            if v in col_seen[c]:
                raise InputError(f"fragment conflict: value {v} repeated in column {c} "
                                 f"(rows {col_seen[c][v]} and {r})")
            row_seen[r][v] = c
            col_seen[c][v] = r
            fixed[(r, c)] = v
    return fixed


def _column_zero_clash(fixed: dict[tuple[int, int], int]) -> bool:
    # the right identity law a⊕0 = a holds in every gyrogroup
    return any(c == 0 and r != v for (r, c), v in fixed.items())


def _split(n: int, fixed) -> list[list[int]]:
    """Feasible assignments of row 1 (the subtree roots), in lexicographic order."""
    eng = _Engine(n, fixed)
    depth = min(len(eng.cells), n - 1)
    roots: list[list[int]] = []

    def walk(d: int, path: list[int]) -> None:
        if d == depth:
            roots.append(list(path))
            return
        fx = eng.fixed[d]
        for v in ((fx,) if fx is not None else range(n)):
            if eng._try(d, v):
                path.append(v)
                walk(d + 1, path)
                path.pop()
                eng._undo(d)

    walk(0, [])
    return roots


def _accept(table: TableTuple, nondegenerate_only: bool, stats: SearchStats) -> bool:
    report = verify(table)
    if not report.is_gyrogroup:
        stats.verify_rejections += 1
        return False
    if nondegenerate_only and report.is_degenerate:
        stats.degenerate_skipped += 1
        return False
    return True


def _run_task(args) -> tuple[list[TableTuple], SearchStats, dict | None, str | None]:
    n, fixed, nondegenerate_only, floor, path, node_budget, deadline = args
    stats = SearchStats()
    found: list[TableTuple] = []

    def on_leaf(table):
        if _accept(table, nondegenerate_only, stats):
            found.append(table)

    eng = _Engine(n, fixed)
    try:
        eng.run(floor, path, on_leaf, stats, node_budget, deadline)
    except _Stop as stop:
        return found, stats, {"floor": floor, "path": stop.path}, stop.reason
    except KeyboardInterrupt:
        return found, stats, {"floor": floor, "path": list(path)}, "interrupted"
    return found, stats, None, None


def _iso_reduce(tables: list[FiniteGyrogroup], stats: SearchStats) -> list[FiniteGyrogroup]:
    reps: list[tuple[FiniteGyrogroup, tuple]] = []
    for g in tables:
        key = tuple(sorted(element_orders(g)))
        if any(k == key and isomorphism(g, r) for r, k in reps):
            stats.iso_rejections += 1
            continue
        reps.append((g, key))
    return [g for g, _ in reps]


def _finish(n: int, raw: list[TableTuple], up_to_iso: bool, stats: SearchStats) -> list[FiniteGyrogroup]:
    unique = sorted(set(raw))
    groups = [FiniteGyrogroup(t, name=f"G{n}.{i}") for i, t in enumerate(unique)]
    if up_to_iso:
        groups = _iso_reduce(groups, stats)
        groups = [FiniteGyrogroup(g.cayley, name=f"G{n}.{i}") for i, g in enumerate(groups)]
    return groups


def _execute(cfg: SearchConfig, fixed, fragment, found: list[TableTuple],
             tasks: list[dict], stats: SearchStats) -> SearchResult:
    n = cfg.order
    deadline = time.monotonic() + cfg.time_budget if cfg.time_budget is not None else None
    pending: list[dict] = []
    reason = None

    def state() -> SearchState:
        return SearchState(n, [list(r) for r in fragment] if fragment is not None else None,
                           cfg.up_to_iso, cfg.nondegenerate_only,
                           [[list(r) for r in t] for t in found], pending, asdict(stats))

    if cfg.jobs == 1:
        for i, task in enumerate(tasks):
            budget = None if cfg.node_budget is None else cfg.node_budget - stats.nodes
            if budget is not None and budget <= 0:
                pending.extend(tasks[i:])
                reason = reason or "node budget exhausted"
                break
            f, s, rest, why = _run_task((n, fixed, cfg.nondegenerate_only, task["floor"],
                                         task["path"], budget, deadline))
            found.extend(f)
            stats.merge(s)
            if rest is not None:
                pending.append(rest)
                pending.extend(tasks[i + 1:])
                reason = why
                break
    else:
        # each subtree gets the full node budget; the deadline is shared
        args = [(n, fixed, cfg.nondegenerate_only, t["floor"], t["path"], cfg.node_budget, deadline)
                for t in tasks]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for f, s, rest, why in pool.map(_run_task, args):
                found.extend(f)
                stats.merge(s)
                if rest is not None:
                    pending.append(rest)
                    reason = reason or why
    if pending:
        partial = SearchResult(_finish(n, found, False, SearchStats()), stats)
        raise SearchBudgetExhausted(f"search stopped early: {reason}", partial, state())
    return SearchResult(_finish(n, found, cfg.up_to_iso, stats), stats)


def find_containing(cfg: SearchConfig, fragment: Fragment | None) -> SearchResult:
    """All gyrogroups of order ``cfg.order`` that agree with the filled cells of ``fragment``."""
    n = cfg.order
    fixed = _fragment_cells(n, fragment)
    stats = SearchStats()
    if _column_zero_clash(fixed):
        return SearchResult([], stats)
    tasks = [{"floor": len(p), "path": p} for p in _split(n, fixed)]
    return _execute(cfg, fixed, fragment, [], tasks, stats)


def enumerate_gyrogroups(cfg: SearchConfig) -> SearchResult:
    """Every gyrogroup of the configured order, sorted by Cayley table.

    With ``up_to_iso`` only the lexicographically least table of each
    isomorphism class is kept.
    """
    return find_containing(cfg, None)


def resume(state: SearchState, *, node_budget: int | None = None, time_budget: float | None = None,
           jobs: int = 1) -> SearchResult:
    cfg = SearchConfig(state.order, state.up_to_iso, state.nondegenerate_only,
                       node_budget, time_budget, jobs)
    fixed = _fragment_cells(state.order, state.fragment)
    stats = SearchStats(**state.stats) if state.stats else SearchStats()
    found = [tuple(tuple(r) for r in t) for t in state.found]
    if node_budget is not None:
        cfg = SearchConfig(cfg.order, cfg.up_to_iso, cfg.nondegenerate_only,
                           stats.nodes + node_budget, time_budget, jobs)
    return _execute(cfg, fixed, state.fragment, found, list(state.pending), stats)
