"""Command-line interface.

Exit codes: 0 success / property holds, 1 property fails, 2 input error,
3 resource or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, iso, structure
from .axioms import check_gyration_table, verify
from .core import FiniteGyrogroup, Subset
from .doubling import DoubledGyrogroup, double, double_iterated
from .errors import GyroError, InputError, ResourceError
from .search import (SearchBudgetExhausted, SearchConfig, SearchState, enumerate_gyrogroups,
                     resume)
from .tablefile import parse, render, render_many

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def load(source: str) -> FiniteGyrogroup:
    """``@K1`` names a catalog entry, ``-`` reads stdin, anything else is a path."""
    if source.startswith("@"):
        return catalog.gyrogroup(source[1:])
    if source == "-":
        return parse(sys.stdin.read())
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    return parse(text)


def _subset_arg(g: FiniteGyrogroup, text: str) -> Subset:
    try:
        members = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad subset {text!r}: expected comma-separated integers") from exc
    if not members:
        raise InputError("empty subset")
    return Subset.of(g, members)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_verify(args) -> int:
    g = load(args.table)
    report = verify(g)
    payload = report.to_dict()
    payload["name"] = g.name
    payload["order"] = g.order
    lines = [f"{g.name or args.table}: order {g.order}"]
    for c in report.checks:
        status = "ok" if c.passed else "FAIL"
        extra = f" witness={c.witness}" if c.witness is not None else ""
        lines.append(f"  {c.name:<24} {status}{extra} {c.detail}".rstrip())
    if g.declared_gyr is not None and report.is_gyrogroup:
        decl = check_gyration_table(g)
        payload["declared_gyr_matches"] = decl.holds
        payload["declared_gyr_mismatch"] = list(decl.witness) if decl.witness else None
        lines.append(f"  declared gyr table       {'ok' if decl else 'MISMATCH at ' + str(decl.witness)}")
    lines.append(f"gyrogroup={report.is_gyrogroup} degenerate={report.is_degenerate} "
                 f"gyrocommutative={report.is_gyrocommutative}")
    _emit(args, payload, lines)
    return EXIT_OK if report.is_gyrogroup else EXIT_FALSE


def cmd_double(args) -> int:
    g = load(args.table)
    out = double_iterated(g, args.k)
    text = render(out)
    if args.json:
        print(json.dumps({"name": out.name, "order": out.order, "table": text}, sort_keys=True))
        if args.output not in (None, "-"):
            _write(args.output, text)
    else:
        _write(args.output, text)
    return EXIT_OK


def cmd_subs(args) -> int:
    g = load(args.table)
    subs = structure.all_subgyrogroups(g)
    d = None
    if args.classify_against:
        base = load(args.classify_against)
        d = double(base)
        if d.result.cayley != g.cayley:
            raise InputError("table is not the doubling of the given base")
        d = DoubledGyrogroup(base, g)
    rows = []
    for s in subs:
        entry = {"members": list(s), "size": len(s)}
        if d is not None:
            c = structure.classify_subgyrogroup(d, s)
            entry.update(shape=c.shape.name, a_plus=list(c.a_plus), l_minus=list(c.l_minus))
        rows.append(entry)
    lines = [f"{len(subs)} subgyrogroups"]
    for e in rows:
        lines.append(",".join(map(str, e["members"])) + (f"  {e['shape']}" if "shape" in e else ""))
    _emit(args, {"count": len(subs), "subgyrogroups": rows}, lines)
    return EXIT_OK


def cmd_normal(args) -> int:
    g = load(args.table)
    h = _subset_arg(g, args.subset)
    v = structure.is_normal(g, h)
    cond = structure.normality_sufficient_conditions(g, h)
    payload = {
        "subset": list(h), "normal": v.holds,
        "witness": list(v.witness) if v.witness else None,
        "sufficient_conditions": {"gyr_trivial_on_h": cond.gyr_trivial_on_h,
                                  "gyr_invariant": cond.gyr_invariant,
                                  "cosets_agree": cond.cosets_agree},
    }
    lines = [f"{h} normal: {v.holds}"]
    if v.witness:
        a, a2, b, b2 = v.witness
        lines.append(f"  witness a={a} a'={a2} b={b} b'={b2}: "
                     f"({a}⊕{b})⊕H = {structure.left_coset(g, g.op(a, b), h)} but "
                     f"({a2}⊕{b2})⊕H = {structure.left_coset(g, g.op(a2, b2), h)}")
    lines.append(f"  gyr[h,a]=id: {cond.gyr_trivial_on_h}  gyr[a,b](H)⊆H: {cond.gyr_invariant}"
                 f"  a⊕H=H⊕a: {cond.cosets_agree}")
    _emit(args, payload, lines)
    return EXIT_OK if v else EXIT_FALSE


def cmd_lsub(args) -> int:
    g = load(args.table)
    h = _subset_arg(g, args.subset)
    v = structure.is_L_subgyrogroup(g, h)
    _emit(args, {"subset": list(h), "l_subgyrogroup": v.holds,
                 "witness": list(v.witness) if v.witness else None},
          [f"{h} L-subgyrogroup: {v.holds}" + (f" (fails at a,h = {v.witness})" if v.witness else "")])
    return EXIT_OK if v else EXIT_FALSE


def cmd_derived(args) -> int:
    g = load(args.table)
    comms = structure.commutators(g)
    der = structure.derived_subgyrogroup(g)
    _emit(args, {"commutators": list(comms), "derived": list(der)},
          [f"commutators: {comms}", f"derived subgyrogroup: {der}"])
    return EXIT_OK


def cmd_conj(args) -> int:
    g = load(args.table)
    s = _subset_arg(g, args.subset) if args.subset else Subset.full(g)
    c = structure.conj_set(g, args.elem, s)
    _emit(args, {"elem": args.elem, "subset": list(s), "conjugate": list(c)},
          [f"conj_{args.elem}({s}) = {c}"])
    return EXIT_OK


def cmd_coadd(args) -> int:
    g = load(args.table)
    table = structure.coaddition_table(g)
    report = verify(table)
    _emit(args, {"table": table, "is_gyrogroup": report.is_gyrogroup},
          [" ".join(map(str, row)) for row in table] + [f"cogyrogroup verifies: {report.is_gyrogroup}"])
    return EXIT_OK if report.is_gyrogroup else EXIT_FALSE


def cmd_iso(args) -> int:
    g1, g2 = load(args.table1), load(args.table2)
    r = iso.isomorphism(g1, g2)
    _emit(args, {"isomorphic": r.isomorphic, "map": list(r.map.images) if r.map else None},
          [f"isomorphic: {r.isomorphic}"] + ([f"map: {list(r.map.images)}"] if r.map else []))
    return EXIT_OK if r else EXIT_FALSE


def cmd_aut(args) -> int:
    g = load(args.table)
    auts = iso.automorphisms(g)
    _emit(args, {"count": len(auts), "automorphisms": [list(p.images) for p in auts]},
          [f"{len(auts)} automorphisms"] + [p.cycles() for p in auts])
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        if args.resume:
            state = SearchState.from_json(Path(args.resume).read_text())
            result = resume(state, node_budget=args.budget, time_budget=args.time_budget, jobs=args.jobs)
        else:
            if args.order is None:
                raise InputError("search needs --order or --resume")
            cfg = SearchConfig(args.order, args.up_to_iso, args.nondegenerate, args.budget,
                               args.time_budget, args.jobs)
            result = enumerate_gyrogroups(cfg)
    except SearchBudgetExhausted as exc:
        state_path = args.state_out or "search-state.json"
        Path(state_path).write_text(exc.state.to_json())
        if args.output:
            _write(args.output, render_many(exc.partial.gyrogroups))
        print(json.dumps({"complete": False, "reason": str(exc), "state_file": state_path,
                          "found": len(exc.partial.gyrogroups), "stats": vars(exc.partial.stats)},
                         sort_keys=True), file=sys.stderr)
        return EXIT_RESOURCE
    gs = result.gyrogroups
    if args.output:
        _write(args.output, render_many(gs))
    reports = [verify(g) for g in gs]
    payload = {
        "complete": True, "count": len(gs),
        "nondegenerate": sum(not r.is_degenerate for r in reports),
        "stats": vars(result.stats),
        "gyrogroups": [{"name": g.name, "degenerate": r.is_degenerate,
                        "gyrocommutative": r.is_gyrocommutative} for g, r in zip(gs, reports)],
    }
    lines = [f"{len(gs)} gyrogroups ({payload['nondegenerate']} nondegenerate)",
             "stats: " + " ".join(f"{k}={v}" for k, v in vars(result.stats).items())]
    lines += [f"  {g.name}: {'group' if r.is_degenerate else 'nondegenerate'}" for g, r in zip(gs, reports)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.export:
        _write(args.output, render(catalog.gyrogroup(args.export)))
        return EXIT_OK
    entries = [catalog.get(n) for n in catalog.names()]
    _emit(args, {"entries": [{"name": e.name, "order": e.gyrogroup.order,
                              "special_perm": e.special_perm.cycles() if e.special_perm else None}
                             for e in entries]},
          [f"{e.name:<4} order {e.gyrogroup.order}" + (f"  {e.special_name} = {e.special_perm}"
                                                       if e.special_perm else "") for e in entries])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="gyrotable", description="Finite gyrogroup toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("verify", cmd_verify, "check the gyrogroup axioms")
    sp.add_argument("table")
    sp = add("double", cmd_double, "apply the doubling construction")
    sp.add_argument("table")
    sp.add_argument("-k", type=int, default=1, help="number of doublings")
    sp.add_argument("-o", "--output")
    sp = add("subs", cmd_subs, "list all subgyrogroups")
    sp.add_argument("table")
    sp.add_argument("--classify-against", metavar="BASE")
    for name, func, help_ in (("normal", cmd_normal, "test normality of a subgyrogroup"),
                              ("lsub", cmd_lsub, "test the L-subgyrogroup condition")):
        sp = add(name, func, help_)
        sp.add_argument("table")
        sp.add_argument("--subset", required=True)
    sp = add("derived", cmd_derived, "commutators and the derived subgyrogroup")
    sp.add_argument("table")
    sp = add("conj", cmd_conj, "conjugate a subset by an element")
    sp.add_argument("table")
    sp.add_argument("--elem", type=int, required=True)
    sp.add_argument("--subset")
    sp = add("coadd", cmd_coadd, "coaddition table and its verification")
    sp.add_argument("table")
    sp = add("iso", cmd_iso, "test isomorphism")
    sp.add_argument("table1")
    sp.add_argument("table2")
    sp = add("aut", cmd_aut, "list automorphisms")
    sp.add_argument("table")
    sp = add("search", cmd_search, "enumerate gyrogroups of a given order")
    sp.add_argument("--order", type=int)
    sp.add_argument("--up-to-iso", action="store_true")
    sp.add_argument("--nondegenerate", action="store_true")
    sp.add_argument("--budget", type=int, help="node budget")
    sp.add_argument("--time-budget", type=float, help="seconds")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--resume", metavar="STATE")
    sp.add_argument("--state-out", metavar="PATH")
    sp.add_argument("-o", "--output")
    sp = add("catalog", cmd_catalog, "list or export built-in tables")
    sp.add_argument("--export", metavar="NAME")
    sp.add_argument("-o", "--output")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, GyroError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
