"""Command-line entry point: ``hspeed <command> ...``.

Exit codes: 0 success, 1 an extraction or check came back negative,
2 usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import extraction as ex
from . import families, speeds
from .families import Family, parse_class_spec
from .graph import Bipartition, GraphError, parse_graph, to_graph6
from .parameters import parameter_report

PROCEDURES = ("complex", "bipartite-ramsey", "bipartite-matching", "matching", "skew",
              "nd-bipartite", "nd-general", "vc")


class UsageError(Exception):
    pass


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=False))


def _read_graph_args(items: Sequence[str]) -> list[str]:
    if not items:
        return [ln.strip() for ln in sys.stdin if ln.strip()]
    out = []
    for item in items:
        if item.startswith("@"):
            try:
                with open(item[1:], encoding="utf-8") as fh:
                    out.extend(ln.strip() for ln in fh if ln.strip())
            except OSError as exc:
                raise UsageError(f"cannot read {item[1:]}: {exc.strerror}") from exc
        else:
            out.append(item)
    return out


def cmd_params(args) -> int:
    for text in _read_graph_args(args.graphs):
        g = parse_graph(text)
        rep = parameter_report(g)
        if args.json:
            _emit({"graph": to_graph6(g), **json.loads(rep.to_json())})
        else:
            print(f"graph {to_graph6(g)} (n={g.n}, m={g.edge_count()})")
            for name, value in json.loads(rep.to_json()).items():
                print(f"  {name:<22}{'-' if value is None else value}")
    return 0


def cmd_generate(args) -> int:
    f = families.FamilyId.parse(args.family)
    if args.co:
        f = f.complemented()
    g = families.generate(f, args.n)
    if args.json:
        _emit({"family": f.token, "n": args.n, "vertices": g.n, "graph6": to_graph6(g)})
    else:
        print(to_graph6(g))
    return 0


def _need(value: Optional[int], flag: str, proc: str) -> int:
    if value is None:
        raise UsageError(f"procedure {proc} needs --{flag}")
    return value


def _bipartition(text: str) -> Bipartition:
    g = parse_graph(text)
    return Bipartition.of(g)


def cmd_extract(args) -> int:
    proc = args.procedure
    if proc not in PROCEDURES:
        raise UsageError(f"unknown procedure {proc!r}; choose from {', '.join(PROCEDURES)}")
    if proc == "complex":
        res = ex.extract_complex(parse_graph(args.graph), _need(args.n, "n", proc))
    elif proc == "bipartite-ramsey":
        res = ex.bipartite_ramsey_witness(_bipartition(args.graph), _need(args.s, "s", proc))
    elif proc == "bipartite-matching":
        if args.s is None and args.t is None:
            raise UsageError("procedure bipartite-matching needs --s or --t")
        res = ex.extract_from_bipartite_matching(_bipartition(args.graph), args.s, args.t)
    elif proc == "matching":
        if args.s is None and args.t is None and args.p is None:
            raise UsageError("procedure matching needs at least one of --s, --t, --p")
        res = ex.extract_from_matching(parse_graph(args.graph), args.s, args.t, args.p)
    elif proc == "skew":
        res = ex.find_skew_matching(_bipartition(args.graph), _need(args.m, "m", proc))
    elif proc == "nd-bipartite":
        res = ex.extract_nd_bipartite(_bipartition(args.graph), _need(args.p, "p", proc))
    elif proc == "nd-general":
        res = ex.extract_nd_general(parse_graph(args.graph), _need(args.p, "p", proc))
    else:
        res = ex.extract_vc(parse_graph(args.graph), _need(args.n, "n", proc))
    if args.json:
        _emit(res.to_json())
    elif not res.ok:
        print(f"failure at {res.stage}: {res.reason}")
    elif isinstance(res, ex.SkewMatching):
        kind = "complemented skew matching" if res.complemented else "skew matching"
        print(f"{kind} of size {len(res.pairs)}: " + " ".join(f"{x}-{y}" for x, y in res.pairs))
    else:
        print(f"{res.kind} size {res.size}: " + " ".join(str(v) for v in res.vertices))
    return 0 if res.ok else 1


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError as exc:
        raise UsageError(f"bad vertex count {text!r}; use N or A..B") from exc


def cmd_count(args) -> int:
    spec = parse_class_spec(args.spec)
    ns = _parse_range(args.n)
    cache = False if args.no_cache else args.cache
    rows = []
    for n in ns:
        fv = None
        if isinstance(spec, Family) and spec.family.name in speeds.FORMULA_FAMILIES and n >= 1:
            fv = speeds.formula_count(spec.family, n)
        if args.formula:
            if fv is None:
                raise UsageError(f"no closed form for {spec.description()}")
            count = None
        else:
            count = speeds.count_labelled(spec, n, cache)
        rows.append((n, count, fv))
    if args.csv:
        print("n,count,formula,formula_exact")
        for n, count, fv in rows:
            print(f"{n},{'' if count is None else count},{'' if fv is None else fv.value},"
                  f"{'' if fv is None else str(fv.exact).lower()}")
        return 0
    for n, count, fv in rows:
        if args.json:
            _emit({"class": spec.description(), "n": n,
                   "count": None if count is None else str(count),
                   "formula": None if fv is None else fv.to_json()})
            continue
        prefix = f"n={n}: " if len(rows) > 1 else ""
        if count is None:
            print(f"{prefix}{fv.value}" + ("" if fv.exact else f" ({fv.note})"))
        elif fv is None:
            print(f"{prefix}{count}")
        else:
            label = "formula" if fv.exact else fv.note
            print(f"{prefix}{count} ({label} {fv.value})")
    return 0


def _fmt_entropy(e: Optional[float]) -> str:
    return "undefined" if e is None else f"{e:.6g}"


def cmd_classify(args) -> int:
    spec = parse_class_spec(args.spec)
    v = speeds.classify_layer(spec)
    if args.json:
        _emit({"class": spec.description(), **v.to_json()})
        return 0
    line = v.layer
    if v.layer == "positive-entropy":
        line += f", k={'unbounded' if v.index is None else v.index}, entropy {_fmt_entropy(v.entropy)}"
    if v.evidence_only:
        line += " (evidence only)"
    print(line)
    contained = v.contained
    print("contains: " + (", ".join(contained) if contained else "none of the minimal classes"))
    return 0


def cmd_index(args) -> int:
    spec = parse_class_spec(args.spec)
    if not isinstance(spec, families.Forbidden):
        raise UsageError("index needs a forbidden:<g6>,... class spec")
    k = speeds.index_of(spec)
    e = speeds.entropy_from_index(k)
    if args.json:
        _emit({"class": spec.description(), "index": k, "entropy": e})
    else:
        print(f"k={k} entropy {_fmt_entropy(e)}")
    return 0


def cmd_universality(args) -> int:
    rep = families.check_universality(args.family, args.n)
    if args.json:
        _emit(rep.to_json())
    elif rep.passed:
        print(f"pass: {rep.members_checked} graphs ({rep.universe}, {rep.n} vertices) "
              f"embed in {rep.family}_{rep.n} ({rep.host_vertices} vertices)")
    else:
        print(f"fail: {rep.counterexample} does not embed in {rep.family}_{rep.n}")
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hspeed", description="Hereditary graph class speeds and witnesses.")
    p.add_argument("--json", action="store_true", help="one JSON object per line")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    sp = add("params", cmd_params, "parameter report for graphs (graph6, 'n; u-v ...' or @file; stdin if none)")
    sp.add_argument("graphs", nargs="*")

    sp = add("generate", cmd_generate, "graph6 of a named family member")
    sp.add_argument("family")
    sp.add_argument("n", type=int)
    sp.add_argument("--co", action="store_true", help="complement")

    sp = add("extract", cmd_extract, "run an extraction procedure")
    sp.add_argument("procedure", help=", ".join(PROCEDURES))
    sp.add_argument("graph")
    for flag in ("s", "t", "p", "n", "m"):
        sp.add_argument(f"--{flag}", type=int)

    sp = add("count", cmd_count, "labelled count of a class on n vertices (N or A..B)")
    sp.add_argument("spec")
    sp.add_argument("n")
    sp.add_argument("--formula", action="store_true", help="closed form only")
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("--cache", help="JSON-lines count cache (default: $HSPEED_CACHE)")
    sp.add_argument("--no-cache", action="store_true")

    sp = add("classify", cmd_classify, "layer of a class")
    sp.add_argument("spec")

    sp = add("index", cmd_index, "index and entropy of a finitely forbidden class")
    sp.add_argument("spec")

    sp = add("universality", cmd_universality, "check a family's universal graph")
    sp.add_argument("family")
    sp.add_argument("n", type=int)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
