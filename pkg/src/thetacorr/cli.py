"""Command line interface: ``thetacorr <verb> [flags]``.

Data goes to standard output, diagnostics to standard error. Exit codes:
0 success, 2 bad flags, 3 scan limit exceeded, 4 oracle mismatch, 5 guard
exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Iterable

from .partitions import Partition, bipartitions_of
from .symbols import Family, GroupKind, Oeven, Sp, Symbol, enumerate_symbols, families, upsilon
from .theta import (
    GL,
    U,
    DualPairSpec,
    ScanLimitExceeded,
    TowerSpec,
    UnipLabel,
    conservation_check,
    first_occurrence,
    omega_route_spo,
    omega_route_unitary,
    overline_relation,
    relation_props,
    theta_relation,
    underline_relation,
)
from . import series as ser
from .weyl_b import OMEGA_CASES, OMEGA_READINGS, dimension, omega

EXIT_OK, EXIT_FLAGS, EXIT_SCAN, EXIT_MISMATCH, EXIT_GUARD = 0, 2, 3, 4, 5


class FlagError(ValueError):
    pass


# output

def _cell(v) -> str:
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    return "" if v is None else str(v)


def render(doc: dict, fmt: str) -> str:
    rows = doc.get("rows", [])
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    cols: list[str] = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    lines = [f"# {k}: {_cell(v)}" for k, v in sorted(doc.items()) if k != "rows"]
    table = [cols] + [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(t[i]) for t in table) for i in range(len(cols))]
    for t in table:
        lines.append("  ".join(x.ljust(w) for x, w in zip(t, widths)).rstrip())
    return "\n".join(lines) + "\n"


# flag parsing helpers

def parse_sign(text: str | None) -> int | None:
    if text is None:
        return None
    if text in ("+", "+1", "1", "p", "plus"):
        return 1
    if text in ("-", "-1", "m", "minus"):
        return -1
    raise FlagError(f"sign must be + or -, got {text!r}")


def group_kind(group: str, n: int, eps: int | None) -> GroupKind:
    g = group.lower()
    if n < 0:
        raise FlagError("--n must be non-negative")
    if g == "sp":
        return Sp(n)
    if g == "o":
        if eps is None:
            raise FlagError("--group o needs --eps")
        return Oeven(n, eps)
    if g == "gl":
        return GL(n)
    if g == "u":
        return U(n)
    raise FlagError(f"unknown group {group!r}; use sp, o, gl or u")


# verbs

def run_symbols(args) -> dict:
    kind = group_kind(args.group, args.n, parse_sign(args.eps))
    labels = enumerate_symbols(kind)
    rows = []
    if kind.family in (Family.GL, Family.U):
        for lam in labels:
            rows.append({"label": str(lam), "size": lam.size, "degree": ser.unipotent_degree(kind, lam, args.q)})
        return {"verb": "symbols", "group": kind.label, "count": len(rows), "rows": rows}
    fam_of = {}
    fams = families(kind)
    for k, (core, members) in enumerate(fams):
        for m in members:
            fam_of[m] = (k, str(core), len(members))
    for s in labels:
        if args.defect is not None and s.defect != args.defect:
            continue
        k, core, size = fam_of.get(s, (None, None, None))
        rows.append({
            "symbol": str(s), "rank": s.rank, "defect": s.defect, "upsilon": str(upsilon(s)),
            "family": k, "family_core": core, "family_size": size,
            "degree": ser.unipotent_degree(kind, s, args.q),
        })
    return {"verb": "symbols", "group": kind.label, "count": len(rows), "families": len(fams),
            "family_sizes": sorted(len(m) for _, m in fams), "q": args.q, "rows": rows}


def _pair(args) -> DualPairSpec:
    eps = parse_sign(args.eps)
    kind = args.pair.lower()
    if kind == "sp-o":
        if eps is None:
            raise FlagError("sp-o needs --eps")
        return DualPairSpec.sp_o(args.n, args.nprime, eps)
    if kind == "o-sp":
        if eps is None:
            raise FlagError("o-sp needs --eps")
        return DualPairSpec.sp_o(args.nprime, args.n, eps).swapped()
    if kind == "u-u":
        return DualPairSpec.u_u(args.n, args.nprime)
    if kind == "gl-gl":
        return DualPairSpec.gl_gl(args.n, args.nprime)
    raise FlagError(f"unknown pair {args.pair!r}; use sp-o, o-sp, u-u or gl-gl")


def _left_label(args, pair: DualPairSpec):
    if args.lam is not None:
        if pair.left.family not in (Family.GL, Family.U):
            raise FlagError("--lambda labels GL or U representations")
        return Partition.parse(args.lam)
    if args.symbol is not None:
        if pair.left.family in (Family.GL, Family.U):
            raise FlagError("--symbol labels Sp or O representations")
        return Symbol.parse(args.symbol)
    return None


def _tower_for(kind: GroupKind) -> TowerSpec:
    if kind.family is Family.SP:
        return TowerSpec("Sp")
    if kind.family is Family.O_EVEN:
        return TowerSpec("O+even" if kind.eps > 0 else "O-even")
    if kind.family is Family.U:
        return TowerSpec("U+" if kind.n % 2 == 0 else "U-")
    raise FlagError(f"no Witt tower for {kind.label}")


def run_theta(args) -> dict:
    if args.lam is not None and args.n is None:
        args.n = Partition.parse(args.lam).size
    if args.symbol is not None and args.n is None:
        args.n = Symbol.parse(args.symbol).rank
    if args.n is None or args.nprime is None:
        raise FlagError("theta needs --n (or --lambda/--symbol) and --nprime")
    pair = _pair(args)
    x = _left_label(args, pair)
    if x is not None and x not in enumerate_symbols(pair.left):
        raise FlagError(f"{x} is not a unipotent label of {pair.left.label}")
    filt = args.filter
    if filt == "theta":
        rel = theta_relation(pair)
    elif filt == "underline":
        rel = underline_relation(pair)
    elif filt == "overline":
        rel = overline_relation(pair)
    elif filt == "omega":
        if pair.left.family is Family.SP and pair.right.family is Family.O_EVEN:
            rel = omega_route_spo(pair.left.n, pair.right.n, pair.right.eps, reading=args.reading)
        elif pair.left.family is Family.U:
            rel = omega_route_unitary(pair.left.n, pair.right.n, reading=args.reading)
        else:
            raise FlagError("the omega route covers sp-o and u-u")
    else:
        raise FlagError(f"unknown filter {filt!r}")
    rows, triples = [], []
    extra_cache: dict = {}
    for a, b, m in rel.triples:
        if x is not None and a != x:
            continue
        extra = _extras(pair, a, args, extra_cache) if args.first_occurrence or args.conservation else {}
        rows.append({"left": str(a), "right": str(b), "m": m, **extra})
        triples.append({"l": a.to_json(), "r": b.to_json(), "m": m, **extra})
    return {"verb": "theta", "pair": pair.to_json(), "filter": filt, "count": len(rows),
            "triples": triples, "rows": rows}


def _extras(pair: DualPairSpec, a, args, cache: dict) -> dict:
    if a in cache:
        return cache[a]
    out = {}
    ux = UnipLabel(pair.left, a)
    if args.first_occurrence:
        fo = first_occurrence(ux, _tower_for(pair.right), args.scan_limit)
        if not fo.resolved:
            raise ScanLimitExceeded(f"no first occurrence of {a} within {fo.scan_limit}")
        out["first_occurrence"] = fo.index
        out["first_occurrence_dim"] = fo.dim
    if args.conservation:
        if pair.left.family is not Family.SP:
            raise FlagError("--conservation applies to symplectic labels")
        c = conservation_check(ux, args.scan_limit)
        out.update({"dim_plus": c.dim_plus, "dim_minus": c.dim_minus, "c_inferred": c.c_inferred, "conserved": c.holds})
    cache[a] = out
    return out


def run_weyl(args) -> dict:
    if args.omega is not None:
        if args.nbar is None or args.nbar_prime is None:
            raise FlagError("--omega needs --nbar and --nbar-prime")
        expansion = omega(args.omega, args.nbar, args.nbar_prime, reading=args.reading)
        rows = [{"left": str(a), "right": str(b), "m": m}
                for (a, b), m in sorted(expansion.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))]
        return {"verb": "weyl", "case": args.omega, "reading": args.reading, "count": len(rows), "rows": rows}
    if args.n is None:
        raise FlagError("weyl needs --n or --omega")
    rows = [{"label": str(b), "dim": dimension(b)} for b in bipartitions_of(args.n)]
    return {"verb": "weyl", "n": args.n, "count": len(rows), "order_check": sum(r["dim"] ** 2 for r in rows), "rows": rows}


def _orbit(text: str) -> ser.Orbit:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise FlagError(f"orbit must be size:mult[:GL|U], got {text!r}")
    try:
        size, mult = int(parts[0]), int(parts[1])
    except ValueError:
        raise FlagError(f"orbit must be size:mult[:GL|U], got {text!r}") from None
    return ser.Orbit(size, mult, parts[2].upper() if len(parts) == 3 else "GL")


def run_series(args) -> dict:
    kind = group_kind(args.group, args.n, parse_sign(args.eps))
    if args.c is not None:
        sup = ser.cuspidal_support(kind, args.c, args.flavor)
        doc = {"verb": "series", "group": kind.label, "support": sup.to_json(), "rows": []}
        if args.to is not None:
            target = group_kind(args.to, args.nprime if args.nprime is not None else -1, parse_sign(args.to_eps))
            pair = DualPairSpec(kind, target, "II" if kind.family is Family.GL else "I")
            moved = ser.hc_transport(sup, pair)
            doc["transported"] = moved.to_json()
        return doc
    spec = ser.SemisimpleSpectrum(args.nu1, args.nu_minus1, tuple(_orbit(o) for o in args.orbit))
    shapes = ser.endoscopic_decompose(kind, spec)
    rows = [{"shape": s.to_json(), "order": s.order(args.q)} for s in shapes]
    return {"verb": "series", "group": kind.label, "spectrum": spec.to_json(), "q": args.q, "rows": rows}


def run_oracle(args) -> tuple[dict, int]:
    from .weil_oracle import multiplicity_matrix

    rep = multiplicity_matrix(args.pair, args.q, args.a, model=args.model)
    doc = rep.to_json()
    doc["verb"] = "oracle"
    doc["rows"] = [{"row": lab, **{c: m for c, m in zip(rep.col_labels, row)}} for lab, row in zip(rep.row_labels, rep.matrix)]
    code = EXIT_OK
    if args.compare:
        cmp = rep.compare()
        doc["comparison"] = cmp
        if cmp.get("modelled") and not cmp["match"]:
            want = {tuple(t) for t in cmp["predicted"]}
            got = {tuple(t) for t in cmp["observed"]}
            doc["mismatches"] = {"missing": sorted(want - got), "unexpected": sorted(got - want)}
            code = EXIT_MISMATCH
    return doc, code


def run_audit(args) -> tuple[dict, int]:
    rows = []
    ok = True
    for eps in (1, -1):
        for n in range(args.max_n + 1):
            for nprime in range(args.max_n + 1):
                pair = DualPairSpec.sp_o(n, nprime, eps)
                theta = theta_relation(pair)
                back = theta_relation(pair.swapped())
                props_u = relation_props(underline_relation(pair))
                props_o = relation_props(overline_relation(pair))
                sym = theta.swapped().counter() == back.counter()
                good = sym and props_u.one_to_one and props_u.subrelation_of_theta and \
                    props_o.one_to_one and props_o.subrelation_of_theta and not props_u.violations
                ok &= good
                rows.append({"pair": f"Sp{2 * n}xO{'+' if eps > 0 else '-'}{2 * nprime}", "pairs": len(theta),
                             "symmetric": sym, "underline_ok": props_u.one_to_one and props_u.subrelation_of_theta,
                             "overline_ok": props_o.one_to_one and props_o.subrelation_of_theta,
                             "semi_persistence_violations": len(props_u.violations), "ok": good})
    for n in range(args.max_n + 1):
        for x in enumerate_symbols(Sp(n)):
            c = conservation_check(UnipLabel(Sp(n), x), args.scan_limit)
            ok &= c.holds
            if not c.holds:
                rows.append({"pair": f"conservation {x}", "ok": False})
    return {"verb": "audit", "max_n": args.max_n, "ok": ok, "rows": rows}, EXIT_OK if ok else 1


# parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise FlagError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thetacorr", description="Unipotent theta correspondence for finite classical groups.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "csv", "pretty"), default="json")

    s = sub.add_parser("symbols", help="list unipotent labels of a group")
    s.add_argument("--group", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eps")
    s.add_argument("--defect", type=int)
    s.add_argument("--q", type=int, default=3, help="field size for the degree column")
    fmt(s)

    t = sub.add_parser("theta", help="correspondence tables")
    t.add_argument("--pair", required=True)
    t.add_argument("--n", type=int)
    t.add_argument("--nprime", type=int)
    t.add_argument("--eps")
    t.add_argument("--lambda", dest="lam")
    t.add_argument("--symbol")
    t.add_argument("--filter", choices=("theta", "underline", "overline", "omega"), default="theta")
    t.add_argument("--reading", choices=OMEGA_READINGS, default="corrected")
    t.add_argument("--first-occurrence", action="store_true")
    t.add_argument("--conservation", action="store_true")
    t.add_argument("--scan-limit", type=int)
    fmt(t)

    w = sub.add_parser("weyl", help="characters of W_n and Ω expansions")
    w.add_argument("--n", type=int)
    w.add_argument("--omega", choices=OMEGA_CASES)
    w.add_argument("--nbar", type=int)
    w.add_argument("--nbar-prime", type=int)
    w.add_argument("--reading", choices=OMEGA_READINGS, default="uncorrected")
    fmt(w)

    r = sub.add_parser("series", help="endoscopic shapes and Harish-Chandra supports")
    r.add_argument("--group", required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--eps")
    r.add_argument("--nu1", type=int, default=0)
    r.add_argument("--nu-minus1", type=int, default=0)
    r.add_argument("--orbit", action="append", default=[], help="size:mult[:GL|U], repeatable")
    r.add_argument("--q", type=int, default=3)
    r.add_argument("--c", type=int, help="cuspidal parameter of a Harish-Chandra series")
    r.add_argument("--flavor", choices=("+", "-"), default="+")
    r.add_argument("--to", help="transport the support to this group (sp, o, u)")
    r.add_argument("--nprime", type=int)
    r.add_argument("--to-eps")
    fmt(r)

    o = sub.add_parser("oracle", help="explicit Weil representation of a tiny pair")
    o.add_argument("--pair", required=True)
    o.add_argument("--q", type=int, default=3)
    o.add_argument("--a", type=int, default=1)
    o.add_argument("--model", choices=("psi", "flat"), default="psi")
    o.add_argument("--compare", action="store_true")
    fmt(o)

    a = sub.add_parser("audit", help="relation properties and conservation")
    a.add_argument("--max-n", type=int, default=3)
    a.add_argument("--scan-limit", type=int)
    fmt(a)
    return p


def main(argv: Iterable[str] | None = None) -> int:
    from .weil_oracle import GroupTooLarge, OracleGuard

    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
    except FlagError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FLAGS
    code = EXIT_OK
    try:
        if args.verb == "symbols":
            doc = run_symbols(args)
        elif args.verb == "theta":
            doc = run_theta(args)
        elif args.verb == "weyl":
            doc = run_weyl(args)
        elif args.verb == "series":
            doc = run_series(args)
        elif args.verb == "oracle":
            doc, code = run_oracle(args)
        else:
            doc, code = run_audit(args)
    except (FlagError, ValueError) as e:
        if isinstance(e, (OracleGuard, GroupTooLarge)):
            print(f"guard: {e}", file=sys.stderr)
            return EXIT_GUARD
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FLAGS
    except ScanLimitExceeded as e:
        print(f"scan limit: {e}", file=sys.stderr)
        return EXIT_SCAN
    except (OracleGuard, GroupTooLarge) as e:
        print(f"guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    sys.stdout.write(render(doc, args.format))
    if code == EXIT_MISMATCH:
        print("oracle: unipotent block differs from the prediction", file=sys.stderr)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
