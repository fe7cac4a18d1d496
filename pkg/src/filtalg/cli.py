"""The ``fa`` command line tool.

Every command prints a human section and a machine section of
``key: value`` lines.  Exit status: 0 when the command succeeds or the
property holds, 1 when a verification fails or is inconclusive, 2 on
usage and parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import commalg, constructors, dimension, filtration, localization, twofilt
from .dsl import ParseError, parse_file, parse_poly, parse_presentation, print_presentation
from .ncalg import (
    NEG_INF,
    AlgebraError,
    CapExceeded,
    MonomialOrder,
    NCPoly,
    Presentation,
    complete_to_cap,
    format_poly,
    overlap_confluence_report,
)


class UsageError(Exception):
    pass


class Report:
    def __init__(self, command: str):
        self.command = command
        self.human: list = []
        self.machine: list = []
        self.status = 0

    def say(self, line: str = ""):
        self.human.append(line)

    def fact(self, key: str, value):
        self.machine.append(f"{key}: {fmt_value(value)}")

    def fail(self):
        self.status = max(self.status, 1)

    def render(self, fmt: str) -> str:
        parts = []
        if fmt in ("human", "both"):
            parts.append("\n".join(self.human))
        if fmt in ("machine", "both"):
            parts.append("\n".join(self.machine))
        return "\n\n".join(p for p in parts if p) + "\n"


def fmt_value(v) -> str:
    if v == NEG_INF:
        return "-inf"
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(fmt_value(x) for x in v) + ")"
    return str(v)


def default_cap() -> int:
    env = os.environ.get("FA_CAP")
    if env is None:
        return 8
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"FA_CAP must be an integer, got {env!r}")


# -- helpers ----------------------------------------------------------

def load(path: str) -> Presentation:
    try:
        src = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    return parse_presentation(src)


def order_for(pres: Presentation, args) -> MonomialOrder:
    return pres.order(use_weights=(args.order == "weights"))


def weighted_only(rep: Report, args):
    if args.order != "weights":
        rep.say("note: this command needs the weighted order; --order ignored")


def module_from_args(pres: Presentation, rels) -> dimension.ModulePresentation:
    polys = []
    for text in rels or ():
        for piece in text.split(";"):
            if piece.strip():
                polys.append(parse_poly(piece, pres.gens))
    return dimension.ModulePresentation.cyclic(pres, polys)


def dims_line(dims) -> str:
    return " ".join(str(d) for d in dims)


# -- commands ---------------------------------------------------------

def emit(rep: Report, pres: Presentation, output: str | None):
    """Show a derived presentation, or write it to ``output``."""
    text = print_presentation(pres)
    if output:
        try:
            Path(output).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc.strerror}")
        rep.say(f"wrote {output}")
    else:
        rep.say(text.rstrip("\n"))
    rep.fact("algebra", pres.name)


def cmd_new(args, rep: Report):
    kind = args.kind
    if kind == "weyl":
        if args.n < 1:
            raise UsageError("weyl needs n >= 1")
        pres, f, g = constructors.weyl(args.n)
        if args.filtration == "bernstein":
            pres = g.weighted()
    elif kind in ("usl2", "sl2"):
        pres, _ = constructors.u_lie(constructors.sl2())
    elif kind == "poly":
        names = tuple(v.strip() for v in (args.vars or "x,y").split(",") if v.strip())
        pres = constructors.polynomial_ring(names)
    elif kind == "skew":
        pres, _ = localization.skew_example(args.cap)
    elif kind == "trivial":
        pres = constructors.trivial_algebra()
    else:
        raise UsageError(f"unknown kind {kind!r}")
    if args.name:
        pres = pres.renamed(args.name)
    emit(rep, pres, args.output)
    rep.fact("generators", pres.ngens)
    rep.fact("relations", len(pres.relations))


def cmd_gr(args, rep: Report):
    weighted_only(rep, args)
    pres = load(args.file)
    f = filtration.Filtration.of(pres)
    rs = f.complete(args.cap)
    rep.fact("cap", args.cap)
    rep.fact("status", rs.status)
    if not rs.complete:
        rep.say(f"completion exceeded cap {args.cap}")
        rep.fact("verdict", "cap-exceeded")
        rep.fail()
        return
    gr = filtration.gr_presentation(pres, f, rs)
    dims = filtration.gr_dims(pres, f, args.cap, rs)
    emit(rep, gr, args.output)
    rep.say(f"dims of gr up to {args.cap}: {dims_line(dims)}")
    rep.fact("dims", dims.dims)


def cmd_rees(args, rep: Report):
    weighted_only(rep, args)
    pres = load(args.file)
    r = filtration.rees_presentation(pres, t_name=args.t)
    emit(rep, r, args.output)
    box = min(args.cap, 6)
    big = filtration.lift_rees_filtration_dims(pres, cap=args.cap, box=box)
    rep.say(f"bigraded dims (rows i, columns t-degree j) in the {box + 1}x{box + 1} box:")
    for row in big.rows():
        rep.say("  " + " ".join(str(x) for x in row))
    rep.fact("t", r.gens[-1])
    rep.fact("bigraded", tuple(tuple(row) for row in big.rows()))


def cmd_sp(args, rep: Report):
    pres = load(args.file)
    out = filtration.specialize(pres, args.lam, args.t)
    emit(rep, out, args.output)
    rep.fact("lambda", args.lam)


def cmd_twofilt(args, rep: Report):
    weighted_only(rep, args)
    pres = load(args.file)
    try:
        res = twofilt.run_twofilt(pres, cap=args.cap)
    except (twofilt.SplitNotFound, twofilt.FormExtractionFailed) as exc:
        rep.say(f"two-filtrations construction not available: {exc}")
        rep.fact("reason", str(exc))
        rep.fact("verdict", "fail")
        rep.fail()
        return
    sp = res.split
    e = res.exponents
    rep.say(f"split: a = {', '.join(sp.a) or '-'}; b = {', '.join(sp.b) or '-'}; "
            f"c = {', '.join(sp.c)}")
    rep.say(f"exponents: e0 = {e.e0}, e1 = {e.e1}, e2 = {e.e2}")
    gdegs = res.G.as_dict()
    rep.say("G degrees: " + ", ".join(f"{g} -> {d}" for g, d in gdegs.items()))
    rep.say(f"gr^G_0 dimension: {res.report.gr0_dim}")
    for pc in res.report.pairs:
        mark = "ok" if pc.ok else "FAILS"
        rep.say(f"  [{pc.left}, {pc.right}]: deg^G {fmt_value(pc.degree)} <= {pc.bound} {mark}")
    verdict = "pass" if res.passed else "fail"
    rep.say(f"verdict: {verdict}")
    rep.fact("cap", args.cap)
    rep.fact("exponents", e.as_tuple())
    rep.fact("G", " ".join(f"{g}:{d}" for g, d in gdegs.items()))
    rep.fact("connected", res.report.connected)
    rep.fact("commutative", res.report.commutative)
    rep.fact("verdict", verdict)
    if not res.passed:
        rep.fail()


def cmd_tensor(args, rep: Report):
    p1, p2 = load(args.file), load(args.file2)
    pres, f = constructors.tensor(p1, p2, suffix=args.suffix)
    emit(rep, pres, args.output)
    rep.fact("degrees", f.degrees)


def cmd_op(args, rep: Report):
    pres = constructors.opposite(load(args.file))
    emit(rep, pres, args.output)


def cmd_env(args, rep: Report):
    pres, f = constructors.enveloping(load(args.file))
    emit(rep, pres, args.output)
    rep.fact("degrees", f.degrees)


def cmd_gkdim(args, rep: Report):
    weighted_only(rep, args)
    pres = load(args.file)
    m = module_from_args(pres, args.module)
    dims = dimension.module_filtration_dims(
        m.with_algebra_degrees(dimension.standard_degrees(pres)), args.cap)
    d = commalg.growth_degree(dims.dims)
    rep.say(f"module dims up to {args.cap}: {dims_line(dims)}")
    rep.say(f"GK dimension: {fmt_value(d)}")
    rep.fact("cap", args.cap)
    rep.fact("dims", dims.dims)
    rep.fact("dimension", d)


def commutative_setup(pres: Presentation, cap: int):
    """Ambient polynomial ring and ideal for a commutative presentation."""
    rs = complete_to_cap(pres, cap=cap)
    for i in range(pres.ngens):
        for j in range(i + 1, pres.ngens):
            if not rs.commutator(NCPoly.gen(i), NCPoly.gen(j)).is_zero():
                raise UsageError(f"{pres.name} is not commutative: "
                                 f"{pres.gens[i]} and {pres.gens[j]} do not commute")
    ring = commalg.PolyRing(pres.gens)
    ideal = []
    for r in pres.all_relations():
        c = commalg.from_ncpoly(r, ring)
        if not c.is_zero():
            ideal.append(c)
    return ring, tuple(ideal)


def cmd_cdim(args, rep: Report):
    pres = load(args.file)
    m = module_from_args(pres, args.module)
    rep.fact("cap", args.cap)
    if args.filtered:
        weighted_only(rep, args)
        res = dimension.cdim_filtered(m, args.cap)
        rep.say(f"hypothesis: {res.hypothesis}")
        for line in res.evidence:
            rep.say(f"  {line}")
        rep.say(f"Cdim = GKdim = {fmt_value(res.value)}")
        rep.fact("method", "gkdim")
        rep.fact("dimension", res.value)
        return
    ring, ideal = commutative_setup(pres, args.cap)
    spec = commalg.CanonicalComplexSpec(ring, ideal)
    cm = dimension.to_commutative(m, ring)
    d = commalg.cdim_commutative(spec, cm)
    full = commalg.CModule(ring, cm.rank, cm.relations + tuple(
        {(0, e): c for e, c in f.terms.items()} for f in ideal))
    exts = commalg.ext_modules(full, ring.n)
    nonzero = tuple(r.q for r in exts if r.nonzero)
    rep.say(f"ambient ring: Q[{', '.join(ring.names)}], n = {ring.n}")
    rep.say(f"Ext^j(M, ring) nonzero for j in {fmt_value(nonzero)}")
    rep.say(f"Cdim = {fmt_value(d)}")
    rep.fact("method", "ext")
    rep.fact("ext_nonzero", nonzero)
    rep.fact("dimension", d)


def cmd_hilbert(args, rep: Report):
    pres = load(args.file)
    ring, ideal = commutative_setup(pres, args.cap)
    m = module_from_args(pres, args.module)
    cm = dimension.to_commutative(m, ring)
    full = commalg.CModule(ring, cm.rank, cm.relations + tuple(
        {(0, e): c for e, c in f.terms.items()} for f in ideal))
    up_to = args.up_to if args.up_to is not None else args.cap
    dims = commalg.hilbert_function(full, up_to)
    try:
        g = commalg.growth_degree(dims.dims)
    except commalg.InsufficientData as exc:
        g = "insufficient"
        rep.say(f"growth degree: {exc}")
    rep.say(f"Hilbert function up to {up_to}: {dims_line(dims)}")
    rep.say(f"growth degree: {fmt_value(g)}")
    rep.fact("dims", dims.dims)
    rep.fact("growth", g)


def cmd_ore(args, rep: Report):
    pres = load(args.file)
    s = parse_poly(args.s, pres.gens)
    a = parse_poly(args.a, pres.gens)
    orig = pres
    if args.right:
        pres = constructors.opposite(pres)
        s, a = s.reverse(), a.reverse()
    rs = complete_to_cap(pres, order_for(pres, args), args.cap)
    q = localization.OreQuery(pres, s, a, args.k_max, args.cap)
    v = localization.ore_witness_search(q, rs=rs,
                                        obstruction=localization.mu_obstruction_for)
    if args.right:
        rep.say(f"right Ore search for a * s^k = s * a', k <= {args.k_max}, cap {args.cap}")
        if isinstance(v, localization.Witness):
            # read a' back in the original algebra
            rs = complete_to_cap(orig, order_for(orig, args), args.cap)
            v = localization.Witness(rs.nf(v.a_prime.reverse()), v.k)
            pres = orig
    else:
        rep.say(f"left Ore search for s^k * a = a' * s, k <= {args.k_max}, cap {args.cap}")
    rep.say("(even localizability is tested through this search)")
    rep.fact("cap", args.cap)
    if isinstance(v, localization.Witness):
        ap = format_poly(v.a_prime, pres.gens, rs.order)
        rep.say(f"witness: k = {v.k}, a' = {ap}")
        rep.fact("verdict", "witness")
        rep.fact("witness", f"k={v.k}, a'={ap.replace(' ', '')}")
    elif isinstance(v, localization.ObstructionCertified):
        for line in v.details:
            rep.say(line)
        rep.fact("verdict", "obstruction")
        rep.fail()
    else:
        rep.say(f"inconclusive: {v.reason}")
        rep.fact("verdict", "inconclusive")
        rep.fail()


def cmd_diffcheck(args, rep: Report):
    weighted_only(rep, args)
    pres = load(args.file)
    cg = [c.strip() for c in args.C.split(",") if c.strip()]
    for c in cg:
        if c not in pres.gens:
            raise UsageError(f"{c!r} is not a generator of {pres.name}")
    r = localization.differential_filtration_check(pres, cg, cap=args.cap)
    for i, n, ok in r.degree_status():
        rep.say(f"degree {i}: {n} words, {'pass' if ok else 'FAIL'}")
    if r.failures:
        f0 = r.failures[0]
        rep.say(f"first failure: [{f0.c}, {f0.word}] has degree "
                f"{fmt_value(f0.commutator_degree)} >= {f0.degree}")
    verdict = "pass" if r.passed else "fail"
    rep.fact("cap", args.cap)
    rep.fact("verdict", verdict)
    if not r.passed:
        rep.fact("failure", f"{r.failures[0].c},{r.failures[0].word}")
        rep.fail()


def cmd_diagsupp(args, rep: Report):
    c = load(args.file)
    env, _ = constructors.enveloping(c)
    m = module_from_args(env, args.module)
    r = localization.diagonal_support_check(c, m, args.k_max, args.cap)
    vals = []
    for j, res in enumerate(r.results):
        if isinstance(res, localization.NotAnnihilated):
            rep.say(f"generator {j + 1}: not annihilated by I^k for k <= {res.k_max}")
            vals.append("none")
        else:
            rep.say(f"generator {j + 1}: I^{res} kills it")
            vals.append(res)
    verdict = "supported" if r.supported else "not-annihilated"
    rep.fact("cap", args.cap)
    rep.fact("k", tuple(vals))
    rep.fact("verdict", verdict)
    if not r.supported:
        rep.fail()


def run_checks(pres: Presentation, cap: int) -> list:
    """(name, verdict, detail) for the property suite on one presentation."""
    out = []
    text = print_presentation(pres)
    out.append(("round-trip", "pass" if parse_presentation(text) == pres else "fail", ""))
    f = filtration.Filtration.of(pres)
    rs = f.complete(cap)
    out.append(("completion", "pass" if rs.complete else "fail", rs.status))
    if not rs.complete:
        return out
    conf = overlap_confluence_report(rs)
    out.append(("confluence", "pass" if conf.confluent else "fail",
                f"{len(conf.pairs)} critical pairs"))
    dims = filtration.gr_dims(pres, f, cap, rs)
    gr = filtration.gr_presentation(pres, f, rs)
    try:
        gdims = filtration.gr_dims(gr, cap=cap)
        out.append(("gr-dims", "pass" if gdims == dims else "fail", dims_line(dims)))
    except CapExceeded as exc:
        out.append(("gr-dims", "fail", str(exc)))
    rees = filtration.rees_presentation(pres, f)
    try:
        d1 = filtration.gr_dims(filtration.specialize(rees, 1), cap=cap)
        d0 = filtration.gr_dims(filtration.specialize(rees, 0), cap=cap)
        ok = d1 == dims and d0 == dims
        out.append(("sp-identities", "pass" if ok else "fail", ""))
    except CapExceeded as exc:
        out.append(("sp-identities", "fail", str(exc)))
    try:
        odims = filtration.gr_dims(constructors.opposite(pres), cap=cap)
        out.append(("opposite-dims", "pass" if odims == dims else "fail", ""))
    except CapExceeded as exc:
        out.append(("opposite-dims", "fail", str(exc)))
    try:
        res = twofilt.run_twofilt(pres, cap=cap)
        out.append(("twofilt", "pass" if res.passed else "fail",
                    f"exponents {res.exponents.as_tuple()}"))
    except (twofilt.SplitNotFound, twofilt.FormExtractionFailed) as exc:
        out.append(("twofilt", "skipped", str(exc)))
    return out


def cmd_check(args, rep: Report):
    weighted_only(rep, args)
    pres = load(args.file)
    results = run_checks(pres, args.cap)
    for name, verdict, detail in results:
        rep.say(f"{name}: {verdict}" + (f" ({detail})" if detail else ""))
        rep.fact(f"check.{name}", verdict)
    ok = all(v != "fail" for _, v, _ in results)
    rep.fact("cap", args.cap)
    rep.fact("verdict", "pass" if ok else "fail")
    if not ok:
        rep.fail()


# -- argument parsing -------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None,
                        help="degree cap (default 8, or $FA_CAP)")
    common.add_argument("--order", choices=("weights", "lex-tiebreak"), default="weights")
    common.add_argument("--format", choices=("human", "machine", "both"), default="both")

    p = argparse.ArgumentParser(prog="fa", description="Filtered algebra computations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("new", parents=[common], help="write a presentation from a template")
    s.add_argument("kind", choices=("weyl", "usl2", "sl2", "poly", "skew", "trivial"))
    s.add_argument("n", type=int, nargs="?", default=1, help="rank for weyl")
    s.add_argument("--filtration", choices=("order", "bernstein"), default="order")
    s.add_argument("--vars")
    s.add_argument("--name")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_new)

    for name, func, helptext in (("gr", cmd_gr, "associated graded presentation"),
                                 ("twofilt", cmd_twofilt, "two-filtrations construction"),
                                 ("op", cmd_op, "opposite algebra"),
                                 ("env", cmd_env, "enveloping algebra"),
                                 ("check", cmd_check, "property suite")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        if name in ("gr", "op", "env"):
            s.add_argument("-o", "--output", help="write the presentation here")
        s.set_defaults(func=func)

    s = sub.add_parser("rees", parents=[common], help="Rees algebra")
    s.add_argument("file")
    s.add_argument("--t", default=None, help="name of the Rees variable")
    s.add_argument("-o", "--output", help="write the presentation here")
    s.set_defaults(func=cmd_rees)

    s = sub.add_parser("sp", parents=[common], help="specialize the Rees variable")
    s.add_argument("file")
    s.add_argument("--lambda", dest="lam", type=int, choices=(0, 1), required=True)
    s.add_argument("--t", default=None)
    s.add_argument("-o", "--output", help="write the presentation here")
    s.set_defaults(func=cmd_sp)

    s = sub.add_parser("tensor", parents=[common], help="tensor product")
    s.add_argument("file")
    s.add_argument("file2")
    s.add_argument("--suffix", default="'")
    s.add_argument("-o", "--output", help="write the presentation here")
    s.set_defaults(func=cmd_tensor)

    for name, func, helptext in (("gkdim", cmd_gkdim, "GK dimension of a cyclic module"),
                                 ("hilbert", cmd_hilbert, "Hilbert function (commutative)")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        s.add_argument("--module", action="append",
                       help="relation of the cyclic module (repeatable, or ';'-separated)")
        if name == "hilbert":
            s.add_argument("--up-to", type=int, default=None)
        s.set_defaults(func=func)

    s = sub.add_parser("cdim", parents=[common], help="canonical dimension")
    s.add_argument("file")
    s.add_argument("--module", action="append")
    s.add_argument("--filtered", action="store_true",
                   help="use Cdim = GKdim for differential algebras of finite type")
    s.set_defaults(func=cmd_cdim)

    s = sub.add_parser("ore", parents=[common], help="Ore witness search")
    s.add_argument("file")
    s.add_argument("--s", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--k-max", type=int, default=4)
    s.add_argument("--right", action="store_true")
    s.set_defaults(func=cmd_ore)

    s = sub.add_parser("diffcheck", parents=[common], help="differential filtration check")
    s.add_argument("file")
    s.add_argument("--C", required=True, help="comma-separated generators of C")
    s.set_defaults(func=cmd_diffcheck)

    s = sub.add_parser("diagsupp", parents=[common], help="diagonal support check")
    s.add_argument("file", help="the commutative algebra C")
    s.add_argument("--module", action="append",
                   help="relations over enveloping(C), second factor primed")
    s.add_argument("--k-max", type=int, default=6)
    s.set_defaults(func=cmd_diagsupp)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    fmt = args.format
    rep = Report(args.command)
    try:
        if args.cap is None:
            args.cap = default_cap()
        if args.cap < 0:
            raise UsageError("--cap must be nonnegative")
        args.func(args, rep)
    except (UsageError, ParseError) as exc:
        rep.say(f"error: {exc}")
        rep.fact("error", type(exc).__name__)
        rep.fact("message", str(exc))
        rep.fact("verdict", "usage-error")
        rep.status = 2
    except CapExceeded as exc:
        rep.say(f"cap exceeded: {exc}")
        rep.fact("reason", str(exc))
        rep.fact("verdict", "cap-exceeded")
        rep.status = 1
    except commalg.InsufficientData as exc:
        rep.say(f"insufficient data: {exc}")
        rep.fact("reason", str(exc))
        rep.fact("verdict", "insufficient-data")
        rep.status = 1
    except (AlgebraError, ValueError) as exc:
        rep.say(f"error: {exc}")
        rep.fact("error", type(exc).__name__)
        rep.fact("message", str(exc))
        rep.fact("verdict", "error")
        rep.status = 1
    except Exception as exc:  # never leak a traceback
        rep.say(f"internal error: {type(exc).__name__}: {exc}")
        rep.fact("error", "internal")
        rep.fact("verdict", "error")
        rep.status = 1
    sys.stdout.write(rep.render(fmt))
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
