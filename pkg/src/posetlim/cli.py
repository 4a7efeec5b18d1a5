"""Command-line interface.

Commands: validate, colim, lim, classify, spectral, gallery, generate,
oracle.  Exit codes: 0 success, 1 bad input or data error, 2 violation
of a theorem-backed oracle or convergence check (an implementation
bug, never a data problem).  With --json the report document goes to
stdout and errors go to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import intlinalg as la
from .abgroup import AbHom, Subgroup, compose, free_group, hom_is_mono
from .classify import classify_diagram, is_projective, is_pseudo_injective
from .derived import derived_functor, is_acyclic
from .diagram import coker_at, transpose_diagram, validate_functor
from .errors import (
    ConvergenceViolation,
    OracleViolation,
    PosetlimError,
)
from .jsonio import (
    FORMAT_VERSION,
    TOOL_VERSION,
    digest,
    group_to_json,
    parse_diagram,
    serialize_diagram,
)
from .poset import longest_chain_length, validate_graded
from .randgen import DIAGRAM_MODES, GenConfig, gen_diagram, gen_poset
from .spectral import (
    TABLE_VARIANTS,
    build_filtered,
    convergence_check,
    oracle_page_one,
    oracle_page_recurrence,
    page,
    variant_by_name,
)


def _read_document(path: str):
    if path == "-":
        return sys.stdin.read()
    with open(path, "rb") as fh:
        return fh.read()


def _base_report(command: str, doc=None) -> dict:
    rep = {"format_version": FORMAT_VERSION, "tool_version": TOOL_VERSION,
           "command": command, "input_digest": None}
    if doc is not None:
        rep["input_digest"] = digest(doc)
        if isinstance(doc, dict) and "name" in doc:
            rep["input_name"] = doc["name"]
    return rep


def _load(args):
    raw = _read_document(args.file)
    doc = json.loads(raw) if not isinstance(raw, dict) else raw
    P, F = parse_diagram(doc)
    return doc, P, F


def _cmd_validate(args):
    doc, P, F = _load(args)
    rep = _base_report("validate", doc)
    rep["ok"] = True
    text = (f"valid: {len(P.objects)} objects, {len(P.covers)} covers, "
            f"direction {P.direction}")
    return rep, text


def _derived_table(F, direction, k):
    return [derived_functor(F, direction, i) for i in range(k + 1)]


def _cmd_derived(args, direction):
    doc, P, F = _load(args)
    k = args.max_degree
    if k is None:
        k = longest_chain_length(P)
    table = _derived_table(F, direction, k)
    rep = _base_report(direction, doc)
    rep["derived"] = {direction: [group_to_json(g) for g in table]}
    text = "\n".join(f"{direction}_{i} = {g.describe()}"
                     for i, g in enumerate(table))
    return rep, text


def _describe_info(info) -> str:
    parts = ["Z"] * info.free_rank + [f"Z/{d}" for d in info.invariant_factors]
    return " + ".join(parts) if parts else "0"


def _acyclic_json(a):
    out = {"acyclic": bool(a)}
    if not a:
        out["degree"] = a.degree
        out["group"] = group_to_json(a.group)
    return out


def _acyclic_text(a) -> str:
    if a:
        return "True"
    return f"False  (nonzero {a.group.describe()} in degree {a.degree})"


def _witness_json(w):
    if w is None:
        return None
    return {"at": w.i0, "arrow_degree": w.d,
            "components": [{"object": ident, "element": list(vec)}
                           for ident, vec in w.components],
            "outside": list(w.outside)}


def _classification_json(report):
    return {
        "pseudo_projective": {"ok": report.pseudo_projective.ok,
                              "witness": _witness_json(report.pseudo_projective.witness)},
        "pseudo_injective": {"ok": report.pseudo_injective.ok,
                             "witness": _witness_json(report.pseudo_injective.witness)},
        "projective": {"ok": report.projective.ok, "reason": report.projective.reason},
        "injective": {"ok": report.injective.ok, "reason": report.injective.reason},
        "colim_acyclic": _acyclic_json(report.colim_acyclic),
        "lim_acyclic": _acyclic_json(report.lim_acyclic),
        "cokernels": {i: group_to_json(g) for i, g in report.cokernels.items()},
        "kernels": {i: group_to_json(g) for i, g in report.kernels.items()},
        "consistency": report.consistency,
    }


def _cmd_classify(args):
    doc, P, F = _load(args)
    report = classify_diagram(F)
    rep = _base_report("classify", doc)
    rep["classification"] = _classification_json(report)
    lines = [
        f"pseudo-projective: {report.pseudo_projective.ok}",
        f"pseudo-injective:  {report.pseudo_injective.ok}",
        f"projective:        {report.projective.ok}"
        + (f"  ({report.projective.reason})" if report.projective.reason else ""),
        f"injective:         {report.injective.ok}"
        + (f"  ({report.injective.reason})" if report.injective.reason else ""),
        f"colim-acyclic:     {_acyclic_text(report.colim_acyclic)}",
        f"lim-acyclic:       {_acyclic_text(report.lim_acyclic)}",
    ]
    for i in sorted(report.cokernels):
        lines.append(f"coker at {i}: {_describe_info(report.cokernels[i])}")
    for i in sorted(report.kernels):
        lines.append(f"ker at {i}:   {_describe_info(report.kernels[i])}")
    return rep, "\n".join(lines)


def _page_json(pg):
    return {"r": pg.r, "type": pg.type, "bidegree": list(pg.bidegree),
            "entries": [{"p": p, "q": q, "group": group_to_json(g)}
                        for (p, q), g in sorted(pg.entries.items())]}


def _page_grid(pg) -> str:
    head = f"page {pg.r}  ({pg.type}, d_{pg.r} bidegree {pg.bidegree})"
    if not pg.entries:
        return head + "\n  (no nonzero entries)"
    ps = sorted({p for p, _ in pg.entries})
    qs = sorted({q for _, q in pg.entries}, reverse=True)
    cells = {(p, q): g.describe() for (p, q), g in pg.entries.items()}
    widths = {p: max([len(str(p))] + [len(cells.get((p, q), ".")) for q in qs])
              for p in ps}
    qw = max(len(str(q)) for q in qs)
    lines = [head]
    header = " " * (qw + 2) + "  ".join(str(p).rjust(widths[p]) for p in ps)
    lines.append(header + "   (p)")
    for q in qs:
        row = "  ".join(cells.get((p, q), ".").rjust(widths[p]) for p in ps)
        lines.append(f"{str(q).rjust(qw)}  {row}")
    lines.append("(q)")
    return "\n".join(lines)


def _parse_variant(spec_str: str):
    if spec_str.isdigit():
        k = int(spec_str)
        if not 1 <= k <= 8:
            raise PosetlimError(f"variant number {k} outside 1..8")
        return TABLE_VARIANTS[k - 1]
    return variant_by_name(spec_str)


def _parse_pages(spec_str: str):
    lo, sep, hi = spec_str.partition("..")
    try:
        if sep:
            return int(lo), int(hi)
        return int(lo), int(lo)
    except ValueError:
        raise PosetlimError(f"bad page range {spec_str!r}; use R or R0..R1")


def _cmd_spectral(args):
    doc, P, F = _load(args)
    variant = _parse_variant(args.variant)
    X = build_filtered(P, F, variant)
    if args.pages is None:
        r0, r1 = 0, X.span + 2
    else:
        r0, r1 = _parse_pages(args.pages)
    pages = [page(X, r) for r in range(r0, r1 + 1)]
    rep = _base_report("spectral", doc)
    rep["spectral"] = {"variant": variant.name,
                       "pages": [_page_json(pg) for pg in pages]}
    text = f"variant {variant.name}\n" + "\n\n".join(_page_grid(pg) for pg in pages)
    return rep, text


DATA_FILES = (
    "intro_pushout",
    "zero_one_pushout",
    "times_n_chain",
    "red_chain",
    "representable_a_pushout",
    "representable_b_pushout",
    "constant_z5_chain",
    "inverse_telescope_z5",
    "telescope_x2",
)


def load_bundled(name: str):
    """Parse one of the shipped example documents."""
    blob = resources.files("posetlim").joinpath(f"data/{name}.json").read_text()
    doc = json.loads(blob)
    P, F = parse_diagram(doc)
    return doc, P, F


def pushout_projectivity_criterion(F) -> bool:
    """Independent test for the pushout shape: both legs mono, the
    source value free, both leg cokernels free."""
    f = F.cover_maps[("a", "b")]
    g = F.cover_maps[("a", "c")]
    return (F.groups["a"].is_free
            and coker_at(F, "b")[0].is_free
            and coker_at(F, "c")[0].is_free
            and hom_is_mono(f) and hom_is_mono(g))


def _expect(name, facts, cond, label):
    if not cond:
        raise OracleViolation(f"gallery {name}: {label} (facts: {facts})")


def _gallery_checks():
    def intro(P, F):
        c0 = derived_functor(F, "colim", 0)
        c1 = derived_functor(F, "colim", 1)
        rep = classify_diagram(F)
        facts = {"colim_0": c0.describe(), "colim_1": c1.describe(),
                 "pseudo_projective": rep.pseudo_projective.ok,
                 "projective": rep.projective.ok,
                 "coker_b": _describe_info(rep.cokernels["b"])}
        _expect("intro_pushout", facts,
                c0.free_rank == 1 and c0.invariant_factors == (2,),
                "colim_0 must be Z + Z/2")
        _expect("intro_pushout", facts, c1.is_trivial, "colim_1 must vanish")
        _expect("intro_pushout", facts,
                rep.pseudo_projective.ok and not rep.projective.ok,
                "must be pseudo-projective and not projective")
        _expect("intro_pushout", facts,
                rep.cokernels["b"].invariant_factors == (2,),
                "cokernel at b must be Z/2")
        _expect("intro_pushout", facts,
                is_projective(F).ok == pushout_projectivity_criterion(F),
                "projectivity criterion disagrees")
        return facts

    def zero_one(P, F):
        rep = classify_diagram(F)
        facts = {"pseudo_projective": rep.pseudo_projective.ok,
                 "witness_at": rep.pseudo_projective.witness.i0
                 if rep.pseudo_projective.witness else None,
                 "colim_acyclic": bool(rep.colim_acyclic)}
        _expect("zero_one_pushout", facts, not rep.pseudo_projective.ok,
                "must fail pseudo-projectivity")
        _expect("zero_one_pushout", facts,
                rep.pseudo_projective.witness.i0 == "c"
                and rep.pseudo_projective.witness.components == (("a", (1,)),),
                "witness must be 1 from a at c")
        _expect("zero_one_pushout", facts, rep.colim_acyclic,
                "must still be colim-acyclic")
        _expect("zero_one_pushout", facts,
                is_projective(F).ok == pushout_projectivity_criterion(F),
                "projectivity criterion disagrees")
        return facts

    def times_n(P, F):
        rep = classify_diagram(F)
        facts = {"projective": rep.projective.ok,
                 "coker_b": _describe_info(rep.cokernels["b"]),
                 "pseudo_projective": rep.pseudo_projective.ok}
        _expect("times_n_chain", facts, not rep.projective.ok,
                "multiplication by n is not projective")
        _expect("times_n_chain", facts,
                rep.cokernels["b"].invariant_factors == (3,),
                "cokernel must be Z/3")
        _expect("times_n_chain", facts,
                rep.pseudo_projective.ok and rep.colim_acyclic,
                "must be pseudo-projective and acyclic")
        return facts

    def red(P, F):
        rep = classify_diagram(F)
        w = rep.pseudo_projective.witness
        facts = {"pseudo_projective": rep.pseudo_projective.ok,
                 "witness": _witness_json(w), "colim_acyclic": bool(rep.colim_acyclic)}
        _expect("red_chain", facts, not rep.pseudo_projective.ok,
                "projection to Z/n is not pseudo-projective")
        _expect("red_chain", facts,
                w.i0 == "b" and w.components == (("a", (6,)),),
                "witness must be n from a at b")
        _expect("red_chain", facts, rep.colim_acyclic,
                "must still be colim-acyclic")
        return facts

    def representable(name):
        def check(P, F):
            rep = classify_diagram(F)
            c0 = derived_functor(F, "colim", 0)
            facts = {"projective": rep.projective.ok,
                     "colim_acyclic": bool(rep.colim_acyclic), "colim_0": c0.describe()}
            _expect(name, facts, rep.projective.ok, "representables are projective")
            _expect(name, facts, rep.colim_acyclic, "projectives are acyclic")
            _expect(name, facts,
                    c0.free_rank == 1 and not c0.invariant_factors,
                    "colim of a representable is Z")
            _expect(name, facts,
                    is_projective(F).ok == pushout_projectivity_criterion(F),
                    "projectivity criterion disagrees")
            return facts
        return check

    def constant_chain(P, F):
        rep = classify_diagram(F)
        facts = {"pseudo_projective": rep.pseudo_projective.ok,
                 "pseudo_injective": rep.pseudo_injective.ok,
                 "projective": rep.projective.ok, "injective": rep.injective.ok,
                 "colim_acyclic": bool(rep.colim_acyclic), "lim_acyclic": bool(rep.lim_acyclic)}
        _expect("constant_z5_chain", facts,
                rep.pseudo_projective.ok and rep.pseudo_injective.ok,
                "constant Z/5 is pseudo-projective and pseudo-injective")
        _expect("constant_z5_chain", facts,
                rep.colim_acyclic and rep.lim_acyclic,
                "constant Z/5 on a chain is acyclic both ways")
        _expect("constant_z5_chain", facts,
                not rep.projective.ok and not rep.injective.ok,
                "Z/5 is neither projective nor injective in Ab")
        _expect("constant_z5_chain", facts,
                telescope_projectivity_criterion(P, F) == rep.projective.ok,
                "telescope projectivity criterion disagrees")
        return facts

    def inverse_telescope(P, F):
        rep = classify_diagram(F)
        c0 = derived_functor(F, "colim", 0)
        facts = {"pseudo_projective": rep.pseudo_projective.ok,
                 "projective": rep.projective.ok,
                 "colim_acyclic": bool(rep.colim_acyclic), "colim_0": c0.describe()}
        _expect("inverse_telescope_z5", facts,
                rep.pseudo_projective.ok and rep.colim_acyclic,
                "identity arrows keep constant Z/5 pseudo-projective and acyclic")
        _expect("inverse_telescope_z5", facts, not rep.projective.ok,
                "the bottom cokernel Z/5 is not free")
        _expect("inverse_telescope_z5", facts,
                c0.invariant_factors == (5,) and c0.free_rank == 0,
                "colim_0 must be Z/5")
        return facts

    def telescope(P, F):
        rep = classify_diagram(F)
        monos = all(hom_is_mono(F.cover_maps[c]) for c in P.covers)
        facts = {"projective": rep.projective.ok, "all_monos": monos,
                 "colim_acyclic": bool(rep.colim_acyclic),
                 "criterion": telescope_projectivity_criterion(P, F)}
        _expect("telescope_x2", facts, not rep.projective.ok,
                "cokernels Z/2 are not free")
        _expect("telescope_x2", facts, monos and rep.colim_acyclic,
                "monomorphisms suffice for colim-acyclicity")
        _expect("telescope_x2", facts,
                telescope_projectivity_criterion(P, F) == rep.projective.ok,
                "telescope projectivity criterion disagrees")
        return facts

    return {
        "intro_pushout": intro,
        "zero_one_pushout": zero_one,
        "times_n_chain": times_n,
        "red_chain": red,
        "representable_a_pushout": representable("representable_a_pushout"),
        "representable_b_pushout": representable("representable_b_pushout"),
        "constant_z5_chain": constant_chain,
        "inverse_telescope_z5": inverse_telescope,
        "telescope_x2": telescope,
    }


def telescope_projectivity_criterion(P, F) -> bool:
    """Independent test for chain-shaped posets: bottom value free,
    every cokernel free, and the kernel of every composite of
    consecutive arrows contained in the image of the arrow just below
    its source (trivial at the bottom, which makes the full composites
    monomorphisms)."""
    order = sorted(P.ids, key=lambda i: P.degree[i])
    if not F.groups[order[0]].is_free:
        return False
    steps = [F.cover_maps[(order[k], order[k + 1])]
             for k in range(len(order) - 1)]
    for i in range(1, len(order)):
        if not coker_at(F, order[i])[0].is_free:
            return False
        comp = steps[i - 1]
        for start in range(i - 1, -1, -1):
            # comp: F(order[start]) -> F(order[i])
            K = _kernel_subgroup(comp)
            if start == 0:
                if not K.is_trivial():
                    return False
            else:
                below = steps[start - 1]
                ok, _ = Subgroup(below.target, below.matrix).contains_subgroup(K)
                if not ok:
                    return False
                comp = compose(comp, below)
    return True


def _kernel_subgroup(h):
    K = la.preimage_lattice(h.matrix, h.target.relations)
    return Subgroup(h.source, K)


def run_gallery():
    """Run every bundled example with its expected verdicts."""
    checks = _gallery_checks()
    results = []
    failures = []
    for name in DATA_FILES:
        doc, P, F = load_bundled(name)
        try:
            facts = checks[name](P, F)
            results.append({"name": name, "ok": True, **facts})
        except OracleViolation as e:
            failures.append(str(e))
            results.append({"name": name, "ok": False})
    # the multiplication family beyond the shipped representative
    for n in (2, 5, 12):
        P = validate_graded([("a", 0), ("b", 1)], [("a", "b")])
        Z = free_group(1)
        F = validate_functor(P, {"a": Z, "b": Z},
                             {("a", "b"): AbHom(Z, Z, [[n]])})
        rep = classify_diagram(F)
        ok = (not rep.projective.ok and rep.pseudo_projective.ok
              and rep.cokernels["b"].invariant_factors == (n,))
        results.append({"name": f"times_{n}_inline", "ok": ok})
        if not ok:
            failures.append(f"gallery times_{n}_inline failed")
    if failures:
        raise OracleViolation("; ".join(failures))
    return results


def _cmd_gallery(args):
    results = run_gallery()
    rep = _base_report("gallery")
    rep["gallery"] = results
    text = "\n".join(f"ok {r['name']}" for r in results)
    return rep, text


def _default_seed() -> int:
    raw = os.environ.get("POSETLIM_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise PosetlimError(f"POSETLIM_SEED must be an integer, got {raw!r}")


def _cmd_generate(args):
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = GenConfig(seed=seed, max_objects=args.max_objects,
                    max_degree_span=args.max_degree_span, family=args.family)
    P = gen_poset(cfg)
    F = gen_diagram(cfg, P, args.mode)
    name = args.name or f"{args.mode}:{args.family}:seed={seed}"
    doc = serialize_diagram(F, name=name)
    rep = _base_report("generate", doc)
    rep["seed"] = seed
    rep["document"] = doc
    return rep, json.dumps(doc, indent=2, sort_keys=True)


def _cmd_oracle(args):
    seeds = args.seeds
    counts = {"seeds": seeds, "theorem_b": 0, "theorem_b_dual": 0,
              "convergence": 0, "page_recurrence": 0}
    for s in range(seeds):
        family = "forest" if s % 2 == 0 else "layered"
        cfg = GenConfig(seed=s, family=family, max_objects=6)
        P = gen_poset(cfg)
        F = gen_diagram(cfg, P, "pseudo_projective_by_construction")
        if not is_acyclic(F, "colim").acyclic:
            raise OracleViolation(
                f"seed {s}: pseudo-projective instance with nonvanishing colim_i")
        counts["theorem_b"] += 1
        G = transpose_diagram(F)
        if is_pseudo_injective(G).ok and not is_acyclic(G, "lim").acyclic:
            raise OracleViolation(
                f"seed {s}: pseudo-injective transport with nonvanishing lim_i")
        counts["theorem_b_dual"] += 1
        H = gen_diagram(cfg, P, "sums_of_standard")
        for variant in TABLE_VARIANTS:
            if variant.direction != P.direction:
                continue
            convergence_check(P, H, variant)
            counts["convergence"] += 1
        X = build_filtered(P, H, TABLE_VARIANTS[2])
        oracle_page_one(X)
        oracle_page_recurrence(X)
        counts["page_recurrence"] += 1
    rep = _base_report("oracle")
    rep["oracle"] = counts
    rep["seed"] = None
    text = "\n".join(f"{k}: {v}" for k, v in counts.items())
    return rep, text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits 2 by default; 2 is reserved for oracle failures
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser():
    parser = _Parser(prog="posetlim",
                     description="Exact derived limits and colimits of "
                                 "diagrams of abelian groups on graded posets.")
    parser.add_argument("--json", action="store_true",
                        help="emit the report document as JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, with_file=True):
        sp = sub.add_parser(name, help=help_text)
        if with_file:
            sp.add_argument("file", help="DiagramDocument path, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    add("validate", _cmd_validate, "parse and validate a document")
    for d in ("colim", "lim"):
        sp = add(d, (lambda dd: lambda a: _cmd_derived(a, dd))(d),
                 f"derived functors of {d}")
        sp.add_argument("--max-degree", type=int, default=None)
    add("classify", _cmd_classify,
        "projectivity, injectivity and the pseudo conditions")
    sp = add("spectral", _cmd_spectral, "spectral sequence pages")
    sp.add_argument("--variant", required=True,
                    help="1..8 or a name like chain:sigma_n:increasing")
    sp.add_argument("--pages", default=None, help="R or R0..R1")
    add("gallery", _cmd_gallery,
        "run the bundled examples against their expected verdicts",
        with_file=False)
    sp = add("generate", _cmd_generate, "emit a random DiagramDocument",
             with_file=False)
    sp.add_argument("--seed", type=int, default=None,
                    help="default: POSETLIM_SEED or 0")
    sp.add_argument("--family", choices=["forest", "layered"], default="forest")
    sp.add_argument("--mode", choices=list(DIAGRAM_MODES), default="sums_of_standard")
    sp.add_argument("--max-objects", type=int, default=6)
    sp.add_argument("--max-degree-span", type=int, default=3)
    sp.add_argument("--name", default=None)
    sp = add("oracle", _cmd_oracle,
             "randomized theorem and convergence checks", with_file=False)
    sp.add_argument("--seeds", type=int, default=25)
    return parser


def _emit_error(args, exc, code):
    if getattr(args, "json", False):
        payload = {"format_version": FORMAT_VERSION, "tool_version": TOOL_VERSION,
                   "command": getattr(args, "command", None) or "?",
                   "input_digest": None,
                   "error": f"{type(exc).__name__}: {exc}"}
        print(json.dumps(payload, indent=2, sort_keys=True), file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        rep, text = args.func(args)
    except (OracleViolation, ConvergenceViolation) as e:
        return _emit_error(args, e, 2)
    except (PosetlimError, FileNotFoundError, json.JSONDecodeError) as e:
        return _emit_error(args, e, 1)
    if args.json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
