"""Command-line front end.

Exit codes: 0 success or property holds, 1 bad input, 2 property violated,
3 internal error.  Output is deterministic: everything is listed in label
order and numbers go through one formatter.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import warnings
from pathlib import Path

import numpy as np

from . import betweenness as btw
from . import chains as ch
from . import core
from . import dress
from . import geometry as geo
from . import pretop as pt
from . import tightspan as ts
from ._numeric import DEFAULT_TOLERANCE, FLOAT, MODES, coerce, fmt
from .io import dump_json, json_label, label_str, load_space, space_to_csv, space_to_json
from .spaces import random_space

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_INTERNAL = 0, 1, 2, 3
TOLERANCE_ENV = "COSTSPACE_TOLERANCE"


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _default_tol() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"{TOLERANCE_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise InputError(f"{TOLERANCE_ENV} must be positive")
    return tol


def _space(args, path=None):
    return load_space(path or args.input, args.mode, args.tol)


def _label(space, token):
    """Map a command-line token to the matching label (labels may be ints)."""
    for x in space.labels:
        if label_str(x) == token:
            return x
    raise InputError(f"unknown label {token!r}")


def _labels(space, tokens):
    return [_label(space, t) for t in tokens]


def _json_arg(value):
    """Inline JSON or a path to a JSON file."""
    p = Path(value)
    text = p.read_text() if p.exists() else value
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse JSON argument: {exc}") from None


_lab = json_label


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, dump_json(obj))


def _emit_space(args, space):
    if args.format == "csv":
        _emit(args, space_to_csv(space))
    else:
        _emit_json(args, space_to_json(space))


def _tuple_label_map(space):
    return {label_str(x): x for x in space.labels}


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    space = _space(args)
    rep = core.validate_cost(space)
    lab = space.labels
    _emit_json(args, {
        "ok": rep.ok,
        "identity_violations": [{"from": _lab(lab[i]), "to": _lab(lab[j]), "value": fmt(v)}
                                for i, j, v in rep.identity_violations],
        "triangle_violations": [{"from": _lab(lab[i]), "via": _lab(lab[k]), "to": _lab(lab[j]), "slack": fmt(s)}
                                for i, k, j, s in rep.triangle_violations],
        "max_identity_defect": fmt(rep.max_identity_defect),
        "max_triangle_defect": fmt(rep.max_triangle_defect),
    })
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_betweenness(args) -> int:
    space = _space(args)
    rel = btw.derive_betweenness(space)
    triples = [[_lab(x) for x in t] for t in rel.sorted()]
    if not args.check_axioms:
        _emit_json(args, triples)
        return EXIT_OK
    rep = btw.check_axioms(rel)
    out = {"triples": triples, "axioms_ok": rep.ok}
    for name in ("distinctness", "antisymmetry", "outer_transitivity", "inner_transitivity"):
        out[name] = [[_lab(x) for x in t] for t in getattr(rep, name)]
    _emit_json(args, out)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_chains(args) -> int:
    space = _space(args)
    if args.action == "classify":
        chain = _labels(space, args.chain)
        if len(chain) < 2:
            raise InputError("a chain needs at least two points")
        rep = ch.chain_report(space, chain)
        rep["length"] = fmt(rep["length"])
        _emit_json(args, {"chain": [_lab(x) for x in chain], **rep})
        return EXIT_OK
    p, q = _label(space, args.source), _label(space, args.target)
    found = ch.enumerate_tachistic_chains(space, p, q, args.max_edges)
    _emit_json(args, [{"points": [_lab(x) for x in e.points], "maximal": e.maximal} for e in found])
    return EXIT_OK


def _word(value):
    return dress.word_from_json(_json_arg(value))


def cmd_dress(args) -> int:
    a = args.action
    if a == "psi":
        g = dress.psi(_word(args.word))
        _emit_json(args, {str(k): v for k, v in sorted(g.items(), key=lambda kv: dress._sort_key(kv[0]))})
    elif a == "preimage":
        vec = _json_arg(args.vector)
        if not isinstance(vec, dict):
            raise InputError("vector must be a JSON object label -> integer")
        _emit_json(args, dress.word_to_json(dress.psi_preimage(vec)))
    elif a == "rewrite":
        structure = dress.structure_from_json(_json_arg(args.structure))
        rng = random.Random(args.seed) if args.seed is not None else None
        _emit_json(args, dress.word_to_json(dress.rewrite_to_base(_word(args.word), structure, rng)))
    elif a == "costhom":
        space = _space(args)
        names = _tuple_label_map(space)
        w = _word(args.word)
        w = dress.GroupWord(tuple((names.get(str(s), s), names.get(str(t), t), e) for s, t, e in w))
        _emit_json(args, {"value": fmt(dress.cost_hom(w, space))})
    elif a == "equal":
        structure = dress.structure_from_json(_json_arg(args.structure))
        eq = dress.words_equal(_word(args.word1), _word(args.word2), structure)
        _emit_json(args, {"equal": eq})
        return EXIT_OK if eq else EXIT_VIOLATION
    return EXIT_OK


def _preclosure(args, path, radius):
    """A preclosure JSON (with ``step``) or a cost space thickened at ``radius``."""
    obj = _json_arg(path) if not str(path).lower().endswith(".csv") else None
    if isinstance(obj, dict) and "step" in obj:
        return pt.preclosure_from_json(obj)
    if radius is None:
        raise InputError("--radius is required when the input is a cost space")
    space = _space(args, path)
    return pt.preclosure_from_cost(space, coerce(radius, space.mode))


def _pre_json(pre):
    d = pt.preclosure_to_json(pre)
    d["labels"] = [_lab(x) for x in d["labels"]]
    return d


def cmd_pretop(args) -> int:
    a = args.action
    if a == "closure":
        if args.intersection:
            pre = pt.preclosure_intersection(_space(args))
        else:
            pre = _preclosure(args, args.input, args.radius)
        names = {label_str(x): x for x in pre.ground}
        try:
            subset = [names[t] for t in args.subset]
        except KeyError as exc:
            raise InputError(f"unknown label {exc.args[0]!r}") from None
        cl = pre.closure(subset)
        rep = pt.check_axioms(pre)
        _emit_json(args, {"closure": [_lab(x) for x in pre.ground if x in cl],
                          "topology": rep.topology})
    elif a == "continuity":
        q = _json_arg(args.query)
        try:
            preX, preZ = pt.preclosure_from_json(q["preX"]), pt.preclosure_from_json(q["preZ"])
            f = {x: q["map"][str(x)] for x in preX.ground}
        except KeyError as exc:
            raise InputError(f"continuity query lacks {exc.args[0]!r}") from None
        ok = pt.is_continuous(f, preX, preZ)
        _emit_json(args, {"continuous": ok})
        return EXIT_OK if ok else EXIT_VIOLATION
    elif a == "product":
        p1 = _preclosure(args, args.input, args.radius)
        p2 = _preclosure(args, args.input2, args.radius)
        prod = pt.product_preclosure(p1, p2, args.form)
        rep = pt.check_axioms(prod, samples=args.samples, rng=np.random.default_rng(0))
        out = {"form": args.form, "additive": rep.additive, "idempotent": rep.idempotent,
               "sampled": rep.sampled}
        if isinstance(prod, pt.AdditivePreclosure):
            out.update(_pre_json(prod))
        else:
            out["factors"] = [_pre_json(p1), _pre_json(p2)]
            out["additive_failure"] = ([_lab(x) for x in prod.ground if x in rep.failures["additive"]]
                                       if "additive" in rep.failures else None)
        _emit_json(args, out)
    elif a == "compare":
        p1 = _preclosure(args, args.input, args.radius)
        p2 = _preclosure(args, args.input2, args.radius2 if args.radius2 is not None else args.radius)
        _emit_json(args, {"relation": pt.compare(p1, p2)})
    return EXIT_OK


_CURV_FIELDS = ("x1", "x2", "x3", "r1", "r2", "r3", "rho", "witness", "method", "boundary_flag")


def _curv_row(res):
    x1, x2, x3 = res.triple
    return [label_str(x1), label_str(x2), label_str(x3), *(fmt(r) for r in res.radii), fmt(res.rho),
            label_str(res.witness) if res.witness is not None else "", res.method,
            "true" if res.boundary_flag else "false"]


def cmd_curvature(args) -> int:
    space = _space(args)
    if args.symmetrized:
        space = core.symmetrize(space)
    if args.triple:
        triple = _labels(space, args.triple)
        if len(set(triple)) < 3:
            raise InputError("triple needs three distinct labels")
        fn = geo.grid_oracle_curvature if args.oracle else geo.directed_curvature
        res = fn(space, *triple, grid_step=args.grid_step)
        rows = [res]
        if args.format == "json":
            _emit_json(args, dict(zip(_CURV_FIELDS, _curv_row(res))))
            return EXIT_OK
    else:
        rows = geo.all_triples_curvature(space, oracle=args.oracle, grid_step=args.grid_step)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_CURV_FIELDS)
    for res in rows:
        w.writerow(_curv_row(res))
    _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_median(args) -> int:
    space = _space(args)
    triple = _labels(space, args.triple)
    meds = geo.find_medians(space, *triple)
    _emit_json(args, {"triple": [_lab(x) for x in triple], "medians": [_lab(x) for x in meds]})
    return EXIT_OK


def cmd_deviation(args) -> int:
    space = _space(args)
    raw = _json_arg(args.pairs)
    pairs = []
    for item in raw:
        if len(item) != 4:
            raise InputError("each pair is [p, q, r, r_in]")
        p, q, r, r_in = item
        pairs.append((_label(space, str(p)), _label(space, str(q)),
                      coerce(r, space.mode), coerce(r_in, space.mode)))
    lam, t = geo.hyperconvexity_deviation(space, pairs)
    _emit_json(args, {"lambda": fmt(lam), "witness": _lab(t)})
    return EXIT_OK


def cmd_convexity(args) -> int:
    space = _space(args)
    rep = geo.convexity_checks(space, coerce(args.epsilon, space.mode))
    _emit_json(args, {
        "epsilon": fmt(rep.epsilon),
        "almost_chronodesic": rep.almost_chronodesic,
        "totally_convex": rep.totally_convex,
        "failures": [{"from": _lab(p), "to": _lab(r), "split": fmt(t)} for p, r, t in rep.failures],
    })
    return EXIT_OK if rep.almost_chronodesic else EXIT_VIOLATION


def _function(space, value):
    obj = _json_arg(value)
    if isinstance(obj, list):
        return obj
    names = _tuple_label_map(space)
    try:
        return {names[str(k)]: v for k, v in obj.items()}
    except KeyError as exc:
        raise InputError(f"unknown label {exc.args[0]!r}") from None


def _fn_json(space, values):
    return {label_str(x): fmt(v) for x, v in zip(space.labels, values)}


def _pair_json(space, pair):
    return {"f": _fn_json(space, pair.f), "g": _fn_json(space, pair.g)}


def cmd_tightspan(args) -> int:
    space = _space(args)
    a = args.action
    if a == "check":
        pair = ts.pair_from_json(space, _json_arg(args.pair))
        fn = ts.is_bitight_pair if args.bitight else ts.is_admissible_pair
        ok, defect, skipped = fn(space, pair.f, pair.g)
        _emit_json(args, {"admissible" if not args.bitight else "bitight": ok,
                          "defect": fmt(defect), "skipped": skipped})
        return EXIT_OK if ok else EXIT_VIOLATION
    if a == "tighten":
        h = _function(space, args.function)
        vals = ts.tighten_f(space, h) if args.side == "f" else ts.tighten_g(space, h)
        _emit_json(args, {args.side: _fn_json(space, vals)})
    elif a == "kuratowski":
        _emit_json(args, _pair_json(space, ts.kuratowski_pair(space, _label(space, args.point))))
    elif a == "iterate":
        trace = ts.iterate_tight_pairs(space, _function(space, args.g0), args.max_iter)
        _emit_json(args, [_pair_json(space, p) for p in trace])
    return EXIT_OK


def cmd_transform(args) -> int:
    space = _space(args)
    a = args.action
    if a == "symmetrize":
        out = core.symmetrize(space)
    elif a == "reverse":
        out = core.reverse(space)
    elif a == "closure":
        out = ch.path_cost_closure(space)
    else:
        other = _space(args, args.input2)
        out = core.product(space, other, coerce(args.p, FLOAT) if args.p != "inf" else float("inf"))
    _emit_space(args, out)
    return EXIT_OK


def cmd_sample(args) -> int:
    rng = np.random.default_rng(args.seed)
    space = random_space(args.n, rng, args.low, args.high, args.p_missing, args.mode or "rational")
    _emit_space(args, space)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default=None,
                        help="numeric mode (default: the input's own, else rational)")
    common.add_argument("--tol", type=float, default=None,
                        help=f"float-mode tolerance (default ${TOLERANCE_ENV} or {DEFAULT_TOLERANCE:g})")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-o", "--output", default=None, help="write here instead of stdout")

    parser = argparse.ArgumentParser(prog="costspace", description="Finite non-symmetric cost spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the cost axioms")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("betweenness", parents=[common], help="derived betweenness triples")
    p.add_argument("input")
    p.add_argument("--check-axioms", action="store_true")
    p.set_defaults(func=cmd_betweenness)

    p = sub.add_parser("chains", help="classify or enumerate chains")
    csub = p.add_subparsers(dest="action", required=True)
    q = csub.add_parser("classify", parents=[common])
    q.add_argument("input")
    q.add_argument("--chain", nargs="+", required=True)
    q = csub.add_parser("enumerate", parents=[common])
    q.add_argument("input")
    q.add_argument("--from", dest="source", required=True)
    q.add_argument("--to", dest="target", required=True)
    q.add_argument("--max-edges", type=int, default=4)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("dress", help="words over pair generators")
    dsub = p.add_subparsers(dest="action", required=True)
    q = dsub.add_parser("psi", parents=[common])
    q.add_argument("--word", required=True, help="word JSON (inline or file)")
    q = dsub.add_parser("preimage", parents=[common])
    q.add_argument("--vector", required=True, help='e.g. \'{"a": -1, "b": 1}\'')
    q = dsub.add_parser("rewrite", parents=[common])
    q.add_argument("--word", required=True)
    q.add_argument("--structure", required=True)
    q.add_argument("--seed", type=int, default=None, help="random interleaving of rewrite steps")
    q = dsub.add_parser("costhom", parents=[common])
    q.add_argument("input")
    q.add_argument("--word", required=True)
    q = dsub.add_parser("equal", parents=[common])
    q.add_argument("--word1", required=True)
    q.add_argument("--word2", required=True)
    q.add_argument("--structure", required=True)
    p.set_defaults(func=cmd_dress)

    p = sub.add_parser("pretop", help="preclosure operators")
    psub = p.add_subparsers(dest="action", required=True)
    q = psub.add_parser("closure", parents=[common])
    q.add_argument("input", help="preclosure JSON or cost space")
    q.add_argument("--radius", default=None)
    q.add_argument("--intersection", action="store_true",
                   help="intersection of all positive-radius thickenings")
    q.add_argument("--subset", nargs="*", default=[])
    q = psub.add_parser("continuity", parents=[common])
    q.add_argument("query", help='{"map": ..., "preX": ..., "preZ": ...}')
    q = psub.add_parser("product", parents=[common])
    q.add_argument("input")
    q.add_argument("input2")
    q.add_argument("--radius", default=None)
    q.add_argument("--form", choices=("additive", "rectangle"), default="additive")
    q.add_argument("--samples", type=int, default=256,
                   help="random subsets for the axiom check on grounds above 16 points")
    q = psub.add_parser("compare", parents=[common])
    q.add_argument("input")
    q.add_argument("input2")
    q.add_argument("--radius", default=None)
    q.add_argument("--radius2", default=None)
    p.set_defaults(func=cmd_pretop)

    p = sub.add_parser("curvature", parents=[common], help="directed curvature of triples")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all-triples", action="store_true", help="CSV table (the default)")
    g.add_argument("--triple", nargs=3, metavar=("X1", "X2", "X3"))
    p.add_argument("--oracle", action="store_true", help="use the grid oracle")
    p.add_argument("--symmetrized", action="store_true")
    p.add_argument("--grid-step", type=float, default=1e-3)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("median", parents=[common], help="medians of an ordered triple")
    p.add_argument("input")
    p.add_argument("--triple", nargs=3, required=True, metavar=("X1", "X2", "X3"))
    p.set_defaults(func=cmd_median)

    p = sub.add_parser("deviation", parents=[common], help="hyperconvexity deviation")
    p.add_argument("input")
    p.add_argument("--pairs", required=True, help='JSON [[p, q, r, r_in], ...]; "inf" allowed')
    p.set_defaults(func=cmd_deviation)

    p = sub.add_parser("convexity", parents=[common], help="almost-chronodesic split test")
    p.add_argument("input")
    p.add_argument("--epsilon", default="0")
    p.set_defaults(func=cmd_convexity)

    p = sub.add_parser("tightspan", help="tight-span function pairs")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("check", parents=[common])
    q.add_argument("input")
    q.add_argument("--pair", required=True, help='{"f": {...}, "g": {...}}')
    q.add_argument("--bitight", action="store_true", help="also require the mirrored equation")
    q = tsub.add_parser("tighten", parents=[common])
    q.add_argument("input")
    q.add_argument("--function", required=True, help="the given side as JSON {label: value}")
    q.add_argument("--side", choices=("f", "g"), default="f", help="which side to compute")
    q = tsub.add_parser("kuratowski", parents=[common])
    q.add_argument("input")
    q.add_argument("--point", required=True)
    q = tsub.add_parser("iterate", parents=[common])
    q.add_argument("input")
    q.add_argument("--g0", required=True)
    q.add_argument("--max-iter", type=int, default=20)
    p.set_defaults(func=cmd_tightspan)

    p = sub.add_parser("transform", help="build a new cost space")
    xsub = p.add_subparsers(dest="action", required=True)
    for name in ("symmetrize", "reverse", "closure"):
        q = xsub.add_parser(name, parents=[common])
        q.add_argument("input")
    q = xsub.add_parser("product", parents=[common])
    q.add_argument("input")
    q.add_argument("input2")
    q.add_argument("--p", default="inf", help="l_p exponent (default inf = max)")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("sample", parents=[common], help="random valid cost space")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--low", type=int, default=1)
    p.add_argument("--high", type=int, default=20)
    p.add_argument("--p-missing", type=float, default=0.0)
    p.set_defaults(func=cmd_sample)
    return parser


def _show_warning(message, *_args, **_kw):
    print(f"costspace: warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is None:
            args.tol = _default_tol()
        elif not args.tol > 0:
            raise InputError("--tol must be positive")
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _show_warning
            return args.func(args)
    except (InputError, ValueError, KeyError, OSError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"costspace: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - last resort
        print(f"costspace: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
