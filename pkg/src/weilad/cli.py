"""Command-line front end.

Subcommands: ``algebra info``, ``algebra tensor``, ``jet``, ``partials``,
``morphism apply``, ``laws run``, ``model check``.  Output defaults to JSON
(one document per invocation, deterministic for a fixed seed); ``--format
human`` renders a readable summary.  Exit status: 0 success, 1 a law or
check failed (or a computation error, reported in the ``error`` field),
2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import scalars
from .algebra import algebra_from_spec, algebra_info, morphism_from_generator_images, tensor
from .errors import WeilError
from .expr import parse_function_file, parse_smooth_map
from .fincat import (
    exp_compat_check,
    exp_compat_check_slice,
    load_instance_file,
    localization_check,
    verify_ccc,
    verify_slice_ccc,
)
from .functor import DERIVATIVE, RAW, jet, lift_eval, partials
from .laws import LAW_IDS, default_instances, enumerate_laws, run_law
from .numbers import generator, push_along
from .report import _jsonable

_INLINE_VARS = ("x", "y", "z", "w")


def _emit(payload, fmt: str, human_lines) -> None:
    if fmt == "json":
        print(json.dumps(_jsonable(payload), sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


def _load_map(text: str, arity: int):
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            return parse_function_file(fh.read())
    return parse_smooth_map(text, _INLINE_VARS[:arity])


def _parse_point(text: str, mode: str):
    parts = [p for p in text.split(",") if p.strip()]
    vals = [scalars.parse_scalar(p) for p in parts]
    if mode == scalars.FLOAT:
        return [float(v) for v in vals]
    return vals


def cmd_algebra(args) -> int:
    if args.action == "info":
        info = algebra_info(algebra_from_spec(args.spec))
        lines = ["algebra %s" % info["name"],
                 "dim %d, nilpotency index %d" % (info["dim"], info["nilpotency_index"]),
                 "basis: %s" % " ".join(info["basis"])]
        lines += ["  %s = %s" % (k, v) for k, v in info["multiplication"].items()]
        _emit(info, args.format, lines)
        return 0
    w1 = algebra_from_spec(args.spec)
    w2 = algebra_from_spec(args.spec2)
    t = tensor(w1, w2)
    payload = {
        "algebra": algebra_info(t.algebra),
        "incl1": {"matrix": [list(r) for r in t.incl1.matrix]},
        "incl2": {"matrix": [list(r) for r in t.incl2.matrix]},
    }
    info = payload["algebra"]
    _emit(payload, args.format,
          ["tensor %s" % info["name"],
           "dim %d, nilpotency index %d" % (info["dim"], info["nilpotency_index"]),
           "basis: %s" % " ".join(info["basis"])])
    return 0


def cmd_jet(args) -> int:
    f = _load_map(args.fn, 1)
    if f.arity != 1:
        raise WeilError("jet needs a one-variable map; use partials")
    at = scalars.parse_scalar(args.at)
    if args.scalar == scalars.FLOAT:
        at = float(at)
    norm = DERIVATIVE if args.normalization == "derivative" else RAW
    table = jet(f, at, args.order, norm)
    series = table.series()
    values = [entry[1][0] if f.n_outputs == 1 else list(entry[1]) for entry in series]
    payload = {
        "fn": args.fn,
        "at": at,
        "order": args.order,
        "normalization": args.normalization,
        "values": values,
        "series": [{"monomial": label, "values": list(vals)} for label, vals in series],
    }
    _emit(payload, args.format,
          ["jet of %s at %s (order %d, %s)" % (args.fn, args.at, args.order, args.normalization)]
          + ["  %s: %s" % (label, ", ".join(scalars.format_scalar(v) for v in vals))
             for label, vals in series])
    return 0


def cmd_partials(args) -> int:
    mode = args.scalar
    at = _parse_point(args.at, mode)
    orders = [int(p) for p in args.orders.split(",") if p.strip()]
    f = _load_map(args.fn, len(at))
    norm = DERIVATIVE if args.normalization == "derivative" else RAW
    table = partials(f, at, orders, norm)
    entries = []
    for m in table.algebra.basis:
        exps = tuple(m.exponent(i) for i in range(f.arity))
        vals = table.value(exps)
        entries.append({"orders": list(exps), "values": list(vals)})
    payload = {"fn": args.fn, "at": at, "orders": orders,
               "normalization": args.normalization, "entries": entries}
    _emit(payload, args.format,
          ["partials of %s at %s up to %s" % (args.fn, args.at, args.orders)]
          + ["  %s: %s" % (e["orders"], ", ".join(scalars.format_scalar(v) for v in e["values"]))
             for e in entries])
    return 0


def cmd_morphism(args) -> int:
    src = algebra_from_spec(args.source)
    tgt = algebra_from_spec(args.target)
    mode = args.scalar

    def element(spec_text, w):
        f = parse_smooth_map(spec_text, w.generator_names)
        gens = [generator(w, i, mode) for i in range(len(w.generator_names))]
        return lift_eval(f, w, gens, mode=mode)[0]

    images = [element(part, tgt) for part in args.images.split(";") if part.strip()]
    phi = morphism_from_generator_images(src, tgt, images)
    value = element(args.value, src)
    result = push_along(phi, value)
    payload = {
        "source": src.name,
        "target": tgt.name,
        "value": list(value.coeffs),
        "result": {"coeffs": list(result.coeffs), "text": result.format()},
    }
    _emit(payload, args.format, ["%s  |->  %s" % (value.format(), result.format())])
    return 0


def cmd_laws(args) -> int:
    selected = args.law or list(LAW_IDS)
    for law_id in selected:
        if law_id not in LAW_IDS:
            raise WeilError("unknown law %r; known: %s" % (law_id, " ".join(LAW_IDS)))
    reports = []
    for law_id in selected:
        for instance in default_instances(law_id, args.scalar, args.seed):
            reports.append(run_law(instance, max_enum=args.max_enum))
    payload = [r.to_json() for r in reports]
    lines = ["%-4s %-8s %-9s %5d checks  %s" % (
        r.law_id, r.model, r.scalar_mode, r.instances_run,
        "pass" if r.passed else "FAIL (%d)" % r.failures) for r in reports]
    infos = {i.law_id: i.statement for i in enumerate_laws()}
    if args.format == "human":
        lines += ["", "statements:"]
        lines += ["  %s: %s" % (law, infos[law]) for law in selected]
    _emit(payload, args.format, lines)
    return 0 if all(r.passed for r in reports) else 1


def cmd_model(args) -> int:
    instance = load_instance_file(args.input)
    roles = instance.roles
    reports = []

    if args.check == "ccc":
        cfg = roles.get("ccc", {})
        functors = [instance.functor(n) for n in cfg.get("functors", [])]
        probes = [instance.functor(n) for n in cfg.get("probes", [])]
        pms = [instance.nat_trans[n] for n in cfg.get("probe_morphisms", [])]
        for m in functors:
            for n in functors:
                reports.append(verify_ccc(m, n, probes, pms, max_enum=args.max_enum))
    elif args.check == "slice-ccc":
        cfg = roles.get("slice_ccc", {})
        base = instance.functor(cfg["base"])
        probes = [instance.sliced_obj(p) for p in cfg.get("probes", [])]
        for a_name, b_name in cfg.get("pairs", []):
            reports.append(
                verify_slice_ccc(base, instance.sliced_obj(a_name),
                                 instance.sliced_obj(b_name), probes, max_enum=args.max_enum)
            )
    elif args.check == "exp-compat":
        for cfg in roles.get("exp_compat", []):
            second = None
            if cfg.get("eta"):
                second = (instance.endo(cfg["g2"]), instance.family(cfg["eta"]))
            reports.append(exp_compat_check(
                instance.endo(cfg["g"]), instance.functor(cfg["m"]),
                instance.functor(cfg["n"]), second, args.max_enum))
        for cfg in roles.get("slice_exp_compat", []):
            second = None
            if cfg.get("eta"):
                second = (instance.endo(cfg["g2"]), instance.family(cfg["eta"]))
            reports.append(exp_compat_check_slice(
                instance.endo(cfg["g"]), instance.functor(cfg["base"]),
                instance.sliced_obj(cfg["a"]), instance.sliced_obj(cfg["b"]),
                second, args.max_enum))
    else:
        for cfg in roles.get("localization", []):
            second = None
            if cfg.get("eta"):
                second = (instance.endo(cfg["g2"]), instance.family(cfg["eta"]))
            reports.append(localization_check(
                instance.endo(cfg["g"]), instance.sliced_obj(cfg["a"]),
                instance.functor(cfg["r"]), second, args.max_enum))

    payload = {
        "instance": instance.name,
        "check": args.check,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_json() for r in reports],
    }
    _emit(payload, args.format, [r.summary() for r in reports])
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json")
    common.add_argument("--max-enum", type=int, default=None,
                        help="candidate bound for finite enumerations "
                             "(default: WEILAD_MAX_ENUM or 10^7)")

    parser = argparse.ArgumentParser(
        prog="weilad",
        description="Exact truncation-algebra arithmetic, derivative extraction, "
                    "and the structural law suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="inspect algebras")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    info = alg_sub.add_parser("info", parents=[common],
                              help="basis, dimension, multiplication table")
    info.add_argument("spec", help="builtin (base, dual:N, jet:R, mixed:R1,R2,...) or file path")
    ten = alg_sub.add_parser("tensor", parents=[common], help="tensor product of two algebras")
    ten.add_argument("spec", help="first algebra")
    ten.add_argument("spec2", help="second algebra")

    jet_p = sub.add_parser("jet", parents=[common], help="Taylor data of a one-variable map")
    jet_p.add_argument("--fn", required=True, help="expression in x, or a function file")
    jet_p.add_argument("--at", required=True)
    jet_p.add_argument("--order", type=int, required=True)
    jet_p.add_argument("--scalar", choices=scalars.MODES, default=scalars.FLOAT)
    jet_p.add_argument("--normalization", choices=("derivative", "raw"), default="derivative")

    par_p = sub.add_parser("partials", parents=[common],
                           help="mixed partials of a multivariable map")
    par_p.add_argument("--fn", required=True, help="expression in x,y,z,w or a function file")
    par_p.add_argument("--at", required=True, help="comma-separated coordinates")
    par_p.add_argument("--orders", required=True, help="comma-separated orders per variable")
    par_p.add_argument("--scalar", choices=scalars.MODES, default=scalars.FLOAT)
    par_p.add_argument("--normalization", choices=("derivative", "raw"), default="derivative")

    mor = sub.add_parser("morphism", help="build a morphism from generator images and apply it")
    mor_sub = mor.add_subparsers(dest="action", required=True)
    mor_apply = mor_sub.add_parser("apply", parents=[common])
    mor_apply.add_argument("--from", dest="source", required=True)
    mor_apply.add_argument("--to", dest="target", required=True)
    mor_apply.add_argument("--images", required=True,
                           help="semicolon-separated expressions in the target's generators")
    mor_apply.add_argument("--value", required=True,
                           help="expression in the source's generators")
    mor_apply.add_argument("--scalar", choices=scalars.MODES, default=scalars.RATIONAL)

    laws_p = sub.add_parser("laws", help="run the law suite")
    laws_sub = laws_p.add_subparsers(dest="action", required=True)
    laws_run = laws_sub.add_parser("run", parents=[common])
    laws_run.add_argument("--law", action="append", help="law id (repeatable); default all")
    laws_run.add_argument("--scalar", choices=scalars.MODES, default=scalars.RATIONAL)
    laws_run.add_argument("--seed", type=int, default=0)

    model = sub.add_parser("model", help="finite-model structural checks")
    model_sub = model.add_subparsers(dest="action", required=True)
    model_check = model_sub.add_parser("check", parents=[common])
    model_check.add_argument("--input", required=True, help="instance JSON file")
    model_check.add_argument("--check", required=True,
                             choices=("ccc", "slice-ccc", "exp-compat", "localization"))

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "algebra":
            return cmd_algebra(args)
        if args.command == "jet":
            return cmd_jet(args)
        if args.command == "partials":
            return cmd_partials(args)
        if args.command == "morphism":
            return cmd_morphism(args)
        if args.command == "laws":
            return cmd_laws(args)
        return cmd_model(args)
    except WeilError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if args.format == "json":
            print(json.dumps(_jsonable(payload), sort_keys=True, indent=2))
        else:
            print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
