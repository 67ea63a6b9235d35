"""Command-line front-end over the JSON configuration interchange format.

Exit codes: 0 success / check passed, 1 check or verification failed,
2 malformed input or unsupported request.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .configuration import from_json_dict, to_json_dict
from .exactla import rat
from .families import family_spec, generate
from .gamma import gamma_sq_direct, gamma_tilde_sq, gamma_tilde_sq_dual, root_data
from .catalog import build_catalog
from .restriction import restrict
from .veesystem import (
    NotProportionalError,
    ZeroG2Error,
    lambda_sq,
    m_operator,
    subsystem,
    vee_check,
)
from . import wdvv as wdvv_mod


class InputError(ValueError):
    pass


def _load_config(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
        return from_json_dict(data)
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise InputError("cannot read configuration %s: %s" % (path, e))


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError("expected comma-separated indices, got %r" % text)


def _cmd_gen(args) -> int:
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise InputError("--param expects name=value, got %r" % item)
        k, v = item.split("=", 1)
        params[k] = rat(v)
    partition = None if args.partition is None else _parse_indices(args.partition)
    spec = family_spec(args.family, rank=args.rank, partition=partition, **params)
    cfg = generate(spec)
    if args.name:
        cfg = cfg.with_name(args.name)
    _emit(to_json_dict(cfg), args.output)
    return 0


def _cmd_check(args) -> int:
    cfg = _load_config(args.config)
    if len(cfg) == 0:
        raise InputError("empty covector list")
    report = vee_check(cfg, probe_flips=args.probe_flips, seed=args.seed)
    payload = report.to_json_dict()
    if args.json:
        _emit(payload, None)
    else:
        print("vee-system: %s" % ("yes" if report.is_vee else "NO"))
        print("proportional forms: %s" % ("yes" if report.proportionality_ok else "NO"))
        print("lambda_sq: %s" % payload["lambda_sq"])
        print("positive-system independent: %s" % report.g2_positive_independent)
        for w in payload["warnings"]:
            print("warning: zero class sum at anchor %d subset %s" % (w["anchor"], w["subset"]))
    return 0 if report.is_vee and report.proportionality_ok else 1


def _cmd_wdvv(args) -> int:
    cfg = _load_config(args.config)
    if args.lambda_sq is not None:
        lam = rat(args.lambda_sq)
    else:
        try:
            lam = lambda_sq(cfg)
        except (NotProportionalError, ZeroG2Error) as e:
            raise InputError("lambda^2 is undefined for this configuration: %s" % e)
    report = wdvv_mod.wdvv_residual(cfg, lam, points=args.samples, seed=args.seed, tol=args.tol)
    payload = {
        "lambda_sq": str(lam),
        "max_residual": report.max_residual,
        "tol": report.tol,
        "passed": report.passed,
        "seed": report.seed,
        "points": report.points,
    }
    if args.json:
        _emit(payload, None)
    else:
        print("max scaled WDVV residual: %.3e (tol %.1e) -> %s"
              % (report.max_residual, report.tol, "pass" if report.passed else "FAIL"))
    return 0 if report.passed else 1


def _cmd_restrict(args) -> int:
    cfg = _load_config(args.config)
    handle = subsystem(cfg, _parse_indices(args.kernel_of))
    res = restrict(cfg, handle)
    payload = to_json_dict(res.child)
    payload["provenance"] = [list(p) for p in res.provenance]
    payload["basis"] = [[str(x) for x in b] for b in res.basis]
    _emit(payload, args.output)
    return 0


def _cmd_subsystem(args) -> int:
    cfg = _load_config(args.config)
    handle = subsystem(cfg, _parse_indices(args.span))
    payload = {
        "members": list(handle.member_indices),
        "span_indices": list(handle.span_indices),
        "is_isotropic": handle.is_isotropic,
    }
    if not handle.is_isotropic:
        try:
            eig = m_operator(cfg, handle)
            payload["eigenvalues"] = [str(v) for v in eig.eigenvalues]
        except Exception as e:  # noqa: BLE001 - reported, not fatal
            payload["eigenvalues_error"] = str(e)
    _emit(payload, None) if args.json else print(json.dumps(payload))
    return 0


_GAMMA_DUAL_SPEC = {
    # multiplicity d_a = c_a / <a,a> expressed through the generator parameters
    "B": lambda n, p, q: family_spec("B", n, p=p, q=q / 2),
    "C": lambda n, p, q: family_spec("C", n, p=p / 2, q=q / 4),
    "F4": lambda n, p, q: family_spec("F4", None, r=q / 2, s=p),
    "G2": lambda n, p, q: family_spec("G2", None, p=p, q=q / 3),
}


def _cmd_gamma(args) -> int:
    fam = args.family
    rd = root_data(fam, args.rank)
    if rd.simply_laced:
        if args.t is None:
            raise InputError("family %s takes --t" % fam)
        mult = {"all": rat(args.t)}
        spec = family_spec(fam, args.rank, t=rat(args.t) / 2)
    else:
        if args.p is None or args.q is None:
            raise InputError("family %s takes --p (short) and --q (long)" % fam)
        mult = {"short": rat(args.p), "long": rat(args.q)}
        spec = _GAMMA_DUAL_SPEC[fam](args.rank, rat(args.p), rat(args.q))
    highest = gamma_tilde_sq(rd, mult)
    dual_form = gamma_tilde_sq_dual(rd, mult)
    direct = gamma_sq_direct(generate(spec), rd)
    payload = {
        "family": fam,
        "gamma_tilde_sq_highest_root": str(highest),
        "gamma_tilde_sq_dual_root": str(dual_form),
        "gamma_sq_direct": str(direct),
        "agree": highest == dual_form == direct,
    }
    if args.json:
        _emit(payload, None)
    else:
        print("gamma~^2 (highest root): %s" % highest)
        print("gamma~^2 (dual root):    %s" % dual_form)
        print("gamma^2  (direct route): %s" % direct)
    return 0 if payload["agree"] else 1


def _cmd_catalog(args) -> int:
    params = {}
    for item in args.param or []:
        k, v = item.split("=", 1)
        params[k] = rat(v)
    if not params:
        names = {"E6": "t", "E7": "t", "E8": "t", "A": "t", "D": "t"}
        if args.family in names:
            params[names[args.family]] = Fraction(1)
        elif args.family in ("B", "C", "G2"):
            params = {"p": Fraction(1), "q": Fraction(1)}
        elif args.family == "BC":
            params = {"r": Fraction(1), "s": Fraction(1), "q": Fraction(1)}
        elif args.family == "F4":
            params = {"r": Fraction(1), "s": Fraction(1)}
        else:
            raise InputError("family %s needs explicit --param values" % args.family)
    spec = family_spec(args.family, rank=args.rank, **params)
    cfg = generate(spec)
    label = ",".join("%s=%s" % kv for kv in spec.params)
    cat = build_catalog(cfg, args.family, label, args.max_corank)
    _emit(cat.to_json_dict(), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trigvee")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a built-in family configuration")
    g.add_argument("--family", required=True)
    g.add_argument("--rank", type=int)
    g.add_argument("--param", action="append", metavar="NAME=VALUE")
    g.add_argument("--partition", metavar="M1,M2,...")
    g.add_argument("--name")
    g.add_argument("-o", "--output")
    g.set_defaults(func=_cmd_gen)

    c = sub.add_parser("check", help="vee-condition / proportionality report")
    c.add_argument("config")
    c.add_argument("--json", action="store_true")
    c.add_argument("--probe-flips", type=int, default=2)
    c.add_argument("--seed", type=int, default=7)
    c.set_defaults(func=_cmd_check)

    w = sub.add_parser("wdvv", help="floating-point WDVV residual verification")
    w.add_argument("config")
    w.add_argument("--lambda-sq")
    w.add_argument("--samples", type=int, default=20)
    w.add_argument("--seed", type=int, default=42)
    w.add_argument("--tol", type=float, default=1e-8)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=_cmd_wdvv)

    r = sub.add_parser("restrict", help="restrict to the kernel of chosen covectors")
    r.add_argument("config")
    r.add_argument("--kernel-of", required=True, metavar="I,J,...")
    r.add_argument("-o", "--output")
    r.set_defaults(func=_cmd_restrict)

    s = sub.add_parser("subsystem", help="span closure, isotropy and eigenvalues")
    s.add_argument("config")
    s.add_argument("--span", required=True, metavar="I,J,...")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_subsystem)

    ga = sub.add_parser("gamma", help="highest-root constants by all three routes")
    ga.add_argument("--family", required=True)
    ga.add_argument("--rank", type=int)
    ga.add_argument("--p")
    ga.add_argument("--q")
    ga.add_argument("--t")
    ga.add_argument("--json", action="store_true")
    ga.set_defaults(func=_cmd_gamma)

    ca = sub.add_parser("catalog", help="deduplicated restriction catalog")
    ca.add_argument("--family", required=True)
    ca.add_argument("--rank", type=int)
    ca.add_argument("--param", action="append", metavar="NAME=VALUE")
    ca.add_argument("--max-corank", type=int, required=True)
    ca.add_argument("--seed", type=int, default=0)
    ca.add_argument("-o", "--output")
    ca.set_defaults(func=_cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, ZeroDivisionError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
