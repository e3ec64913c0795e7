"""
spheresect command line.

  spheresect section --n 3 --m 5
  spheresect braid equal --n 3 "1 2 1" "2 1 2"
  spheresect braid cable --n 3 --lemma36          # k defaults to (n-1)(n-2)+1
  spheresect monodromy --n 4 --m 6 --path generator --i 1
  spheresect feasible --n 4 --m 22
  spheresect replay run.json

Exit codes: 0 ok, 2 infeasible, 3 numerical certification failure, 4 parse/config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import metadata

import numpy as np

from . import io as sio
from .braid import BraidWord, relation_word
from .cabling import CablingVector, cable, cabled_relation_target, exponent_ledger, relation_check
from .config import TOL
from .configuration import Configuration, SeparationError, set_mismatch, verify_output
from .elliptic import ConditioningError
from .feasibility import Infeasible, Status, construct, decide
from .garside import equal_in_artin, normal_form
from .identities import identity_suite
from .mobius import random_mobius, random_rotation
from .monodromy import TrackingError, constant_path, generator_loop, samples_path, track, word_loop
from .roots import RootFindingError

EXIT_OK, EXIT_INFEASIBLE, EXIT_NUMERIC, EXIT_PARSE = 0, 2, 3, 4

NUMERIC_ERRORS = (SeparationError, RootFindingError, ConditioningError, TrackingError)

# constructions that commute with every Mobius map; the rest only with rotations
MOBIUS_EQUIVARIANT = {"cross_ratio", "torsion", "empty"}


class CliError(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("error", ""))
        self.code = code
        self.payload = payload


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "dev"


def _manifest(args, argv) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "output", "input")}
    return {
        "command": args.command,
        "argv": list(argv),
        "parameters": params,
        "seed": args.seed,
        "tolerances": {"sep": _tol_sep(args), "eval": _tol_eval(args)},
        "input": getattr(args, "input", None),
        "output": args.output,
        "version": _version(),
    }


def _tol_sep(args) -> float:
    return TOL.sep if args.tol_sep is None else args.tol_sep


def _tol_eval(args) -> float:
    return 1e-9 if args.tol_eval is None else args.tol_eval


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise sio.ParseError(f"no such file {path!r}") from None
    except json.JSONDecodeError as exc:
        raise sio.ParseError(f"invalid JSON in {path}: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None


def _config(args, n: int) -> Configuration:
    if args.input:
        obj = _load_json(args.input)
        if isinstance(obj, dict) and "config" in obj:
            obj = obj["config"]
        config = sio.config_from_json(obj, tol_sep=_tol_sep(args))
        if config.n != n:
            raise sio.ParseError(f"input has {config.n} points but --n is {n}", "$.points")
        return config
    if getattr(args, "roots_of_unity", False):
        return Configuration.roots_of_unity(n)
    return Configuration.random(n, np.random.default_rng(args.seed), min_sep=0.05)


def _section_kwargs(args) -> dict:
    kw = {"tol_sep": _tol_sep(args)}
    if args.K is not None:
        kw["K"] = args.K
    if args.theta_step is not None:
        kw["theta_step"] = args.theta_step
    return kw


def _check_feasible(n: int, m: int):
    verdict = decide(n, m)
    if verdict.status is not Status.EXISTS:
        raise CliError(EXIT_INFEASIBLE, {"error": "infeasible", "verdict": verdict.to_dict()})
    return verdict


def equivariance_residual(config, out, m, method, kwargs, rng, samples: int) -> dict:
    """Max set mismatch between section(g config) and g section(config) over random g."""
    kind = "mobius" if out.method in MOBIUS_EQUIVARIANT else "rotation"
    worst, used = 0.0, 0
    for _ in range(samples):
        g = random_mobius(rng) if kind == "mobius" else random_rotation(rng)
        try:
            moved = construct(config.transformed(g), m, method, **kwargs)
        except (ConditioningError, SeparationError):
            continue  # g pushed the configuration somewhere the construction refuses
        worst = max(worst, set_mismatch(moved.new_points, out.transformed(g).new_points))
        used += 1
    return {"group": kind, "samples": used, "residual": worst}


def cmd_section(args) -> dict:
    _check_feasible(args.n, args.m)
    config = _config(args, args.n)
    kw = _section_kwargs(args)
    out = construct(config, args.m, args.method, **kw)
    report = verify_output(config, out, args.m, _tol_sep(args))
    if args.equivariance_samples and out.m:
        eq = equivariance_residual(config, out, args.m, args.method, kw,
                                   np.random.default_rng(args.seed + 1), args.equivariance_samples)
        eq["ok"] = eq["residual"] < _tol_eval(args)
        report["equivariance"] = eq
        report["ok"] = report["ok"] and eq["ok"]
    result = {"config": sio.config_to_json(config), "output": sio.output_to_json(out),
              "verification": report}
    if not report["ok"]:
        raise CliError(EXIT_NUMERIC, {"error": "verification failed", **result})
    if args.format == "csv":
        result["_csv"] = sio.points_csv(config, out)
    return result


def _word(args, text: str, n: int | None = None) -> BraidWord:
    return sio.parse_word(text, args.n if n is None else n)


def _vector(args) -> CablingVector:
    if args.lemma36:
        kp, rem = divmod(args.k - 1, (args.n - 1) * (args.n - 2))
        if rem or kp < 1:
            raise sio.ParseError(f"--lemma36 needs k = k'(n-1)(n-2)+1; got k={args.k} for n={args.n}", "--k")
        from .cabling import relation_vector
        return relation_vector(args.n, kp)
    phi = _word(args, args.phi or "", args.k)
    a = [int(x) for x in (args.a or "").replace(",", " ").split()] or [0] * (args.n - 1)
    try:
        return CablingVector(phi, tuple(a), args.c, args.t, args.n)
    except ValueError as exc:
        raise sio.ParseError(str(exc), "cabling vector") from None


def cmd_braid(args) -> dict:
    op = args.op
    if op == "nf":
        if len(args.words) != 1:
            raise sio.ParseError("nf needs exactly one word", "arguments")
        w = _word(args, args.words[0])
        return {"word": w.to_ints(), "normal_form": normal_form(w).to_dict()}
    if op == "equal":
        if len(args.words) != 2:
            raise sio.ParseError("equal needs exactly two words", "arguments")
        w1, w2 = (_word(args, s) for s in args.words)
        return {"w1": w1.to_ints(), "w2": w2.to_ints(), "equal": equal_in_artin(w1, w2)}
    if op in ("cable", "ledger"):
        if args.k is None and args.lemma36:
            args.k = (args.n - 1) * (args.n - 2) + 1
        if args.k is None:
            raise sio.ParseError("missing option", "--k")
        v = _vector(args)
        w = _word(args, args.words[0]) if args.words else relation_word(args.n)
        if op == "ledger":
            return {"word": w.to_ints(), "ledger": exponent_ledger(v, w)}
        cabled = cable(v, w)
        res = {"word": w.to_ints(), "strands": cabled.strands, "cabled": cabled.to_ints()}
        if args.lemma36 and not args.words:
            chk = relation_check(args.n, (v.k - 1) // ((args.n - 1) * (args.n - 2)))
            res["relation_check"] = chk
            res["target"] = cabled_relation_target(args.n, v.k).to_ints()
            if not chk["exact_equal"]:
                res["fallback"] = {"permutation_match": chk["permutation_match"],
                                   "ledger_match": chk["ledger_match"]}
        return res
    if op == "identities":
        return identity_suite(args.n)
    raise sio.ParseError(f"unknown braid operation {op!r}")


def _path(args):
    kind = args.path
    base = Configuration.roots_of_unity(args.n)
    if args.input and kind != "samples":
        base = _config(args, args.n)
    if kind == "constant":
        return constant_path(base)
    if kind == "generator":
        if args.i is None:
            raise sio.ParseError("--i is required for a generator path", "--i")
        return generator_loop(args.n, args.i, base)
    if kind == "word":
        return word_loop(args.n, _word(args, args.word or "").to_ints(), base)
    if kind == "samples":
        if not args.input:
            raise sio.ParseError("--input with sample configurations is required", "--input")
        obj = _load_json(args.input)
        rows = obj["samples"] if isinstance(obj, dict) else obj
        pts = [[sio.point_from_json(p, f"$.samples[{r}][{c}]") for c, p in enumerate(row)]
               for r, row in enumerate(rows)]
        return samples_path(pts)
    raise sio.ParseError(f"unknown path type {kind!r}", "--path")


def cmd_monodromy(args) -> dict:
    _check_feasible(args.n, args.m)
    kw = _section_kwargs(args)
    m, method = args.m, args.method

    def section(config):
        return construct(config, m, method, **kw)

    path = _path(args)
    res = track(section, path, steps=args.steps, adaptive=not args.fixed_steps, tol_sep=_tol_sep(args))
    return {"path": path.label, "closed": path.closed, "tracking": res.to_dict()}


def cmd_feasible(args) -> dict:
    return {"verdict": decide(args.n, args.m).to_dict()}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-sep", type=float, default=None, help="separation tolerance (chordal)")
    common.add_argument("--tol-eval", type=float, default=None, help="equivariance residual tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", default=None, help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    construction = argparse.ArgumentParser(add_help=False)
    construction.add_argument("--n", type=int, required=True)
    construction.add_argument("--m", type=int, required=True)
    construction.add_argument("--method", choices=("cross_ratio", "torsion", "spacelevel", "planner"))
    construction.add_argument("--input", default=None, help="configuration JSON")
    construction.add_argument("--K", type=float, default=None, help="space-level scale multiplier")
    construction.add_argument("--theta-step", type=float, default=None, help="angle between levels")

    p = argparse.ArgumentParser(prog="spheresect", description="sections of point configurations on the sphere")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("section", parents=[common, construction], help="construct m new points")
    s.add_argument("--random", action="store_true", help="random configuration from --seed (default)")
    s.add_argument("--roots-of-unity", action="store_true")
    s.add_argument("--equivariance-samples", type=int, default=3)
    s.set_defaults(func=cmd_section)

    b = sub.add_parser("braid", help="braid group computations")
    bsub = b.add_subparsers(dest="op", required=True)
    word_opts = argparse.ArgumentParser(add_help=False)
    word_opts.add_argument("words", nargs="*", help="whitespace-separated signed generator indices")
    word_opts.add_argument("--n", type=int, required=True)
    cable_opts = argparse.ArgumentParser(add_help=False)
    cable_opts.add_argument("--k", type=int, default=None)
    cable_opts.add_argument("--lemma36", action="store_true", help="use the relation-killing cabling vector")
    cable_opts.add_argument("--phi", default=None, help="phi as a word on k strands")
    cable_opts.add_argument("--a", default=None, help="a_1 .. a_{n-1}")
    cable_opts.add_argument("--c", type=int, default=0)
    cable_opts.add_argument("--t", type=int, default=0)
    for op, extra in (("nf", []), ("equal", []), ("cable", [cable_opts]),
                      ("ledger", [cable_opts]), ("identities", [])):
        bsub.add_parser(op, parents=[common, word_opts, *extra])
    b.set_defaults(func=cmd_braid, k=None, lemma36=False)

    mo = sub.add_parser("monodromy", parents=[common, construction], help="track a section along a path")
    mo.add_argument("--path", choices=("constant", "generator", "word", "samples"), default="generator")
    mo.add_argument("--i", type=int, default=None)
    mo.add_argument("--word", default=None)
    mo.add_argument("--steps", type=int, default=32)
    mo.add_argument("--fixed-steps", action="store_true")
    mo.set_defaults(func=cmd_monodromy)

    f = sub.add_parser("feasible", parents=[common], help="existence verdict for (n, m)")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--m", type=int, required=True)
    f.set_defaults(func=cmd_feasible)

    r = sub.add_parser("replay", help="re-run the command recorded in a result manifest")
    r.add_argument("manifest")
    r.add_argument("--output", default=None, help="override the recorded output path")
    return p


def _emit(result: dict, args) -> None:
    text = result.pop("_csv", None)
    if text is None:
        text = sio.dumps(result) + "\n"
    if args is not None and args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _redirect(argv: list[str], output: str | None) -> list[str]:
    """Drop any recorded --output and, if given, substitute a new one."""
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
        elif tok == "--output":
            skip = True
        elif not tok.startswith("--output="):
            out.append(tok)
    return out + (["--output", output] if output else [])


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    if args.command == "replay":
        try:
            man = _load_json(args.manifest)
            if isinstance(man, dict) and "manifest" in man:
                man = man["manifest"]
            return run(_redirect(list(man["argv"]), args.output))
        except (sio.ParseError, KeyError, TypeError) as exc:
            print(json.dumps({"error": f"bad manifest: {exc}"}), file=sys.stderr)
            return EXIT_PARSE
    if args.format == "csv" and args.command != "section":
        print(json.dumps({"error": "csv output is only available for section point clouds"}), file=sys.stderr)
        return EXIT_PARSE
    manifest = _manifest(args, argv)
    try:
        result = args.func(args)
        code = EXIT_OK
    except CliError as exc:
        result, code = exc.payload, exc.code
    except Infeasible as exc:
        result, code = {"error": "infeasible", "verdict": exc.verdict.to_dict()}, EXIT_INFEASIBLE
    except NUMERIC_ERRORS as exc:
        result, code = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_NUMERIC
    except sio.ParseError as exc:
        result = {"error": str(exc), "position": exc.position}
        code = EXIT_PARSE
    except ValueError as exc:
        result, code = {"error": f"invalid arguments: {exc}"}, EXIT_PARSE
    if code == EXIT_OK:
        if "_csv" not in result:
            result = {"manifest": manifest, **result}
        _emit(result, args)
    else:
        result = {**result, "manifest": manifest}
        print(sio.dumps(result), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    code = run(sys.argv[1:] if argv is None else argv)
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
