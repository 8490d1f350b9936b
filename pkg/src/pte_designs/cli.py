"""Command-line entry point: ``pte-designs <command> ...``.

Every command prints JSON on stdout.  Exit codes: 0 ok, 1 verification
invalid, 2 usage or input error.  ``search`` commands print one JSON line per
result followed by a summary line.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import families, search, transform
from .arith import format_rat, parse_rat
from .ellipse import DesignSet, first_nonvanishing, is_T_design, shell_design_degrees, shell_points
from .equivalence import are_equivalent, square_ratio_obstruction
from .pte import PteSolution, is_ideal, is_linear, is_symmetric, verify_pte

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def worker_cap() -> int:
    """Value of PTE_DESIGNS_THREADS (default 1).

    All work runs in a single thread, which satisfies any cap >= 1; the
    variable is still validated so a bad value is reported, not ignored.
    """
    raw = os.environ.get("PTE_DESIGNS_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap < 1:
        raise UsageError(f"PTE_DESIGNS_THREADS must be a positive integer, got {raw!r}")
    return cap


def _report(command: str, outcome: str, payload: Any = None, diagnostics: dict | None = None) -> dict:
    return {
        "command": command,
        "outcome": outcome,
        "payload": payload,
        "diagnostics": diagnostics or {},
    }


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _load(path: str, kind: Callable[[dict], Any]) -> Any:
    obj = _load_json(path)
    # accept this tool's own reports, so commands can be chained
    if isinstance(obj, dict) and "command" in obj and "payload" in obj:
        obj = obj["payload"]
    try:
        return kind(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid {kind.__self__.__name__} in {path}: {exc}") from exc


def _parse_point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"point must be 'x,y', got {text!r}")
    try:
        return parse_rat(parts[0]), parse_rat(parts[1])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _rat_arg(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _solution_report(command: str, s: PteSolution) -> tuple[dict, int]:
    rep = verify_pte(s)
    diagnostics = rep.to_json()
    diagnostics["symmetric"] = is_symmetric(s)
    diagnostics["ideal"] = is_ideal(s)
    if s.size <= 8 and all(not hasattr(c, "disc") for v in s.left + s.right for c in v):
        diagnostics["linear"] = is_linear(s)[0]
    outcome = "ok" if rep.valid else "invalid"
    return _report(command, outcome, s.to_json(), diagnostics), EXIT_OK if rep.valid else EXIT_INVALID


def _design_report(command: str, X: DesignSet, degree: int) -> tuple[dict, int]:
    k = first_nonvanishing(X, degree)
    diagnostics = {"degree": degree, "size": len(X), "first_failing_k": k}
    if k is None:
        return _report(command, "ok", X.to_json(), diagnostics), EXIT_OK
    return _report(command, "invalid", X.to_json(), diagnostics), EXIT_INVALID


def cmd_verify(args) -> tuple[dict, int]:
    if args.kind == "design":
        if args.degree is None or args.degree < 1:
            raise UsageError("verify design needs --degree >= 1")
        X = _load(args.file, DesignSet.from_json)
        if args.T_shell:
            ok = is_T_design(X, shell_design_degrees(X.D), args.degree)
            diag = {"max_degree": args.degree, "T": f"shell degrees for D={X.D}"}
            return _report("verify design", "ok" if ok else "invalid", X.to_json(), diag), (
                EXIT_OK if ok else EXIT_INVALID
            )
        return _design_report("verify design", X, args.degree)
    s = _load(args.file, PteSolution.from_json)
    if args.degree is not None:
        s = s.with_degree(args.degree)
    return _solution_report("verify pte", s)


def _family_call(name: str, params: dict[str, Fraction]):
    fn, names = families.FAMILIES[name]
    missing = [n for n in names if n not in params]
    extra = [n for n in params if n not in names]
    if missing or extra:
        raise UsageError(f"family {name} takes parameters {', '.join(names)}")
    return fn(*(params[n] for n in names))


def cmd_gen(args) -> tuple[dict, int]:
    params: dict[str, Fraction] = {}
    for item in args.param or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects name=value, got {item!r}")
        try:
            params[name] = parse_rat(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if args.samples:
        rng = random.Random(args.seed)
        _, names = families.FAMILIES[args.family]
        rows = []
        worst = EXIT_OK
        for _ in range(args.samples):
            sample = {n: Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for n in names}
            obj = _family_call(args.family, sample)
            if isinstance(obj, DesignSet):
                rep, code = _design_report("gen", obj, 5)
            else:
                rep, code = _solution_report("gen", obj)
            worst = max(worst, code)
            rows.append({"params": {k: format_rat(v) for k, v in sample.items()}, **rep["diagnostics"]})
        return _report(f"gen {args.family}", "ok" if worst == EXIT_OK else "invalid", rows, {"seed": args.seed}), worst
    obj = _family_call(args.family, params)
    if isinstance(obj, DesignSet):
        rep, code = _design_report(f"gen {args.family}", obj, 5)
    else:
        rep, code = _solution_report(f"gen {args.family}", obj)
    return rep, code


def cmd_equiv(args) -> tuple[dict, int]:
    s1 = _load(args.left, PteSolution.from_json)
    s2 = _load(args.right, PteSolution.from_json)
    payload: dict[str, Any] = {}
    obstruction = None
    if s1.dimension == 1 and is_symmetric(s1) and is_symmetric(s2):
        obstruction = square_ratio_obstruction(s1, s2).to_json()
    payload["obstruction"] = obstruction
    if args.obstruction_only:
        if obstruction is None:
            raise UsageError("obstruction needs symmetric one-dimensional solutions")
        return _report("equiv", "ok", payload), EXIT_OK
    try:
        rep = are_equivalent(s1, s2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload["contained_lr"] = rep.contained_lr is not None
    payload["contained_rl"] = rep.contained_rl is not None
    payload["maps"] = {
        "lr": rep.contained_lr.to_json() if rep.contained_lr else None,
        "rl": rep.contained_rl.to_json() if rep.contained_rl else None,
    }
    payload["equivalent"] = rep.equivalent
    return _report("equiv", "ok", payload, {"maps_searched": "invertible only"}), EXIT_OK


def cmd_search(args, out) -> int:
    try:
        if args.kind == "pte":
            spec = search.SearchSpec(args.dim, args.degree, args.size, args.bound, args.dedup)
            res = search.search_pte(spec, budget=args.budget)
            for s in res.solutions:
                out.write(json.dumps(s.to_json()) + "\n")
            summary = {"summary": True, "count": len(res.solutions), "states": res.states}
        else:
            pool = (
                _load(args.pool, DesignSet.from_json)
                if args.pool
                else shell_points(args.D, args.norm)
            )
            if pool is None:
                raise UsageError(f"shell D={args.D}, r={format_rat(args.norm)} is empty")
            res = search.stroud_witness(args.D, args.norm, args.degree, pool, budget=args.budget)
            if res.witness is not None:
                out.write(json.dumps(res.witness.to_json()) + "\n")
            summary = {
                "summary": True,
                "count": 0 if res.witness is None else 1,
                "states": res.subsets_scanned,
            }
    except search.BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out.write(json.dumps(summary) + "\n")
    return EXIT_OK


def cmd_shell(args) -> tuple[dict, int]:
    X = shell_points(args.D, args.norm)
    if X is None:
        return _report("shell", "ok", None, {"size": 0}), EXIT_OK
    return _report("shell", "ok", X.to_json(), {"size": len(X)}), EXIT_OK


def cmd_orbit(args) -> tuple[dict, int]:
    try:
        gen = (
            transform.tight_generator_matrix(args.D)
            if args.t is None
            else transform.rational_rotation(args.D, args.t)
        )
        X = transform.orbit_design(args.D, _parse_point(args.point), gen)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    degree = len(X) - 1
    diag = {"order": len(X), "generator": gen.to_json(), "design_degree": degree}
    return _report("orbit", "ok", X.to_json(), diag), EXIT_OK


def cmd_rotate(args) -> tuple[dict, int]:
    X = _load(args.file, DesignSet.from_json)
    try:
        rot = transform.rational_rotation(args.D, args.t)
        Y = transform.apply(rot, X)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _report("rotate", "ok", Y.to_json(), {"rotation": rot.to_json()}), EXIT_OK


def cmd_lift(args) -> tuple[dict, int]:
    s = _load(args.file, PteSolution.from_json)
    try:
        lifted = transform.cyclic_lift(s)
    except transform.TransformError as exc:
        return _report("lift", "invalid", None, {"error": str(exc)}), EXIT_INVALID
    return _solution_report("lift", lifted)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pte-designs", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for sampled parameters")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify a design or PTE solution file")
    v.add_argument("kind", choices=["design", "pte"])
    v.add_argument("--file", required=True)
    v.add_argument("--degree", type=int)
    v.add_argument("--T-shell", action="store_true", help="check only shell degrees T_D")

    g = sub.add_parser("gen", help="generate a parametric family member")
    g.add_argument("family", choices=sorted(families.FAMILIES))
    g.add_argument("--param", action="append", metavar="NAME=VALUE")
    g.add_argument("--samples", type=int, default=0, help="verify N seeded random parameter sets")

    e = sub.add_parser("equiv", help="affine containment between two solutions")
    e.add_argument("--left", required=True)
    e.add_argument("--right", required=True)
    e.add_argument("--obstruction-only", action="store_true")

    s = sub.add_parser("search", help="exhaustive small-box searches")
    ssub = s.add_subparsers(dest="kind", required=True)
    sp = ssub.add_parser("pte")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--dedup", choices=["none", "canonical", "affine-classes"], default="canonical")
    sp.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)
    st = ssub.add_parser("stroud")
    st.add_argument("--D", type=int, required=True)
    st.add_argument("--norm", type=_rat_arg, required=True)
    st.add_argument("--degree", type=int, required=True)
    st.add_argument("--pool", help="design JSON; defaults to the integer shell")
    st.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)

    sh = sub.add_parser("shell", help="integer points of C_D(r)")
    sh.add_argument("--D", type=int, required=True)
    sh.add_argument("--norm", type=_rat_arg, required=True)

    o = sub.add_parser("orbit", help="orbit of a point under a finite-order rotation")
    o.add_argument("--D", type=int, required=True)
    o.add_argument("--point", required=True)
    o.add_argument("--t", type=_rat_arg, help="use rational_rotation(D, t) instead of the tight generator")

    r = sub.add_parser("rotate", help="apply rational_rotation(D, t) to a design")
    r.add_argument("--D", type=int, required=True)
    r.add_argument("--t", type=_rat_arg, required=True)
    r.add_argument("--file", required=True)

    lf = sub.add_parser("lift", help="cyclic lift of a 1D sextuple solution")
    lf.add_argument("--file", required=True)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {
        "verify": cmd_verify,
        "gen": cmd_gen,
        "equiv": cmd_equiv,
        "shell": cmd_shell,
        "orbit": cmd_orbit,
        "rotate": cmd_rotate,
        "lift": cmd_lift,
    }
    try:
        worker_cap()
        if args.command == "search":
            return cmd_search(args, out)
        report, code = handlers[args.command](args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        out.write(json.dumps(_report(args.command, "error", None, {"error": str(exc)})) + "\n")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except families.FamilyError as exc:
        out.write(json.dumps(_report(args.command, "invalid", None, {"error": str(exc)})) + "\n")
        return EXIT_INVALID
    out.write(json.dumps(report, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
