"""Command-line front end.

Exit codes: 0 success or verified, 1 verified-false or not isomorphic,
2 input error, 3 budget exceeded.  Reports are JSON; ``--output text`` renders
the same report as indented ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .braided.rewriting import DEFAULT_DEGREE_BUDGET
from .braided.verify import degree1_report, mainreverse_report, mainsystem1_check
from .datum import CartanDatum, random_braiding_datum
from .errors import BudgetExceededError, HopfisoError, InputError, InternalConsistencyError
from .iso import automorphism_group, hopf_isomorphisms, iso_classes
from .jsonio import (datum_to_json, dumps, group_algebra_to_json, load_bundle, mu_to_json)
from .params import (ParamFamily, check_conditions, coproduct_check, normalize, random_r2_family,
                     sigma_action, u_elements)
from .scalars import format_scalar

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 20240601
SUITES = ("mainreverse", "degree1", "mainsystem", "coproduct")


@dataclass
class CliResult:
    code: int
    report: dict
    text: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable {name} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default=None,
                        help="report format (env HOPFISO_OUTPUT, default json)")
    common.add_argument("--seed", type=int, default=None, help="random seed (env HOPFISO_SEED)")
    common.add_argument("--degree-budget", type=int, default=None,
                        help=f"rewrite degree budget (env HOPFISO_DEGREE_BUDGET, default {DEFAULT_DEGREE_BUDGET})")

    p = _Parser(prog="hopfiso", description="Exact computations for pointed Hopf algebras of type A_n.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in [("validate", "check a datum (and family, if present)"),
                        ("u", "emit the group-algebra elements u_ij"),
                        ("normalize", "emit the normalized family"),
                        ("sigma", "emit the diagram image of the family"),
                        ("aut", "automorphism group report"),
                        ("classify", "partition the families in 'mus' into isomorphism classes")]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file")

    sp = sub.add_parser("iso", parents=[common], help="isomorphisms u(a) -> u(b)")
    sp.add_argument("a")
    sp.add_argument("b")

    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--N", type=int, default=3)
    sp.add_argument("--mode", choices=("auto", "rewrite", "skew_oracle"), default="auto",
                    help="auto runs the skew oracle everywhere and rewriting where the budget allows")
    sp.add_argument("--datum", default=None, help="bundle file to use instead of a random datum")
    sp.add_argument("--samples", type=int, default=5, help="random families per parameter suite")
    return p


# -- commands --------------------------------------------------------------------

def _need_mu(mu: ParamFamily | None, path: str) -> ParamFamily:
    if mu is None:
        raise InputError(f"{path}: this command needs a 'mu' entry")
    return mu


def cmd_validate(args) -> tuple[int, dict]:
    d, mu, _ = load_bundle(args.file)
    k = d.q_exponent // (d.L // d.N)
    rep: dict[str, Any] = {
        "valid": True,
        "n": d.n,
        "N": d.N,
        "conductor": d.L,
        "group": list(d.group.factors),
        "q": format_scalar(d.q),
        "q_root": {"order": d.N, "exponent": k},
    }
    if mu is not None:
        rep["conditions"] = check_conditions(d, mu).as_dict()
    return EXIT_OK, rep


def cmd_u(args) -> tuple[int, dict]:
    d, mu, _ = load_bundle(args.file)
    u = u_elements(d, _need_mu(mu, args.file))
    return EXIT_OK, {"u": {f"{i},{j}": group_algebra_to_json(v) for (i, j), v in sorted(u.items())}}


def cmd_normalize(args) -> tuple[int, dict]:
    d, mu, _ = load_bundle(args.file)
    return EXIT_OK, {"datum": datum_to_json(d), "mu": mu_to_json(normalize(d, _need_mu(mu, args.file)))}


def cmd_sigma(args) -> tuple[int, dict]:
    d, mu, _ = load_bundle(args.file)
    s = sigma_action(d, _need_mu(mu, args.file))
    ds = d.twisted
    return EXIT_OK, {"datum": datum_to_json(ds), "mu": mu_to_json(s),
                     "mu_normalized": mu_to_json(normalize(ds, s))}


def cmd_iso(args) -> tuple[int, dict]:
    da, mua, _ = load_bundle(args.a)
    db, mub, _ = load_bundle(args.b)
    ws = hopf_isomorphisms(db, _need_mu(mub, args.b), da, _need_mu(mua, args.a))
    rep = {"isomorphic": bool(ws), "witnesses": [w.as_dict() for w in ws]}
    return (EXIT_OK if ws else EXIT_FALSE), rep


def cmd_aut(args) -> tuple[int, dict]:
    d, mu, _ = load_bundle(args.file)
    return EXIT_OK, automorphism_group(d, _need_mu(mu, args.file)).as_dict()


def cmd_classify(args) -> tuple[int, dict]:
    d, _, mus = load_bundle(args.file)
    if not mus:
        raise InputError(f"{args.file}: classify needs a non-empty 'mus' list")
    classes = iso_classes(d, mus)
    return EXIT_OK, {"classes": classes, "count": len(classes)}


def _verify_datum(args, rng: random.Random) -> tuple[CartanDatum, ParamFamily | None]:
    if args.datum:
        d, mu, _ = load_bundle(args.datum)
        return d, mu
    if args.n < 2:
        raise InputError("--n must be at least 2")
    if args.N < 3 or args.N % 2 == 0:
        raise InputError("--N must be odd and at least 3")
    return random_braiding_datum(rng, args.n, args.N), None


def cmd_verify(args, seed: int, budget: int) -> tuple[int, dict]:
    rng = random.Random(seed)
    d, mu = _verify_datum(args, rng)
    suites = SUITES if args.suite == "all" else (args.suite,)
    families = [mu] if mu is not None else []
    families += [random_r2_family(rng, d) for _ in range(args.samples)]
    out: dict[str, list] = {}
    for suite in suites:
        rows = []
        if suite == "mainreverse":
            for (i, j) in d.roots():
                if args.mode in ("auto", "skew_oracle"):
                    rows.append(mainreverse_report(d, i, j, "skew_oracle").as_dict())
                if args.mode == "rewrite" or (args.mode == "auto" and d.N * (j - i) <= budget):
                    rows.append(mainreverse_report(d, i, j, "rewrite", budget).as_dict())
        elif suite == "degree1":
            for (i, j) in d.roots():
                rows.append(degree1_report(d, i, j, budget).as_dict())
        elif suite == "mainsystem":
            for k, fam in enumerate(families):
                bad = [[i, j] for (i, j) in d.roots() if not mainsystem1_check(d, fam, i, j)]
                rows.append({"family": k, "mu": mu_to_json(fam), "ok": not bad, "failed_roots": bad})
        elif suite == "coproduct":
            for k, fam in enumerate(families):
                rows.append({"family": k, "mu": mu_to_json(fam), "ok": coproduct_check(d, u_elements(d, fam))})
        out[suite] = rows
    ok = all(r["ok"] for rows in out.values() for r in rows)
    rep = {"datum": datum_to_json(d), "seed": seed, "degree_budget": budget, "ok": ok, "suites": out}
    return (EXIT_OK if ok else EXIT_FALSE), rep


COMMANDS = {"validate": cmd_validate, "u": cmd_u, "normalize": cmd_normalize, "sigma": cmd_sigma,
            "iso": cmd_iso, "aut": cmd_aut, "classify": cmd_classify}


# -- rendering -------------------------------------------------------------------

def render_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return "\n".join(lines)


def _flat_list(v: Any) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat_list(x) for x in v)


def _error_report(exc: BaseException) -> dict:
    err = {"kind": type(exc).__name__, "message": str(exc)}
    violations = getattr(exc, "violations", None)
    if violations:
        err["violations"] = [{"i": i, "j": j, "message": m} for i, j, m in violations]
    return {"error": err}


def run(argv: Sequence[str] | None = None) -> CliResult:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = os.environ.get("HOPFISO_OUTPUT") or "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.output or fmt
        if fmt not in ("json", "text"):
            raise InputError(f"HOPFISO_OUTPUT must be json or text, got {fmt!r}")
        seed = args.seed if args.seed is not None else _env_int("HOPFISO_SEED")
        seed = DEFAULT_SEED if seed is None else seed
        if not 0 <= seed < 2 ** 64:
            raise InputError("seed must be an unsigned 64-bit integer")
        budget = args.degree_budget if args.degree_budget is not None else _env_int("HOPFISO_DEGREE_BUDGET")
        budget = DEFAULT_DEGREE_BUDGET if budget is None else budget
        if budget < 2:
            raise InputError("degree budget must be at least 2")
        if args.command == "verify":
            code, rep = cmd_verify(args, seed, budget)
        else:
            code, rep = COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        code, rep = EXIT_BUDGET, _error_report(exc)
    except InternalConsistencyError as exc:
        code, rep = EXIT_FALSE, _error_report(exc)
    except HopfisoError as exc:
        code, rep = EXIT_INPUT, _error_report(exc)
    except SystemExit as exc:  # --help
        return CliResult(int(exc.code or 0), {}, "")
    text = render_text(rep) if fmt == "text" else dumps(rep)
    return CliResult(code, rep, text)


def main(argv: Sequence[str] | None = None) -> int:
    res = run(argv)
    if "error" in res.report:
        print(f"hopfiso: error: {res.report['error']['message']}", file=sys.stderr)
    if res.text:
        print(res.text)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
