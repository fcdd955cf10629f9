"""Command-line front end.

Every subcommand prints one JSON document (or an aligned table with
``--format table``).  Exit status: 0 when all requested checks pass,
1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import daha_ops as D
from . import macdonald as Mac
from . import roots_of_unity as U
from . import weyl as W
from .coeffs import Coefficient
from .rootsys import RootSystem, RootSystemError, build_root_system, parse_type, small_weights

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------ helpers


def _system(args) -> RootSystem:
    try:
        if args.rank is None:
            return parse_type(args.type)
        return build_root_system(args.type, args.rank)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from exc


def _cs(rs: RootSystem, c: Coefficient) -> str:
    return c.to_string(rs.m)


def _vec(v) -> List:
    return [int(x) if int(x) == x else str(x) for x in v]


def grid(rs: RootSystem, radius: int) -> List[tuple]:
    """``|b| <= radius`` in rank one, coordinates bounded by ``radius`` otherwise."""
    return small_weights(rs, radius)


def antidominant_grid(rs: RootSystem, radius: int) -> List[tuple]:
    return [b for b in grid(rs, radius) if rs.antidominant(b)]


def _k_values(args) -> List[int]:
    return list(args.k) if args.k else [1, 2]


def _report(name: str, rs: RootSystem, cases: List[dict]) -> dict:
    return {
        "check": name,
        "system": rs.name,
        "cases": cases,
        "passed": sum(1 for c in cases if c["ok"]),
        "total": len(cases),
        "ok": all(c["ok"] for c in cases),
    }


# ------------------------------------------------------------ commands


def cmd_rootsys_show(args) -> dict:
    rs = _system(args)
    return {
        "system": rs.name,
        "rank": rs.rank,
        "cartan": rs.cartan,
        "positive_roots": [list(a) for a in rs.positive_roots],
        "root_lengths": [str(rs.root_length(a)) for a in rs.positive_roots],
        "theta": list(rs.theta),
        "m": rs.m,
        "minuscule": list(rs.O_star),
        "weyl_order": len(rs.weyl_group),
        "ok": True,
    }


def _weight(args, rs: RootSystem) -> tuple:
    if args.weight is None or len(args.weight) != rs.rank:
        raise UsageError(f"--weight needs {rs.rank} integers")
    return tuple(args.weight)


def cmd_weyl_word(args) -> dict:
    rs = _system(args)
    b = _weight(args, rs)
    pib, om = W.decompose_pi_omega(rs, b)
    r, word = W.reduced_word(rs, pib)
    return {
        "system": rs.name,
        "weight": list(b),
        "pi": r,
        "word": word,
        "length": len(word),
        "antidominant": list(W.to_antidominant(rs, b)[1]),
        "omega_word": W.finite_reduced_word(rs, om),
        "ok": True,
    }


def cmd_weyl_sigma(args) -> dict:
    rs = _system(args)
    b = _weight(args, rs)
    sigma, star, plus = W.sigma_sets(rs, b)
    return {
        "system": rs.name,
        "weight": list(b),
        "sigma": [list(c) for c in sigma],
        "sigma_star": [list(c) for c in star],
        "sigma_plus": [list(c) for c in plus],
        "ok": True,
    }


def cmd_epoly_compute(args) -> dict:
    rs = _system(args)
    b = _weight(args, rs)
    ep = Mac.compute_e(rs, b)
    poly = ep.normalized() if args.normalized else ep.poly
    return {
        "system": rs.name,
        "weight": list(b),
        "normalized": bool(args.normalized),
        "value_at_t_minus_rho": _cs(rs, ep.eval_at_rho),
        "eigenvalues": [_cs(rs, Mac.eigenvalue(rs, D._unit(rs, i), b)) for i in range(rs.rank)],
        "polynomial": poly.to_json(rs.m),
        "ok": Mac.is_eigenvector(rs, ep),
    }


def verify_relations(rs: RootSystem, seed: int = 0, samples: int = 50) -> dict:
    rep = D.relation_suite(rs, seed=seed, samples=samples)
    return _report("relations", rs, [{"relation": k, "ok": v} for k, v in sorted(rep.items())])


def verify_duality(rs: RootSystem, radius: int) -> dict:
    ws = grid(rs, radius)
    cases = []
    for i, b in enumerate(ws):
        for c in ws[i + 1:]:
            cases.append({"b": list(b), "c": list(c), "ok": Mac.duality_check(rs, b, c)})
    return _report("duality", rs, cases)


def verify_evaluation(rs: RootSystem, radius: int) -> dict:
    cases = []
    for b in grid(rs, radius):
        ok = Mac.eval_formula(rs, b) == Mac.compute_e(rs, b).eval_at_rho
        cases.append({"b": list(b), "ok": ok})
    return _report("evaluation", rs, cases)


def verify_norms(rs: RootSystem, radius: int, ks: Sequence[int]) -> dict:
    cases = []
    for k in ks:
        for b in grid(rs, radius):
            closed = Mac.specialize_t(rs, Mac.norm_formula(rs, b), k)
            ok = closed == Mac.norm_via_pairing(rs, b, k)
            cases.append({"b": list(b), "k": k, "value": _cs(rs, closed), "ok": ok})
    return _report("norms", rs, cases)


def verify_consterm(rs: RootSystem, ks: Sequence[int]) -> dict:
    cases = []
    for k in ks:
        mu = Mac.mu_data(rs, k)
        cases.append({"k": k, "constant_term": _cs(rs, mu.ct), "ok": Mac.constant_term_check(rs, k)})
    return _report("consterm", rs, cases)


def verify_pieri(rs: RootSystem, radius: int) -> dict:
    cases = []
    a = D._unit(rs, 0)
    for b in grid(rs, radius):
        for direction in (1, -1):
            exp = Mac.pieri_expand(rs, a, b, direction)
            ok = Mac.pieri_index_check(rs, a, b, direction)
            if rs.rank == 1:
                ok = ok and dict(exp.terms) == Mac.pieri_from_operator(rs, a, b, direction)
            cases.append({
                "b": list(b),
                "direction": direction,
                "support": [list(c) for c, _ in exp.terms],
                "ok": ok,
            })
    return _report("pieri", rs, cases)


def verify_symmetric(rs: RootSystem, radius: int, k: int = 1) -> dict:
    cases = []
    for bm in antidominant_grid(rs, radius):
        for sign in (1, -1):
            eps = Mac.default_signs(rs, bm, sign)
            try:
                eps.check(rs, bm)
            except D.SignSetError:
                continue
            item = {"b": list(bm), "eps": sign}
            item["phie"] = all(Mac.phie_check(rs, b, eps) for b in W.orbit(rs, bm))
            p = Mac.symmetric_p(rs, bm, eps)
            item["products"] = p == Mac.symmetric_from_products(rs, bm, eps)
            item["eps_t_symmetric"] = D.is_eps_t_symmetric(rs, eps, p)
            if sign == 1:
                item["invariant"] = Mac.is_W_invariant(rs, p)
                item["orthogonal"] = Mac.macdsym_orthogonality(rs, bm, p, k)
                item["Lf"] = Mac.Lf_check(rs, bm, p)
            item["ok"] = all(v for key, v in item.items() if isinstance(v, bool))
            cases.append(item)
    return _report("symmetric", rs, cases)


def verify_shift(rs: RootSystem, weights: Iterable[int]) -> dict:
    cases = []
    for j in weights:
        bm = (j,)
        try:
            bp, const = Mac.shift_check(rs, bm)
            cases.append({"b": list(bm), "shifted": list(bp), "constant": _cs(rs, const), "ok": True})
        except (Mac.ShiftCheckError, D.SignSetError) as exc:
            cases.append({"b": list(bm), "error": str(exc), "ok": False})
    return _report("shift", rs, cases)


def cmd_verify(args) -> dict:
    rs = _system(args)
    what = args.what
    if what == "relations":
        return verify_relations(rs, args.seed, args.samples)
    if what == "duality":
        return verify_duality(rs, args.range)
    if what == "evaluation":
        return verify_evaluation(rs, args.range)
    if what == "norms":
        return verify_norms(rs, args.range, _k_values(args))
    if what == "consterm":
        return verify_consterm(rs, _k_values(args))
    if what == "pieri":
        return verify_pieri(rs, args.range)
    if what == "symmetric":
        return verify_symmetric(rs, args.range)
    if what == "shift":
        if rs.rank != 1:
            raise UsageError("verify shift is implemented in rank one")
        return verify_shift(rs, [-j for j in range(1, args.range + 1)])
    raise UsageError(f"unknown check {what}")


def _unity_context(args):
    rs = _system(args)
    k = args.k[0] if args.k else None
    return U.build_context(rs, args.N, k)


def cmd_unity_build(args) -> dict:
    ctx = _unity_context(args)
    mod = U.build_tilde_module(ctx) if ctx.k is not None else U.build_module(ctx)
    out = {
        "system": ctx.rs.name,
        "N": ctx.N,
        "k": None if ctx.k is None else {str(n): v for n, v in ctx.k.items()},
        "root_of_unity_order": ctx.M,
        "K_N": [list(a) for a in ctx.K_N],
        "B_N_size": len(ctx.B_N),
        "labels": [_vec(b) for b in mod.labels],
        "dimension": mod.dim,
    }
    checks: Dict[str, bool] = {}
    if ctx.k is None:
        checks["Pi symmetric"] = U.is_symmetric(mod.Pi)
        checks["Pi invertible"] = U.is_invertible(mod.Pi, ctx.field, symbolic=True)
        checks["Y diagonal on eps"] = U.eps_eigen_check(mod)
        checks.update(U.matrix_relations(mod))
    else:
        checks.update(U.pairing_checks(mod))
    checks["irreducible"] = U.irreducibility_witness(mod) == mod.dim
    out["checks"] = checks
    if args.matrices:
        out["matrices"] = {
            **{f"T{j}": U.matrix_to_json(m) for j, m in mod.T.items()},
            **{f"X{i + 1}": U.matrix_to_json(m) for i, m in mod.X.items()},
            **{f"Y{i + 1}": U.matrix_to_json(m) for i, m in mod.Y.items()},
            **{f"pi{r}": U.matrix_to_json(m) for r, m in mod.pi.items() if r},
            "Pi": U.matrix_to_json(mod.Pi),
        }
    out["ok"] = all(checks.values())
    return out


def cmd_unity_sl2check(args) -> dict:
    ctx = _unity_context(args)
    mod = U.build_tilde_module(ctx) if ctx.k is not None else U.build_module(ctx)
    rep = U.gaussian_and_sl2(mod)
    out = {
        "system": ctx.rs.name,
        "N": ctx.N,
        "k": None if ctx.k is None else {str(n): v for n, v in ctx.k.items()},
        "dimension": mod.dim,
        "checks": rep.checks,
        "block_scalars": [{"central_character": c, "scalar": s} for c, s in rep.block_scalars],
    }
    if args.matrices:
        out["matrices"] = {
            "T_plus": U.matrix_to_json(rep.T_plus),
            "T_minus": U.matrix_to_json(rep.T_minus),
            "Omega": U.matrix_to_json(rep.Omega),
        }
    out["ok"] = all(rep.checks.values())
    return out


# ------------------------------------------------------------ parser


def _add_system(p: argparse.ArgumentParser):
    p.add_argument("--type", required=True, help="family letter, or a full type such as A2")
    p.add_argument("--rank", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; explicit flags take precedence")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "table"), default="json")
    parser = argparse.ArgumentParser(prog="daha", description="DAHA basic representation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rootsys", parents=[common])
    p.add_argument("action", choices=("show",))
    _add_system(p)

    p = sub.add_parser("weyl", parents=[common])
    p.add_argument("action", choices=("word", "sigma"))
    _add_system(p)
    p.add_argument("--weight", type=int, nargs="+")

    p = sub.add_parser("epoly", parents=[common])
    p.add_argument("action", choices=("compute",))
    _add_system(p)
    p.add_argument("--weight", type=int, nargs="+")
    p.add_argument("--normalized", action="store_true")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument(
        "what",
        choices=("relations", "duality", "evaluation", "norms", "pieri", "symmetric", "shift", "consterm"),
    )
    _add_system(p)
    p.add_argument("--range", type=int, default=1)
    p.add_argument("--k", type=int, nargs="+")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)

    p = sub.add_parser("unity", parents=[common])
    p.add_argument("action", choices=("build", "sl2check"))
    _add_system(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, nargs="+", help="t = q^k (omit for symbolic t)")
    p.add_argument("--matrices", action="store_true", help="include the matrices in the output")
    return parser


_DISPATCH: Dict[tuple, Callable] = {
    ("rootsys", "show"): cmd_rootsys_show,
    ("weyl", "word"): cmd_weyl_word,
    ("weyl", "sigma"): cmd_weyl_sigma,
    ("epoly", "compute"): cmd_epoly_compute,
    ("unity", "build"): cmd_unity_build,
    ("unity", "sl2check"): cmd_unity_sl2check,
}


def _read_config(path: str) -> Dict[str, str]:
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[daha]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return dict(cp["daha"])


def _with_config(argv: List[str]) -> List[str]:
    """Append ``key = value`` lines from ``--config`` to ``argv`` as flags;
    flags given explicitly win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a path")
    extra: List[str] = []
    for key, value in _read_config(argv[i + 1]).items():
        flag = "--N" if key.lower() == "n" else "--" + key.replace("_", "-")
        if flag in argv:
            continue
        extra.append(flag)
        extra.extend(value.split())
    # the config path must follow the subcommand so its parser sees it
    path = argv[i : i + 2]
    rest = argv[:i] + argv[i + 2:]
    cmd = next((j for j, tok in enumerate(rest) if not tok.startswith("-")), None)
    if cmd is None:
        raise UsageError("missing subcommand")
    return rest[: cmd + 1] + path + rest[cmd + 1:] + extra


def _table(doc: dict) -> str:
    rows = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict):
            for k2 in sorted(val):
                rows.append((f"{key}.{k2}", json.dumps(val[k2], ensure_ascii=False, sort_keys=True)))
        elif key == "cases":
            for c in val:
                label = ",".join(f"{k}={c[k]}" for k in sorted(c) if k != "ok")
                rows.append(("pass" if c["ok"] else "FAIL", label))
        else:
            rows.append((key, json.dumps(val, ensure_ascii=False, sort_keys=True)))
    width = max((len(r[0]) for r in rows), default=0)
    return "\n".join(f"{a.ljust(width)}  {b}" for a, b in rows)


def render(doc: dict, fmt: str) -> str:
    if fmt == "table":
        return _table(doc) + "\n"
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_with_config(argv))
    except UsageError as exc:
        print(f"daha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            doc = cmd_verify(args)
        else:
            doc = _DISPATCH[(args.command, args.action)](args)
    except (UsageError, U.AdmissibilityError, D.SignSetError) as exc:
        print(f"daha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    text = render(doc, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if doc.get("ok") else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
