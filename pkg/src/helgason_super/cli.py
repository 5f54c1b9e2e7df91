"""Command-line front end.

Every subcommand prints one report, either as aligned text or as JSON
(``--format json``).  JSON reports carry ``"schema": 1``; exact scalars are
strings such as ``"-1/2"`` or ``"1/2+3/4*i"`` and floating values are strings
with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .chains import (
    ChainError,
    DeltaEpsChain,
    apply_chain,
    compatible_chain,
    even_only_action,
    is_palindrome,
    reversal_chain,
    simple_system,
)
from .cfunction import c_evaluate, zeros_predicate
from .core import GaussianRational, format_gaussian, format_rational, parse_rational
from .pair import InvalidPairParams, PairParams, build_pair
from .roots import (
    full_root_table,
    oracle_verify_roots,
    positive_restricted_system,
    positivity_axioms,
    restrict_weight,
    restricted_root_data,
    rho_flip_records,
    weyl_vector,
    weyl_vector_supertrace,
)
from .sphericity import classify, enumerate_spherical, self_dual_check
from .weights import AStarWeight, HWeight

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 64
COMMANDS = ("pair", "roots", "rho", "cfunction", "spherical", "selfdual", "chain", "verify")
THREADS_ENV = "HELGASON_SUPER_THREADS"

_WEIGHT_HELP = (
    "weight in Helgason coordinates: the q delta-coefficients followed by the "
    "s epsilon-coefficients; rationals 'a/b' and Gaussian rationals 'a/b+c/d*i' "
    "are accepted"
)

_EPILOG = """\
weights:
  A weight lambda in a* is given by its coefficients on d_k - d_{p+k} (k <= q)
  and on e_l - e_{r+l} (l <= s).  Example on (1,1|1,1):

      helgason-super selfdual 1 1 1 1 --weight -2 0

  is lambda = -2 (d1 - d2), whose pairing with 2i*aB1 is 4.
"""


class UsageError(Exception):
    """Invalid user input; reported with exit code 2."""


# ---------------------------------------------------------------- rendering

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, GaussianRational):
        return format_gaussian(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return {"re": _fmt_float(obj.real), "im": _fmt_float(obj.imag)}
    if isinstance(obj, AStarWeight):
        return obj.coords_str()
    if isinstance(obj, (HWeight, DeltaEpsChain)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_json(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"


def _cell(v) -> str:
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return f"{v['re']}{'' if v['im'].startswith('-') else '+'}{v['im']}i"
    if isinstance(v, list):
        return ",".join(_cell(x) for x in v) if v else "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _table(rows: List[dict]) -> List[str]:
    cols: List[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    line = lambda vals: "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()
    return [line(cols), line(["-" * w for w in widths])] + [line(r) for r in cells]


def render_text(report: dict) -> str:
    data = to_jsonable(report)
    out: List[str] = []
    tables = []
    for k in sorted(data):
        v = data[k]
        if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            tables.append((k, v))
        elif isinstance(v, dict) and not set(v) == {"re", "im"}:
            out.append(f"{k}:")
            out += [f"  {kk}: {_cell(vv)}" for kk, vv in sorted(v.items())]
        else:
            out.append(f"{k}: {_cell(v)}")
    for k, rows in tables:
        out += ["", f"[{k}]"] + _table(rows)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- parsing

_NUM_TOKEN = re.compile(r"^[+-]?[\d/.+\-*i]+$")


def _merge_weight_tokens(argv: Sequence[str]) -> List[str]:
    """Turn ``--weight -1/2 0`` into ``--weight=-1/2,0`` so argparse does not
    read negative fractions as options."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--weight":
            vals = []
            i += 1
            while i < len(argv) and _NUM_TOKEN.match(argv[i]) and re.search(r"\d", argv[i]):
                vals.append(argv[i])
                i += 1
            out.append("--weight=" + ",".join(vals))
            continue
        out.append(tok)
        i += 1
    return out


def _parse_weight_list(text: str) -> List[object]:
    if not text:
        raise UsageError("--weight needs at least one coefficient")
    try:
        return [parse_rational(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed weight coefficient: {exc}") from None


def _params(ns) -> PairParams:
    if ns.params is None or len(ns.params) != 4:
        raise UsageError("expected four parameters p q r s")
    try:
        vals = [int(x) for x in ns.params]
    except ValueError:
        raise UsageError(f"parameters must be integers, got {' '.join(ns.params)}") from None
    try:
        return PairParams(*vals)
    except InvalidPairParams as exc:
        raise UsageError(f"invalid pair parameters: {exc}") from None


def _weight(ns, params: PairParams, required: bool = True) -> Optional[AStarWeight]:
    if ns.weight is None:
        if required:
            raise UsageError("--weight is required for this subcommand")
        return None
    coeffs = _parse_weight_list(ns.weight)
    want = params.q + params.s
    if len(coeffs) != want:
        raise UsageError(f"weight must have q + s = {want} coefficients, got {len(coeffs)}")
    return AStarWeight(coeffs[: params.q], coeffs[params.q:])


def _workers(ns) -> int:
    cap = os.environ.get(THREADS_ENV)
    try:
        cap_n = int(cap) if cap else None
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    n = ns.workers if ns.workers is not None else (cap_n or 1)
    if cap_n is not None:
        n = min(n, cap_n)
    if n < 1:
        raise UsageError("worker count must be at least 1")
    return n


def _pmap(fn: Callable, items: Sequence, workers: int) -> list:
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _header(cmd: str, params: Optional[PairParams]) -> dict:
    rep = {"schema": SCHEMA, "command": cmd}
    if params is not None:
        rep["params"] = {"p": params.p, "q": params.q, "r": params.r, "s": params.s}
    return rep


# ---------------------------------------------------------------- commands

def cmd_pair(ns) -> tuple:
    params = _params(ns)
    pair = build_pair(params)
    d = params.dims
    sig = [pair.sigma[i, i] for i in range(params.n)]
    dim_k = sum(1 for i in range(params.n) for j in range(params.n) if sig[i] == sig[j])
    rep = _header("pair", params)
    rep.update({
        "dims": {"even": d.even_dim, "odd": d.odd_dim},
        "sigma": sig,
        "h_basis": list(pair.h_labels),
        "a_basis": list(pair.a_labels),
        "dim_g": params.n ** 2,
        "dim_k": dim_k,
        "dim_p": params.n ** 2 - dim_k,
    })
    return rep, EXIT_OK


def _restricted_row(d) -> dict:
    return {
        "root": d.name, "coords": d.root, "even_dim": d.even_dim, "odd_dim": d.odd_dim,
        "m": d.m, "m_double": d.m_double, "norm": d.norm,
        "isotropic": d.isotropic, "indivisible": d.indivisible,
    }


def cmd_roots(ns) -> tuple:
    params = _params(ns)
    pair = build_pair(params)
    rep = _header("roots", params)
    if ns.restricted:
        data = positive_restricted_system(pair) if ns.positive else restricted_root_data(pair)
        rep["restricted_roots"] = [_restricted_row(d) for d in data]
        rep["count"] = len(data)
        return rep, EXIT_OK
    rows = []
    for d in full_root_table(pair):
        rows.append({
            "root": d.name, "weight": d.root, "parity": "odd" if d.parity else "even",
            "table": d.table_tag, "restriction": restrict_weight(d.root, params).coords_str(),
            "vector": [f"{i + 1},{j + 1}:{format_gaussian(v) if isinstance(v, GaussianRational) else format_rational(v)}"
                       for (i, j), v in d.root_vector.nonzero_items()],
        })
    rep["roots"] = rows
    rep["count"] = len(rows)
    return rep, EXIT_OK


def cmd_rho(ns) -> tuple:
    params = _params(ns)
    pair = build_pair(params)
    sp = positive_restricted_system(pair)
    rho = weyl_vector(sp, shape=(params.q, params.s))
    rho_st = weyl_vector_supertrace(pair)
    rep = _header("rho", params)
    pairings = {}
    for k in range(1, params.q + 1):
        pairings[f"i*aB{k}"] = rho.pair(AStarWeight.i_aB(params.q, params.s, k))
    for l in range(1, params.s + 1):
        pairings[f"i*aF{l}"] = rho.pair(AStarWeight.i_aF(params.q, params.s, l))
    rep.update({"rho": rho, "rho_supertrace": rho_st, "agree": rho == rho_st, "pairings": pairings})
    return rep, EXIT_OK


def cmd_cfunction(ns) -> tuple:
    params = _params(ns)
    lam = _weight(ns, params)
    sp = positive_restricted_system(build_pair(params))
    rho = weyl_vector(sp, shape=(params.q, params.s))
    point = lam + rho if ns.shift_rho else lam
    cv = c_evaluate(sp, point)
    zr = zeros_predicate(sp, lam)
    rep = _header("cfunction", params)
    rep.update({
        "weight": lam,
        "evaluated_at": point,
        "shift_rho": ns.shift_rho,
        "value": cv.value,
        "zero": cv.zero_flag,
        "pole": cv.pole_flag,
        "zero_order": cv.zero_order,
        "pole_order": cv.pole_order,
        "notes": list(cv.notes),
        "zero_criterion": zr.value,
        "zero_criterion_witnesses": [f"{n} (clause {c})" for n, c in zr.witnesses],
        "factors": [
            {
                "root": f.factor.name, "kind": f.factor.kind, "m": f.factor.m,
                "m_double": f.factor.m_double, "argument": f.argument, "status": f.status,
                "zero_order": f.zero_order, "pole_order": f.pole_order,
                "value": f.value if f.value is not None else "undefined",
            }
            for f in cv.per_factor
        ],
    })
    return rep, EXIT_OK


def _report_row(rep) -> dict:
    return {
        "weight": rep.lam,
        "even_lambda_alpha": rep.cond_even_lambda_alpha,
        "gl_pairing": rep.cond_gl_pairing,
        "gl_dominance": rep.gl_dominance,
        "high_enough": rep.high_enough,
        "c_nonzero": rep.c_nonzero_at_shift,
        "self_dual": rep.self_dual,
    }


def cmd_spherical(ns) -> tuple:
    params = _params(ns)
    if ns.bound < 0:
        raise UsageError("--bound must be nonnegative")
    if ns.bound % 2:
        raise UsageError("--bound must be an even integer")
    lams = enumerate_spherical(params, ns.bound)
    reports = _pmap(lambda lam: classify(params, lam), lams, _workers(ns))
    rep = _header("spherical", params)
    rep["bound"] = ns.bound
    rep["count"] = len(lams)
    rep["weights"] = [_report_row(r) for r in reports]
    first = reports[0].witnesses if reports else {}
    rep["atypical"] = reports[0].atypical if reports else False
    if "atypical_witness" in first:
        rep["atypical_witness"] = first["atypical_witness"]
    if "negative_norm_odd_anisotropic" in first:
        rep["negative_norm_odd_anisotropic"] = first["negative_norm_odd_anisotropic"]
    return rep, EXIT_OK


def cmd_selfdual(ns) -> tuple:
    params = _params(ns)
    lam = _weight(ns, params)
    rep = _header("selfdual", params)
    rep["weight"] = lam
    rep["self_dual"] = self_dual_check(params, lam)
    return rep, EXIT_OK


def cmd_chain(ns) -> tuple:
    params = _params(ns) if ns.params else None
    if ns.chain:
        try:
            chain = DeltaEpsChain.parse(ns.chain)
        except ChainError as exc:
            raise UsageError(str(exc)) from None
        if len(chain) < 2:
            raise UsageError("a chain needs at least two symbols")
    elif params is not None:
        chain = compatible_chain(params)
    else:
        raise UsageError("give p q r s or --chain")
    shape = (params.p + params.q, params.r + params.s) if params else chain.shape
    if shape[0] < chain.shape[0] or shape[1] < chain.shape[1]:
        raise UsageError(f"chain {chain} does not fit h* of {params}")
    rc = reversal_chain(chain)
    rep = _header("chain", params)
    rep.update({
        "chain": chain,
        "kinds": chain.kinds,
        "palindrome": is_palindrome(chain),
        "simple_system": [str(a) for a in simple_system(chain, shape)],
        "reversal": [{"step": i + 1, "reflection": str(st), "parity": st.parity}
                     for i, st in enumerate(rc.steps)],
        "n_odd": rc.n_odd,
        "n_even": rc.n_even,
        "target": rc.target(),
    })
    if ns.weight is not None:
        if params is None:
            raise UsageError("--weight needs p q r s")
        lam = _weight(ns, params)
        w = lam.embed(params)
        rep["weight"] = w
        rep["reversal_action"] = apply_chain(w, rc)
        rep["even_only_action"] = even_only_action(w, rc)
    return rep, EXIT_OK


def _suite(name: str, ok: bool, detail: str) -> dict:
    return {"suite": name, "ok": ok, "detail": detail}


def cmd_verify(ns) -> tuple:
    params = _params(ns)
    pair = build_pair(params)
    workers = _workers(ns)
    suites = []

    orc = oracle_verify_roots(pair)
    suites.append(_suite("root_table_oracle", orc.ok, f"{orc.bookkeeping()}; {len(orc.mismatches)} mismatches"))

    sp = positive_restricted_system(pair)
    sigma = restricted_root_data(pair)
    rho = weyl_vector(sp, shape=(params.q, params.s))
    rho_st = weyl_vector_supertrace(pair)
    suites.append(_suite("weyl_vector", rho == rho_st, f"rho = {rho.coords_str()}"))

    suites.append(_suite("positivity_axioms", positivity_axioms(sp, sigma) if sigma else True,
                         f"{len(sp)} positive roots"))

    chain = compatible_chain(params)
    rset = {d.root for d in sp}
    bad = 0
    syms = [s.weight((params.p + params.q, params.r + params.s)) for s in chain.symbols]
    for i in range(len(syms)):
        for j in range(i + 1, len(syms)):
            res = restrict_weight(syms[i] - syms[j], params)
            if not res.is_zero() and res not in rset:
                bad += 1
    suites.append(_suite("compatible_chain", bad == 0, f"{chain}; {bad} roots restrict outside the positive system"))

    if sp:
        recs = rho_flip_records(sp, 3)
        good = sum(r.corrected_ok for r in recs)
        literal = sum(r.literal_ok for r in recs)
        suites.append(_suite(
            "rho_flips", good == len(recs),
            f"<rho_Phi,alpha> = <rho_alpha,alpha> on {good}/{len(recs)} (system, simple root) cases; "
            f"flipped-system form holds on {literal}/{len(recs)}",
        ))

    lams = enumerate_spherical(params, 4)
    flags = _pmap(lambda lam: self_dual_check(params, lam), lams, workers)
    suites.append(_suite("spherical_self_dual", all(flags), f"{sum(flags)}/{len(lams)} weights at bound 4"))

    rep = _header("verify", params)
    rep["suites"] = suites
    rep["ok"] = all(s["ok"] for s in suites)
    return rep, EXIT_OK if rep["ok"] else EXIT_FAIL


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="helgason-super",
        description="Restricted roots, c-functions and spherical weights for gl(p+q|r+s).",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, params="required"):
        sp = sub.add_parser(name, help=help_, epilog=_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
        if params == "required":
            sp.add_argument("params", nargs=4, metavar="N", help="p q r s")
        else:
            sp.add_argument("params", nargs="*", metavar="N", help="p q r s")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=fn, weight=None, workers=None)
        return sp

    add("pair", cmd_pair, "sigma, the Cartan basis and block dimensions")
    sp = add("roots", cmd_roots, "full root table, or restricted roots with --restricted")
    sp.add_argument("--restricted", action="store_true", help="restricted roots with multiplicities")
    sp.add_argument("--positive", action="store_true", help="with --restricted, only the positive system")
    add("rho", cmd_rho, "Weyl vector by both constructions")
    sp = add("cfunction", cmd_cfunction, "c-function factors and value")
    sp.add_argument("--weight", help=_WEIGHT_HELP)
    sp.add_argument("--shift-rho", action="store_true", help="evaluate at weight + rho")
    sp = add("spherical", cmd_spherical, "enumerate and classify spherical weights")
    sp.add_argument("--bound", type=int, default=4, help="largest coefficient magnitude (even)")
    sp.add_argument("--workers", type=int, help=f"worker threads (capped by {THREADS_ENV})")
    sp = add("selfdual", cmd_selfdual, "check R(lambda) = -lambda")
    sp.add_argument("--weight", help=_WEIGHT_HELP)
    sp = add("chain", cmd_chain, "reversal of a delta/epsilon chain", params="optional")
    sp.add_argument("--chain", help="explicit chain such as 'd2 e2 e1 d1'")
    sp.add_argument("--weight", help=_WEIGHT_HELP)
    sp = add("verify", cmd_verify, "rerun the built-in consistency suites")
    sp.add_argument("--workers", type=int, help=f"worker threads (capped by {THREADS_ENV})")
    return ap


def _first_positional(argv: Sequence[str]) -> Optional[str]:
    for tok in argv:
        if not tok.startswith("-"):
            return tok
    return None


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    cmd = _first_positional(argv)
    if cmd is not None and cmd not in COMMANDS:
        print(f"error: unknown subcommand {cmd!r}; choose from {', '.join(COMMANDS)}", file=sys.stderr)
        return EXIT_UNKNOWN
    parser = build_parser()
    try:
        ns = parser.parse_args(_merge_weight_tokens(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = ns.func(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dump_json(report) if ns.format == "json" else render_text(report)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
