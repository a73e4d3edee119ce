"""Command-line front end: ``pcval <command> [options]``.

Exit codes: 0 ok, 1 verification failure, 2 precondition violation,
3 parse error, 4 uncertified or undecided.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from gmpy2 import mpq

from .breadth import GroupValue, parse_breadth
from .expr import ParseError, parse_elem, parse_rational, parse_rfun
from .ground_field import INF, QQ, FieldDivisionError, PoleError, backend_from_name, rf_eval
from .oracle import profile_scan
from .pcv import FIXTURE_NAMES, PreconditionError, classify_type, equivalent, fixture, load_seq
from .topology import (
    SeparationFailure,
    convergence_scan,
    enumerate_increasing,
    intR_consistency,
    omega_identity_witness,
    omega_membership,
    residue_separator,
    separator,
)
from .valuations import (
    CertificationError,
    annulus_law,
    degdom,
    is_nonnegative,
    member,
    monomial_val,
    rank_report,
    v_E,
    value_profile,
    w_E,
)

CONFIG_ENV = "PCVAL_CONFIG"

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_PARSE, EXIT_UNDECIDED = 0, 1, 2, 3, 4


@dataclass
class SessionConfig:
    backend: str = "q"
    max_index: int = 64
    depth: int = 40
    format: str = "text"


def load_config(path: str | None = None) -> SessionConfig:
    """Defaults, overridden by the JSON file named by $PCVAL_CONFIG (if any)."""
    cfg = SessionConfig()
    path = path or os.environ.get(CONFIG_ENV)
    if path:
        data = json.loads(Path(path).read_text())
        for key in ("backend", "max_index", "depth", "format"):
            if key in data:
                setattr(cfg, key, data[key])
    return cfg


def _fmt(x) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return str(x)


def _jsonable(x):
    if isinstance(x, GroupValue):
        return x.to_json()
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if x in (INF, -INF):
        return _fmt(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return str(x)


class Session:
    def __init__(self, args):
        cfg = load_config()
        self.backend = backend_from_name(args.backend or cfg.backend)
        self.max_index = args.max_index or cfg.max_index
        self.depth = args.depth or cfg.depth
        self.format = args.format or cfg.format
        if self.max_index < 8:
            raise PreconditionError("--max-index must be at least 8")

    def seq(self, ref):
        if ref is None:
            raise PreconditionError("--seq is required")
        return load_seq(ref, self.backend).with_max_index(self.max_index)

    def fn(self, text):
        if text is None:
            raise PreconditionError("--fn is required")
        return parse_rfun(text, self.backend)

    def elem(self, text):
        return parse_elem(text, self.backend)


# -- commands: each returns (text, json-able payload, exit code) -----------

def cmd_val(ss, a):
    x = ss.elem(a.x)
    return _fmt(x.val), {"elem": str(x), "val": _fmt(x.val)}, EXIT_OK


def cmd_eval(ss, a):
    phi, s = ss.fn(a.fn), ss.elem(a.at)
    y = rf_eval(phi, s)
    return f"{y}  (val {_fmt(y.val)})", {"value": str(y), "val": _fmt(y.val)}, EXIT_OK


def cmd_profile(ss, a):
    E, phi = ss.seq(a.seq), ss.fn(a.fn)
    prof = value_profile(phi, E)
    last = min(prof.start + ss.depth, E.max_index)
    ns = list(range(prof.start, last + 1))
    observed = profile_scan(phi, E, ns)
    rows = [(n, E.delta(n), v, prof.at(E.delta(n))) for n, v in zip(ns, observed)]
    ok = all(v == p for _, _, v, p in rows)
    lines = [str(prof), "n  delta_n  val(phi(s_n))  predicted"]
    lines += [f"{n}  {d}  {_fmt(v)}  {p}" for n, d, v, p in rows]
    lines.append("profile law holds" if ok else "profile law FAILS")
    payload = {"lambda": prof.lam, "gamma": prof.gamma, "start": prof.start,
               "rows": [{"n": n, "delta": d, "observed": v, "predicted": p} for n, d, v, p in rows],
               "ok": ok}
    return "\n".join(lines), payload, EXIT_OK if ok else EXIT_FAIL


def cmd_degdom(ss, a):
    d = degdom(ss.fn(a.fn), ss.seq(a.seq))
    return str(d), {"degdom": d}, EXIT_OK


def cmd_we(ss, a):
    w = w_E(ss.fn(a.fn), ss.seq(a.seq))
    return str(w), {"w_E": w}, EXIT_OK


def cmd_ve(ss, a):
    v = v_E(ss.fn(a.fn), ss.seq(a.seq))
    inside = is_nonnegative(v)
    text = f"{v} => {'in' if inside else 'NOT in'} V_E"
    return text, {"v_E": v, "member": inside}, EXIT_OK


def cmd_member(ss, a):
    ring = a.ring.upper()
    inside = member(ss.fn(a.fn), ss.seq(a.seq), ring)
    return f"{'in' if inside else 'NOT in'} {ring}_E", {"ring": ring, "member": inside}, EXIT_OK


def cmd_rank(ss, a):
    r = rank_report(ss.seq(a.seq))
    payload = {"rank": r.rank, "reason": r.reason, "minimal_polynomial": r.minimal_polynomial,
               "overring": r.overring, "notes": list(r.notes)}
    return str(r), payload, EXIT_OK


def cmd_equiv(ss, a):
    if a.seq2 is None:
        raise PreconditionError("--seq2 is required")
    v = equivalent(ss.seq(a.seq), ss.seq(a.seq2))
    word = "equivalent" if v.value else "not equivalent"
    text = f"{word} ({v.reason})"
    if v.status != "exact":
        text += f" [{v.status}]"
    code = EXIT_OK if v.value is not None else EXIT_UNDECIDED
    return text, {"equivalent": v.value, "status": v.status, "reason": v.reason}, code


def cmd_monomial(ss, a):
    val = monomial_val(ss.fn(a.fn), ss.elem(a.alpha), parse_breadth(a.delta))
    return str(val), {"value": val}, EXIT_OK


def _bound(text):
    if text is None:
        return None
    t = text.strip().lower()
    if t in ("inf", "+inf"):
        return INF
    if t == "-inf":
        return -INF
    return parse_rational(text)


def cmd_annulus(ss, a):
    law = annulus_law(ss.fn(a.fn), ss.elem(a.at), _bound(a.theta1), _bound(a.theta2))
    return f"lambda = {law.lam}, gamma = {law.gamma}", {"lambda": law.lam, "gamma": law.gamma}, EXIT_OK


def cmd_omega(ss, a):
    E, s, g = ss.seq(a.seq), ss.elem(a.at), parse_rational(a.gamma)
    inside = omega_membership(E, s, g)
    c, k = omega_identity_witness(s, g, ss.backend)
    text = f"{'in' if inside else 'NOT in'} Omega({s}, {g}) = B(({c})/(X - ({s}))^{k})"
    return text, {"member": inside, "c": str(c), "k": k}, EXIT_OK


def cmd_converge(ss, a):
    E = ss.seq(a.seq)
    results = convergence_scan(E, [ss.fn(f) for f in a.fn or []], ss.depth)
    lines = [f"{r.status}: {r.phi}  (V_E: {r.target}, last change at n = {r.stabilized_at})"
             for r in results]
    payload = [{"fn": str(r.phi), "status": r.status, "target": r.target,
                "stabilized_at": r.stabilized_at} for r in results]
    statuses = {r.status for r in results}
    code = EXIT_FAIL if "mismatch" in statuses else EXIT_UNDECIDED if "undecided" in statuses else EXIT_OK
    return "\n".join(lines), payload, code


def cmd_enumerate(ss, a):
    centers = [ss.elem(c) for c in a.center] if a.center else None
    cands = enumerate_increasing(ss.fn(a.fn), parse_rational(a.target), centers)
    lines = [f"center {c.center}: delta_F = {c.delta} (lambda = {c.lam}, gamma = {c.gamma})"
             for c in cands] or ["no candidates"]
    payload = [{"center": str(c.center), "delta": c.delta, "lambda": c.lam, "gamma": c.gamma}
               for c in cands]
    return "\n".join(lines), payload, EXIT_OK


def cmd_separate(ss, a):
    E = ss.seq(a.seq)
    phis = [ss.fn(f) for f in a.fn or []]
    sample = [ss.seq(r) for r in a.sample or []]
    try:
        w = separator(E, phis, sample)
    except SeparationFailure as exc:
        return f"verification failed for {exc.ring!r}\n{exc.witness}", {"ok": False}, EXIT_FAIL
    payload = {"ok": True, "case": w.case, "premise_met": w.premise_met,
               "pieces": [{"kind": p.kind, "point_side": str(p.point_side),
                           "closed_side": str(p.closed_side), "covers": list(p.covers)}
                          for p in w.pieces]}
    return str(w), payload, EXIT_OK


def cmd_residue_sep(ss, a):
    rs = residue_separator(ss.elem(a.at), parse_rational(a.delta), ss.backend)
    bad = [(str(x), d) for x, d, inside in rs.probes if inside != (d < rs.delta)]
    text = f"psi = {rs.psi}\n{len(rs.probes)} probes, {'all agree' if rs.ok else f'{len(bad)} disagree'}"
    return text, {"psi": str(rs.psi), "probes": len(rs.probes), "ok": rs.ok, "bad": bad}, \
        EXIT_OK if rs.ok else EXIT_FAIL


def cmd_intr_check(ss, a):
    sample = [ss.seq(r) for r in a.sample or []]
    rep = intR_consistency(ss.fn(a.fn), sample)
    if rep.probes_in_V:
        text = "all probes map into V; " + (
            "phi lies in every sampled W_E" if rep.consistent
            else f"phi fails W_E for {list(rep.failing_sample)}")
    else:
        text = (f"phi(x) not in V at x = {rep.counterexample}; "
                f"Cauchy sequence there gives w_E(phi) = {rep.witness_value}")
    payload = {"probes_in_V": rep.probes_in_V, "consistent": rep.consistent,
               "counterexample": rep.counterexample, "witness_value": rep.witness_value}
    return text, payload, EXIT_OK if rep.consistent else EXIT_FAIL


def cmd_fixtures(ss, a):
    rows = []
    for name in FIXTURE_NAMES:
        try:
            E = fixture(name, ss.backend)
        except PreconditionError:
            continue
        rows.append({"name": name, "kind": E.kind, "breadth": str(E.breadth),
                     "type": classify_type(E).type,
                     "terms": [str(E.s(n)) for n in range(3)]})
    text = "\n".join(f"{r['name']}: {r['kind']}, breadth {r['breadth']}, {r['type']}; "
                     f"s_0..s_2 = {', '.join(r['terms'])}" for r in rows)
    return text, rows, EXIT_OK


COMMANDS = {
    "val": cmd_val, "eval": cmd_eval, "profile": cmd_profile, "degdom": cmd_degdom,
    "we": cmd_we, "ve": cmd_ve, "member": cmd_member, "rank": cmd_rank, "equiv": cmd_equiv,
    "monomial": cmd_monomial, "annulus": cmd_annulus, "omega": cmd_omega,
    "converge": cmd_converge, "enumerate": cmd_enumerate, "separate": cmd_separate,
    "residue-sep": cmd_residue_sep, "intr-check": cmd_intr_check, "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", help="q or fp:<p>")
    common.add_argument("--max-index", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--format", choices=["text", "json"])

    parser = argparse.ArgumentParser(prog="pcval", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *opts):
        p = sub.add_parser(name, parents=[common])
        for opt in opts:
            if opt == "fn*":
                p.add_argument("--fn", action="append")
            elif opt == "sample":
                p.add_argument("--sample", action="append")
            elif opt == "center":
                p.add_argument("--center", action="append")
            else:
                p.add_argument(f"--{opt}")
        return p

    add("val", "x")
    add("eval", "fn", "at")
    add("profile", "seq", "fn")
    add("degdom", "seq", "fn")
    add("we", "seq", "fn")
    add("ve", "seq", "fn")
    add("member", "seq", "fn", "ring")
    add("rank", "seq")
    add("equiv", "seq", "seq2")
    add("monomial", "fn", "alpha", "delta")
    add("annulus", "fn", "at", "theta1", "theta2")
    add("omega", "seq", "at", "gamma")
    add("converge", "seq", "fn*")
    add("enumerate", "fn", "target", "center")
    add("separate", "seq", "fn*", "sample")
    add("residue-sep", "at", "delta")
    add("intr-check", "fn", "sample")
    add("fixtures")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "member" and args.ring is None:
        args.ring = "V"
    try:
        ss = Session(args)
        text, payload, code = COMMANDS[args.command](ss, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, PoleError, FieldDivisionError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CertificationError as exc:
        print(f"uncertified: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    if ss.format == "json":
        print(json.dumps(_jsonable(payload), indent=2))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
