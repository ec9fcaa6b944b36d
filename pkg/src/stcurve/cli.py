"""Command-line front end.

Exit codes: 0 for success or a certified verdict, 1 for a valid run whose
verdict is NotCertified/Undetermined, 2 for input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .deform import (
    certify_stci,
    default_trunc,
    lift_relations,
    parametrization_from_dict,
    value_semigroup,
)
from .errors import NotApplicable, SemigroupJump, StcurveError, TruncationExhausted
from .families import CSV_COLUMNS, certify_family, cor44_evaluate, family_instance, scan
from .herzog import defining_equations, gs1_forward, gs1_is_image, gs2_check, herzog_data, lemma3_pair
from .numsg import apery_set, gap_data, make_semigroup
from .stci import bresinsky_reduce, moh_check, syzygy_check

TRUNC_ENV = "STCI_TRUNC"


@dataclass
class CommandResult:
    payload: dict
    exit_code: int = 0
    text: str | None = None


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo_i, hi_i + 1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the JSON payload")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="print nothing; rely on the exit code")

    p = _Parser(prog="stcurve", parents=[common], description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, hlp in (("semigroup", "gaps, conductor and Apery sets"),
                      ("herzog", "case, relation matrix and defining equations"),
                      ("stci", "Bresinsky data and Moh's condition")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        for g in ("L", "M", "N"):
            s.add_argument(g, type=int)

    inv = sub.add_parser("inverse", parents=[common], help="inverse problem for the relation data")
    isub = inv.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    g1 = isub.add_parser("gs1", parents=[common])
    for v in ("a1", "a2", "b1", "b2", "c1", "c2"):
        g1.add_argument(v, type=int)
    g2 = isub.add_parser("gs2", parents=[common])
    for v in ("a", "b", "c", "a1", "b2"):
        g2.add_argument(v, type=int)

    d = sub.add_parser("deform", parents=[common], help="value semigroup, lift and certificate of a deformation")
    d.add_argument("file")
    d.add_argument("--trunc", type=int)

    f = sub.add_parser("family", parents=[common], help="one member of the two-parameter family")
    f.add_argument("A", type=int)
    f.add_argument("B", type=int)
    f.add_argument("--p", type=int)
    f.add_argument("--q", type=int)
    f.add_argument("--trunc", type=int)

    sc = sub.add_parser("scan", parents=[common], help="certify a rectangle of the family")
    sc.add_argument("arange", type=_range, metavar="A0..A1")
    sc.add_argument("brange", type=_range, metavar="B0..B1")
    sc.add_argument("--canonical-p", action="store_true")
    sc.add_argument("--witnesses", action="store_true", help="also compute value semigroup and lift per row")
    sc.add_argument("--csv", action="store_true")
    return p


def _trunc(explicit: int | None) -> int | None:
    if explicit is not None:
        return explicit
    env = os.environ.get(TRUNC_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{TRUNC_ENV} must be an integer, got {env!r}") from None
    return None


def _semigroup(args) -> CommandResult:
    S = make_semigroup(args.L, args.M, args.N)
    gd = gap_data(S)
    apery = {str(w): apery_set(S, w) for w in S.generators}
    payload = {"generators": list(S.generators), "gaps": list(gd.gaps), "frobenius": gd.frobenius,
               "conductor": gd.conductor, "genus": len(gd.gaps), "apery": apery}
    text = (f"<{args.L},{args.M},{args.N}>  conductor {gd.conductor}  frobenius {gd.frobenius}\n"
            f"gaps {list(gd.gaps)}\n" + "\n".join(f"apery({w}) {v}" for w, v in apery.items()))
    return CommandResult(payload, 0, text)


def _herzog(args) -> CommandResult:
    S = make_semigroup(args.L, args.M, args.N)
    H = herzog_data(S)
    E = defining_equations(S, H)
    payload = {"herzog": H.as_dict(), **E.as_dict()}
    lines = [f"<{args.L},{args.M},{args.N}>  case {H.case}"]
    if H.case == "H1":
        payload["syzygies_hold"] = syzygy_check(E, H)
        payload["lemma3_pair"] = list(lemma3_pair(S, H))
        lines.append(f"(a1,a2,b1,b2,c1,c2) = {H.sextuple}  (a,b,c) = {(H.a, H.b, H.c)}")
        lines.append("M0 = " + str([[str(e) for e in row] for row in E.M0]))
    for fi, di in zip(E.f, E.degrees):
        lines.append(f"  {fi}    [degree {di}]")
    return CommandResult(payload, 0, "\n".join(lines))


def _inverse(args) -> CommandResult:
    if args.kind == "gs1":
        sx = (args.a1, args.a2, args.b1, args.b2, args.c1, args.c2)
        l, m, n, e = gs1_forward(sx)
        image = gs1_is_image(sx)
        payload = {"sextuple": list(sx), "triple": [l, m, n], "e": e, "is_image": image}
        text = f"{sx} -> ({l}, {m}, {n}), e' = {e}, image: {image}"
    else:
        v = gs2_check(args.a, args.b, args.c, args.a1, args.b2)
        payload = v.as_dict()
        text = f"-> {v.triple}, d' = {v.d}, image: {v.is_image} ({v.reason})"
    return CommandResult(payload, 0, text)


def _stci(args) -> CommandResult:
    S = make_semigroup(args.L, args.M, args.N)
    H = herzog_data(S)
    moh = moh_check(args.L, args.M, args.N)
    payload = {"case": H.case, "moh": moh, "conductor": S.conductor}
    if H.case != "H1":
        payload["bresinsky"] = None
        payload["note"] = "complete intersection; two equations already suffice"
        return CommandResult(payload, 0, f"<{args.L},{args.M},{args.N}> is a complete intersection; moh {moh}")
    E = defining_equations(S, H)
    B = bresinsky_reduce(E, H)
    payload["equations"] = [str(p) for p in E.f]
    payload["degrees"] = list(E.degrees)
    payload["bresinsky"] = B.as_dict()
    text = (f"f1^{B.c} = q*f3 + x^{B.k}*g\n  g = {B.g}\n  q = {B.q}\n"
            f"g mod <x,z> = {B.residue}\nmoh {moh}")
    return CommandResult(payload, 0, text)


def _cert_text(cert) -> str:
    d = cert.as_dict()
    lines = [f"{cert.parametrization}  delta {d['delta']}",
             f"lemma21 {d['lemma21']['lhs']} >= {d['lemma21']['rhs']}: {d['lemma21']['holds']}",
             f"prop29  {d['prop29']['lhs']} >= {d['prop29']['rhs']}: {d['prop29']['holds']}"]
    w = d["witnesses"]
    if "value_semigroup" in w:
        vs = w["value_semigroup"]
        lines.append(f"value semigroup: {vs['verdict']} extra {vs['extra_values']}")
        for wit in vs["witnesses"]:
            lines.append(f"  {wit['value']}: {wit['combination']}")
    if "lift" in w:
        lines.append(f"lift margins {w['lift']['ord_margins']}")
    if "lift_error" in w:
        lines.append(f"lift failed: {w['lift_error']}")
    if "one_form" in w:
        lines.append(f"one-form valuation {w['one_form']['valuation']} "
                     f"(witness: {w['one_form']['nonisomorphy_witness']})")
    lines.append(f"verdict {cert.verdict}")
    return "\n".join(lines)


def _cert_exit(cert) -> int:
    if not cert.certified or not cert.consistent:
        return 1
    vs = cert.value_semigroup
    return 1 if vs is not None and vs.verdict == "Undetermined" else 0


def _deform(args) -> CommandResult:
    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    try:
        P = parametrization_from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, StcurveError):
            raise
        raise UsageError(f"malformed parametrization: {exc!r}") from None
    S = make_semigroup(P.l, P.m, P.n)
    H = herzog_data(S)
    if H.case != "H1":
        payload = {"case": H.case, "verdict": "NotApplicable",
                   "reason": "complete intersection; the certificate does not apply"}
        return CommandResult(payload, 1, "complete intersection; the certificate does not apply")
    E = defining_equations(S, H)
    B = bresinsky_reduce(E, H)
    k = H.a1 * H.c2
    T = _trunc(args.trunc)
    if T is None:
        T = default_trunc(S.conductor, E.degrees, k, S.l)
    cert = certify_stci(S, H, E, B, P, order=T)
    payload = {"certificate": cert.as_dict(), "trunc": T}
    vs = value_semigroup(P, T) if cert.value_semigroup is None else cert.value_semigroup
    payload["value_semigroup"] = vs.as_dict()
    if cert.lift is not None:
        payload["lift"] = cert.lift.as_dict()
    elif vs.verdict != "EqualsGamma":
        try:
            payload["lift"] = lift_relations(E, P, T, k).as_dict()
        except (SemigroupJump, TruncationExhausted) as exc:
            payload["lift"] = {"error": str(exc)}
    return CommandResult(payload, _cert_exit(cert), _cert_text(cert))


def _family(args) -> CommandResult:
    F = family_instance(args.A, args.B)
    cor = cor44_evaluate(F, args.p, args.q)
    cert = certify_family(F, args.p, args.q, order=_trunc(args.trunc))
    payload = {"instance": F.as_dict(), "cor44": cor.as_dict(), "certificate": cert.as_dict()}
    head = (f"(a,b) = ({F.a},{F.b})  <{F.l},{F.m},{F.n}>  conductor {F.conductor}  degrees {F.degrees}\n"
            f"lemma43 {cor.lemma43.lhs} <= {cor.lemma43.mid} < {cor.lemma43.rhs}: {cor.lemma43.holds}\n"
            f"cor44 a={cor.clause_a['holds']} b={cor.clause_b['holds']} c={cor.clause_c['holds']} "
            f"(canonical p {cor.clause_c['canonical_p']})\n")
    return CommandResult(payload, _cert_exit(cert), head + _cert_text(cert))


def _scan(args) -> CommandResult:
    mode = "canonical_p" if args.canonical_p else "monomial"
    for r in (args.arange, args.brange):
        if r.start < 2 or r.stop - 1 > 64:
            raise UsageError("scan ranges must lie within 2..64")
    rows = scan(args.arange, args.brange, mode, witnesses=args.witnesses)
    bad = any(r.get("verdict", "Certified") != "Certified" or not r.get("witnesses_consistent", True)
              for r in rows)
    payload = {"mode": mode, "rows": rows}
    if args.csv:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(CSV_COLUMNS + ("note",))
        for r in rows:
            if "skipped" in r:
                continue
            wr.writerow([r.get(c) for c in CSV_COLUMNS] + [r.get("note", "")])
        text = buf.getvalue().rstrip("\n")
    else:
        text = "\n".join(json.dumps(r, sort_keys=True) for r in rows)
    return CommandResult(payload, 1 if bad else 0, text)


HANDLERS = {
    "semigroup": _semigroup,
    "herzog": _herzog,
    "inverse": _inverse,
    "stci": _stci,
    "deform": _deform,
    "family": _family,
    "scan": _scan,
}


def _echo(args) -> dict:
    skip = {"json", "quiet"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = [v.start, v.stop - 1] if isinstance(v, range) else v
    return out


def dispatch(argv: list[str]) -> CommandResult:
    """Run one command; input problems come back as exit code 2 with an "error" entry."""
    base = {"tool_version": __version__}
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandResult({**base, "inputs_echo": {"argv": list(argv)}, "error": str(exc)}, 2)
    base["inputs_echo"] = _echo(args)
    try:
        res = HANDLERS[args.command](args)
    except NotApplicable as exc:
        return CommandResult({**base, "verdict": "NotApplicable", "reason": str(exc)}, 1, str(exc))
    except (UsageError, StcurveError, ValueError) as exc:
        return CommandResult({**base, "error": f"{type(exc).__name__}: {exc}"}, 2)
    res.payload = {**res.payload, **base}
    return res


def to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    res = dispatch(argv)
    flags = set(argv)
    if res.exit_code == 2:
        print(f"stcurve: {res.payload.get('error', 'usage error')}", file=sys.stderr)
        if "--json" in flags:
            print(to_json(res.payload))
        return 2
    if "--quiet" in flags:
        return res.exit_code
    if "--json" in flags:
        print(to_json(res.payload))
    elif res.text is not None:
        print(res.text)
    return res.exit_code
