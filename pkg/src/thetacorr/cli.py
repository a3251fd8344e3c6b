"""Command line front end: ``theta <subcommand> ...``.

Every command prints one document (JSON by default) carrying a
``schema_version``.  Exit codes: 0 ok, 1 usage or malformed input,
2 mathematical contradiction or infeasibility, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import conservation, dual_pairs, formed_spaces, growth, moment_descent, orbits
from .dual_pairs import ClassicalSignature
from .formed_spaces import FormedSpace

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_json(arg: str):
    """Inline JSON (starting with '{' or '[') or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as e:
            raise UsageError(f"cannot read {arg}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {arg if text is not arg else 'argument'}: {e.msg} at line {e.lineno} column {e.colno} (char {e.pos})") from None


def parse_nu(text: str):
    if text.lower() in ("none", "-inf", "no-bound"):
        return growth.NO_BOUND
    try:
        v = Fraction(text)
    except ValueError:
        raise UsageError(f"cannot read nu value {text!r}") from None
    return v.numerator if v.denominator == 1 else v


def parse_pair(text: str) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected 'p,q', got {text!r}") from None
    return p, q


def _signature(d) -> ClassicalSignature:
    if "star" not in d:
        raise UsageError("a signature needs a 'star' entry")
    return ClassicalSignature.from_json(d)


def _orbit_json(d):
    """A tableau ({"eps", "rows"}) or a complex orbit ({"type", "partition"})."""
    if "rows" in d:
        return orbits.Tableau.from_json(d)
    if "partition" in d:
        return orbits.ComplexOrbit.from_json(d)
    raise UsageError("orbit JSON needs 'rows' (tableau) or 'partition' (complex orbit)")


# -- commands -----------------------------------------------------------------


def cmd_towers(a):
    fam = formed_spaces.enumerate_towers(a.field, a.eps, a.alpha if a.field == "R" else a.chi)
    ts = fam.towers(a.kmax) if fam.count == float("inf") else fam.towers()
    rows = [{"tower": t.label(), "kernel_dim": t.kernel_dim, "dims": " ".join(map(str, t.dims(t.kernel_dim + 8)))} for t in ts]
    doc = {
        "field": a.field,
        "eps": a.eps,
        "count": "infinite" if fam.count == float("inf") else int(fam.count),
        "towers": [dict(t.to_json(), label=t.label(), kernel_dim=t.kernel_dim) for t in ts],
    }
    if a.space:
        V = FormedSpace.from_json(load_json(a.space))
        info = {"space": V.to_json(), "dim": V.dim, "witt_index": formed_spaces.witt_index(V)}
        if V.kind == formed_spaces.QUAD:
            t = formed_spaces.tower_of(V)
            info.update(tower=t.label(), quasi_split=formed_spaces.quasi_split(V))
            if V.field == "R":
                disc = formed_spaces.discriminant_alpha(V)
                info.update(alpha=disc.alpha, character=disc.character)
        doc["space"] = info
    return doc, rows


def cmd_pairs(a):
    s = ClassicalSignature(a.star, a.p, a.p if a.q is None else a.q)
    bad = dual_pairs.validate_signature(s)
    doc = {"signature": s.to_json(), "valid": not bad, "violations": bad, "dual_star": dual_pairs.howe_dual(s.star)}
    if not bad:
        v, vp = growth.nu_profile(s)
        doc.update(real_group=dual_pairs.group_of_signature(s), nu_s=v, nu_s_plus=vp)
    return doc, [dict(doc, signature=str(s), violations="; ".join(bad))]


def cmd_orbits(a):
    if a.signature:
        items = list(orbits.enumerate_tableaux(1, parse_pair(a.signature), a.cap))
        rows = [{"tableau": str(T), "partition": " ".join(map(str, orbits.complexify(T).parts))} for T in items]
        doc = {"eps": 1, "signature": list(parse_pair(a.signature)), "tableaux": [T.to_json() for T in items]}
        return doc, rows
    if a.size is None:
        raise UsageError("orbits enumerate needs --size or --signature")
    lie = orbits._parse_type(a.type)
    if a.real:
        if lie != orbits.SYMP:
            raise UsageError("--real with --type o needs --signature p,q")
        items = list(orbits.enumerate_tableaux(-1, a.size, a.cap))
        rows = [{"tableau": str(T), "partition": " ".join(map(str, orbits.complexify(T).parts))} for T in items]
        return {"eps": -1, "dim": a.size, "tableaux": [T.to_json() for T in items]}, rows
    items = list(orbits.enumerate_orbits(lie, a.size, a.cap))
    rows = []
    for O in items:
        c1, c2, pure = orbits.column_data(O)
        rows.append({"partition": " ".join(map(str, O.parts)), "c1": c1, "c2": c2, "pure": pure})
    return {"type": lie, "size": a.size, "orbits": [O.to_json() for O in items]}, rows


def cmd_descend(a):
    O = _orbit_json(load_json(a.orbit))
    V = FormedSpace.from_json(load_json(a.target))
    if isinstance(O, orbits.ComplexOrbit):
        res = moment_descent.complex_descend(O, V.dim)
        cls = moment_descent.classify_complex(O, V.dim, a.star)
        doc = {"orbit": res.to_json(), "b": cls.b, "classification": cls.to_json()}
        return doc, [{"partition": " ".join(map(str, res.parts)), **cls.to_json()}]
    res = moment_descent.descend(O, V)
    cls = moment_descent.classify_descent(O, V, a.star)
    doc = dict(res.to_json(), classification=cls.to_json())
    row = {"orbit": str(res.orbit), "b": res.b, "kernel": res.kernel_form.describe(), "M_XXp": " x ".join(res.M_factors), "L": res.L, "Lp": res.Lp}
    return doc, [dict(row, **cls.to_json())]


def cmd_lift(a):
    O = _orbit_json(load_json(a.orbit))
    if not isinstance(O, orbits.ComplexOrbit):
        O = orbits.complexify(O)
    res = moment_descent.check_theta_lift(O, a.to_dim, a.cap)
    return {"orbit": O.to_json(), "lift": res.to_json()}, [{"orbit": str(O), "lift": str(res)}]


def cmd_support(a):
    O = _orbit_json(load_json(a.orbit))
    Op = _orbit_json(load_json(a.complex))
    if not isinstance(O, orbits.Tableau) or not isinstance(Op, orbits.ComplexOrbit):
        raise UsageError("support needs a tableau for --orbit and a complex orbit for --complex")
    sig = parse_pair(a.signature) if a.signature else None
    items = moment_descent.lift_orbit_support(O, Op, sig, a.cap)
    return {"orbit": O.to_json(), "complex": Op.to_json(), "support": [T.to_json() for T in items]}, [{"tableau": str(T)} for T in items]


def cmd_ledger(a):
    led = conservation.OccurrenceLedger.from_json(load_json(a.facts))
    for which in a.seed or []:
        led = conservation.seed_known_anchors(led, which)
    rep = conservation.infer(led)
    doc = rep.to_json()
    rows = [
        {"index": r["index"], "tower": json.dumps(r["tower"]) if "tower" in r else "", "lo": r["lo"], "hi": r["hi"], "exact": r["exact"]}
        for r in doc["intervals"]
    ]
    return doc, rows


def cmd_doubling(a):
    s, sp = _signature(load_json(a.s)), _signature(load_json(a.sp))
    res = growth.doubling_signatures(s, sp)
    doc = res.to_json()
    return doc, [{k: (str(ClassicalSignature.from_json(v)) if isinstance(v, dict) else v) for k, v in doc.items()}]


def cmd_plan(a):
    start = _signature(load_json(a.start))
    via = [_signature(load_json(v)) for v in a.via or []]
    if not via:
        raise UsageError("plan needs at least one --via signature")
    plan = growth.plan_chain(start, parse_nu(a.nu), via)
    doc = plan.to_json()
    rows = []
    for st in doc["steps"]:
        rows.append({**st, "source": str(_signature(st["source"])), "target": str(_signature(st["target"]))})
    return doc, rows


def cmd_psi(a):
    try:
        eig = [Fraction(x) for x in a.eigenvalues.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot read eigenvalues {a.eigenvalues!r}") from None
    v = growth.psi_eval(eig)
    exact = isinstance(v, Fraction)
    doc = {"eigenvalues": [str(x) for x in eig], "psi": str(v) if exact else repr(v), "exact": exact}
    return doc, [doc | {"eigenvalues": " ".join(doc["eigenvalues"])}]


# -- plumbing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write the document here instead of stdout")
    common.add_argument("--cap", type=int, default=orbits.DEFAULT_CAP, help="enumeration size cap")

    p = _Parser(prog="theta", description="Exact combinatorics for the local theta correspondence.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("towers", parents=[common], help="Witt towers of a family")
    s.add_argument("--field", choices=("R", "C", "NA"), default="R")
    s.add_argument("--eps", type=int, choices=(0, 1), default=0)
    s.add_argument("--chi", choices=("triv", "nontriv"), default="triv")
    s.add_argument("--alpha", type=int, default=None)
    s.add_argument("--kmax", type=int, default=8, help="real towers listed up to |k| <= kmax")
    s.add_argument("--space", help="also report invariants of this space (JSON)")
    s.set_defaults(func=cmd_towers)

    s = sub.add_parser("pairs", parents=[common], help="classical signature data")
    s.add_argument("--star", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, default=None)
    s.set_defaults(func=cmd_pairs)

    s = sub.add_parser("orbits", help="nilpotent orbits")
    osub = s.add_subparsers(dest="action", parser_class=_Parser)
    e = osub.add_parser("enumerate", parents=[common])
    e.add_argument("--type", default="sp", help="sp or o")
    e.add_argument("--size", type=int)
    e.add_argument("--real", action="store_true", help="real tableaux of sp_size(R)")
    e.add_argument("--signature", help="real tableaux of o(p,q), given as p,q")
    e.set_defaults(func=cmd_orbits)

    s = sub.add_parser("descend", parents=[common], help="moment-map descent")
    s.add_argument("--orbit", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--star", default=None, help="star of the space the orbit lives in")
    s.set_defaults(func=cmd_descend)

    s = sub.add_parser("lift", parents=[common], help="check theta lift of a complex orbit")
    s.add_argument("--orbit", required=True)
    s.add_argument("--to-dim", type=int, required=True)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("support", parents=[common], help="K'-orbits over a K-orbit")
    s.add_argument("--orbit", required=True)
    s.add_argument("--complex", required=True)
    s.add_argument("--signature", default=None)
    s.set_defaults(func=cmd_support)

    s = sub.add_parser("ledger", help="first-occurrence ledgers")
    lsub = s.add_subparsers(dest="action", parser_class=_Parser)
    e = lsub.add_parser("infer", parents=[common])
    e.add_argument("facts")
    e.add_argument("--seed", action="append", choices=("sign", "trivial"))
    e.set_defaults(func=cmd_ledger)

    s = sub.add_parser("doubling", parents=[common], help="doubling signatures")
    s.add_argument("--s", required=True)
    s.add_argument("--sp", required=True)
    s.set_defaults(func=cmd_doubling)

    s = sub.add_parser("plan", parents=[common], help="lifting-chain growth planner")
    s.add_argument("--start", required=True)
    s.add_argument("--nu", required=True)
    s.add_argument("--via", action="append")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("psi", parents=[common], help="evaluate Psi on Cartan eigenvalues")
    s.add_argument("--eig", dest="eigenvalues", required=True, help="comma separated, e.g. 4,1/4")
    s.set_defaults(func=cmd_psi)
    return p


def render(doc: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        cols = list(dict.fromkeys(k for r in rows for k in r))
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in cols})
        return buf.getvalue()
    lines = [f"schema_version: {doc['schema_version']}", f"command: {doc['command']}"]
    for r in rows:
        lines.append("  ".join(f"{k}={_cell(v)}" for k, v in r.items()))
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    return "\n".join(lines) + "\n"


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return "" if v is None else v


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if not hasattr(a, "func"):
            raise UsageError(parser.format_usage().strip())
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    command = a.command + (f" {a.action}" if getattr(a, "action", None) else "")
    head = {"schema_version": SCHEMA_VERSION, "command": command}
    code = EXIT_OK
    try:
        doc, rows = a.func(a)
        doc = {**head, "result": doc}
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except orbits.CapExceeded as e:
        doc, rows, code = {**head, "error": str(e), "kind": "cap"}, [], EXIT_CAP
    except conservation.Contradiction as e:
        doc = {**head, "error": e.message, "kind": "contradiction", "conflict": [f.to_json() for f in e.facts]}
        rows, code = [f.to_json() for f in e.facts], EXIT_MATH
    except (moment_descent.NotInImage, moment_descent.NoUniqueMaximum) as e:
        doc, rows, code = {**head, "error": str(e), "kind": "infeasible"}, [], EXIT_MATH
    except (ValueError, KeyError, TypeError) as e:
        print(f"theta {command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render(doc, rows, a.format), a.out)
    if code != EXIT_OK:
        print(f"theta {command}: {doc['error']}", file=sys.stderr)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
