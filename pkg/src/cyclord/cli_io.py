"""Structure files and the ``cyclord`` command line.

A structure file is a JSON object with ``"v": 1``, a ``kind`` (mv, pco or
co) and either explicit tables or one generator key.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import jsonschema

from .mv_core import (
    MvAlgebra,
    StructureError,
    algebra_predicates,
    build_mv,
    check_mv_axioms,
    is_chain,
    make_gamma,
    product,
    shape_classify,
)
from .pco import (
    FinitePco,
    LatticeQuotientPco,
    NotInACClass,
    build_pco,
    canonical_mv,
    check_ac_class,
    check_pco_axioms,
    is_lco,
    make_cyclic_group,
    make_product_pco,
    unwound_op,
    wound_round,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ParseError(ValueError):
    pass


_int_table = {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}
_int_list = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_pos_vector = {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}}

SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "v": {"const": 1},
        "kind": {"enum": ["mv", "pco", "co"]},
        "size": {"type": "integer", "minimum": 1},
        "oplus": _int_table,
        "add": _int_table,
        "neg": _int_list,
        "zero": {"type": "integer", "minimum": 0},
        "R": {
            "type": "array",
            "items": {"type": "array", "minItems": 3, "maxItems": 3,
                      "items": {"type": "integer", "minimum": 0}},
        },
        "labels": {"type": "array"},
        "gamma": _pos_vector,
        "cyclic": {"type": "integer", "minimum": 1},
        "wound": _pos_vector,
        "product": {"type": "array", "minItems": 1, "items": {"$ref": "#"}},
    },
    "additionalProperties": False,
    "dependentRequired": {"oplus": ["neg", "zero"], "add": ["neg", "zero", "R"]},
    "oneOf": [
        {"required": ["oplus", "neg", "zero"], "properties": {"kind": {"const": "mv"}}},
        {"required": ["add", "neg", "zero", "R"], "properties": {"kind": {"enum": ["pco", "co"]}}},
        {"required": ["gamma"], "properties": {"kind": {"const": "mv"}}},
        {"required": ["cyclic"], "properties": {"kind": {"enum": ["pco", "co"]}}},
        {"required": ["wound"], "properties": {"kind": {"const": "pco"}}},
        {"required": ["product"]},
    ],
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _path(err) -> str:
    return "/" + "/".join(str(p) for p in err.absolute_path)


def _tupleize(x):
    return tuple(_tupleize(v) for v in x) if isinstance(x, list) else x


def _listify(x):
    return [_listify(v) for v in x] if isinstance(x, tuple) else x


def _build(doc: dict, where: str = ""):
    kind = doc["kind"]
    labels = [_tupleize(x) for x in doc["labels"]] if "labels" in doc else None
    if "size" in doc:
        n = doc["size"]
        got = len(doc["neg"])
        if got != n:
            raise ParseError(f"{where}/neg: length {got} does not match size {n}")
    if "gamma" in doc:
        return make_gamma(doc["gamma"])
    if "cyclic" in doc:
        return make_cyclic_group(doc["cyclic"])
    if "wound" in doc:
        return wound_round(doc["wound"])
    if "product" in doc:
        parts = [_build(p, f"{where}/product/{i}") for i, p in enumerate(doc["product"])]
        for i, p in enumerate(parts):
            if p.__class__ is not parts[0].__class__ or isinstance(p, LatticeQuotientPco):
                raise ParseError(f"{where}/product/{i}: factors must be explicit structures of one kind")
        acc = parts[0]
        for p in parts[1:]:
            acc = product(acc, p) if isinstance(acc, MvAlgebra) else make_product_pco(acc, p)
        return acc
    if kind == "mv":
        return build_mv(doc["oplus"], doc["neg"], doc["zero"], labels)
    return build_pco(doc["add"], doc["neg"], doc["zero"], triples=doc["R"], labels=labels)


def _closest_variant(err):
    # the variant with the fewest complaints; a wrong value beats a missing key
    by_branch: dict = {}
    for e in err.context:
        by_branch.setdefault(e.relative_schema_path[0], []).append(e)
    if not by_branch:
        return err
    fewest = min(len(v) for v in by_branch.values())
    cands = [e for v in by_branch.values() if len(v) == fewest for e in v]
    cands.sort(key=lambda e: (e.validator == "required", list(e.absolute_path) == []))
    return cands[0]


def parse_structure(data: bytes | str):
    """Parse and validate a structure document; errors carry a JSON path."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    errors = list(_VALIDATOR.iter_errors(doc))
    if errors:
        # a named missing or malformed key says more than "matches no variant"
        specific = [e for e in errors if e.validator != "oneOf"]
        err = jsonschema.exceptions.best_match(specific) if specific else _closest_variant(errors[0])
        raise ParseError(f"schema violation at {_path(err)}: {err.message}")
    try:
        S = _build(doc)
    except StructureError as exc:
        raise ParseError(f"closure violation: {exc}") from None
    kind = doc["kind"]
    if kind == "mv" and not isinstance(S, MvAlgebra):
        raise ParseError("/kind: generator does not produce an MV-algebra")
    if kind in ("pco", "co") and isinstance(S, MvAlgebra):
        raise ParseError("/kind: generator produces an MV-algebra")
    if kind == "co" and not check_pco_axioms(S).is_co:
        raise ParseError("/kind: structure is not a cyclically ordered group")
    return S


def structure_doc(S) -> dict:
    if isinstance(S, MvAlgebra):
        doc = {"kind": "mv", "size": S.size, "oplus": S.oplus.tolist(),
               "neg": S.neg.tolist(), "zero": S.zero}
    elif isinstance(S, LatticeQuotientPco):
        return {"v": 1, "kind": "pco", "wound": list(S.u)}
    elif isinstance(S, FinitePco):
        kind = "co" if S.axiom_report.is_co else "pco"
        doc = {"kind": kind, "size": S.size, "add": S.add_table.tolist(),
               "neg": S.neg_table.tolist(), "zero": S.zero,
               "R": [list(t) for t in sorted(S.triples())]}
    else:
        raise StructureError(f"cannot serialize {type(S).__name__}")
    if S.labels is not None:
        doc["labels"] = [_listify(x) for x in S.labels]
    doc["v"] = 1
    return doc


def serialize_structure(S) -> bytes:
    """Canonical JSON: sorted keys, explicit tables, sorted triples, trailing newline."""
    text = json.dumps(structure_doc(S), sort_keys=True, separators=(",", ":"))
    return (text + "\n").encode("utf-8")


# -- command line ----------------------------------------------------------

def _load(path: str):
    try:
        with open(path, "rb") as fh:
            return parse_structure(fh.read())
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _emit(text: str | bytes, out: str | None) -> None:
    if isinstance(text, str):
        text = text.encode("utf-8")
    if out:
        with open(out, "wb") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text.decode("utf-8"))


def _report(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print("\n".join(lines))


def _cmd_make(a) -> int:
    if a.gamma:
        S = make_gamma(a.gamma)
    elif a.cyclic is not None:
        S = make_cyclic_group(a.cyclic)
    elif a.wound:
        S = wound_round(a.wound)
    else:
        parts = [_load(p) for p in a.product]
        S = parts[0]
        for p in parts[1:]:
            S = product(S, p) if isinstance(S, MvAlgebra) else make_product_pco(S, p)
    _emit(serialize_structure(S), a.output)
    return EXIT_OK


def _need(S, cls, what):
    if not isinstance(S, cls):
        raise ParseError(f"{what} needs a {cls.__name__} input")


def _cmd_check(a) -> int:
    S = _load(a.file)
    ok, payload, lines = True, {}, []
    if a.mv_axioms:
        _need(S, MvAlgebra, "--mv-axioms")
        rep = check_mv_axioms(S)
        ok &= rep.passed
        payload["mv_axioms"] = {k: v for k, v in rep.witnesses.items()}
        lines.append(str(rep))
    if a.pco_axioms:
        _need(S, FinitePco, "--pco-axioms")
        rep = check_pco_axioms(S)
        ok &= rep.passed
        payload["pco_axioms"] = dict(rep.witnesses, is_co=rep.is_co)
        lines.append(str(rep))
    if a.ac_class:
        if isinstance(S, MvAlgebra):
            raise ParseError("--ac-class needs a p.c.o. group")
        rep = check_ac_class(S)
        ok &= rep.passed
        payload["ac_class"] = rep.witnesses
        lines.append(str(rep))
    if a.lco:
        if isinstance(S, MvAlgebra):
            raise ParseError("--lco needs a p.c.o. group")
        val = is_lco(S)
        ok &= val
        payload["lco"] = val
        lines.append(f"l-c.o.: {val}")
    if a.predicates:
        _need(S, MvAlgebra, "--predicates")
        preds = algebra_predicates(S)
        payload["predicates"] = dict(vars(preds), shape=shape_classify(S).value)
        lines += [f"{k}: {v}" for k, v in payload["predicates"].items()]
    if not payload:
        raise ParseError("check needs at least one of --mv-axioms, --pco-axioms, --ac-class, --lco, --predicates")
    payload["holds"] = bool(ok)
    _report(payload, a.json, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_convert(a) -> int:
    from .correspondence import chain_from_co, co_from_chain, unit_vector

    S = _load(a.file)
    if a.co_from_chain:
        _need(S, MvAlgebra, "--co-from-chain")
        out = co_from_chain(S)
    elif a.chain_from_co:
        _need(S, FinitePco, "--chain-from-co")
        out = chain_from_co(S)
    elif a.canonical_mv:
        if isinstance(S, MvAlgebra):
            raise ParseError("--canonical-mv needs a p.c.o. group")
        try:
            out = canonical_mv(S)
        except NotInACClass as exc:
            print(f"not convertible: {exc}", file=sys.stderr)
            return EXIT_FAIL
    elif a.wound_round:
        _need(S, MvAlgebra, "--wound-round")
        out = wound_round(unit_vector(S))
    else:
        _need(S, FinitePco, "--unwound")
        return _unwound_report(S, a.output)
    _emit(serialize_structure(out), a.output)
    return EXIT_OK


def _unwound_report(C: FinitePco, out: str | None) -> int:
    """Carry table of the unwound on [0, u): row g, column h holds the carry of g + h."""
    from .correspondence import unwound_window

    if not C.axiom_report.is_co:
        print("not a cyclically ordered group", file=sys.stderr)
        return EXIT_FAIL
    win = unwound_window(C, 0)
    carry = [[unwound_op(C, "add", g, h).n for h in win] for g in win]
    doc = {"v": 1, "unwound": {"order": [g.c for g in win], "unit": [1, C.zero], "carry": carry}}
    _emit(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n", out)
    return EXIT_OK


def _cmd_iso(a) -> int:
    from .correspondence import SizeCapExceeded, iso

    S, T = _load(a.left), _load(a.right)
    try:
        w = iso(S, T, kind=a.kind, max_size=a.max_size)
    except SizeCapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    payload = {"isomorphic": w is not None, "mapping": list(w.mapping) if w else None}
    _report(payload, a.json, ["isomorphic: " + ("yes " + str(list(w.mapping)) if w else "no")])
    return EXIT_OK if w else EXIT_FAIL


def _cmd_report(a) -> int:
    from .model_check import eq_invariants

    S = _load(a.file)
    if isinstance(S, LatticeQuotientPco):
        if not S.is_finite:
            raise ParseError("report needs a finite structure")
        S = S.as_finite()
    vec = eq_invariants(S, q_max=a.q_max, p_max=a.p_max).as_dict()
    _report(vec, a.json, [f"{k}: {v}" for k, v in vec.items()])
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclord", description="MV-algebras and cyclically ordered groups")
    sub = ap.add_subparsers(dest="cmd", required=True)

    mk = sub.add_parser("make", help="write a structure file")
    g = mk.add_mutually_exclusive_group(required=True)
    g.add_argument("--gamma", type=int, nargs="+", metavar="U")
    g.add_argument("--cyclic", type=int, metavar="N")
    g.add_argument("--wound", type=int, nargs="+", metavar="U")
    g.add_argument("--product", nargs="+", metavar="FILE")
    mk.add_argument("-o", "--output")
    mk.set_defaults(run=_cmd_make)

    ck = sub.add_parser("check", help="run axiom and property suites")
    ck.add_argument("file")
    for flag in ("--mv-axioms", "--pco-axioms", "--ac-class", "--lco", "--predicates"):
        ck.add_argument(flag, action="store_true")
    ck.add_argument("--json", action="store_true")
    ck.set_defaults(run=_cmd_check)

    cv = sub.add_parser("convert", help="translate between structures")
    cv.add_argument("file")
    g = cv.add_mutually_exclusive_group(required=True)
    for flag in ("--co-from-chain", "--chain-from-co", "--canonical-mv", "--wound-round", "--unwound"):
        g.add_argument(flag, action="store_true")
    cv.add_argument("-o", "--output")
    cv.set_defaults(run=_cmd_convert)

    io = sub.add_parser("iso", help="compare two structures up to isomorphism")
    io.add_argument("left")
    io.add_argument("right")
    io.add_argument("--kind", choices=["mv", "pco", "group"])
    io.add_argument("--max-size", type=int)
    io.add_argument("--json", action="store_true")
    io.set_defaults(run=_cmd_iso)

    rp = sub.add_parser("report", help="emit first-order invariants")
    rp.add_argument("file")
    rp.add_argument("--q-max", type=int, default=9)
    rp.add_argument("--p-max", type=int, default=13)
    rp.add_argument("--json", action="store_true")
    rp.set_defaults(run=_cmd_report)
    return ap


def dispatch(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except (ParseError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())
