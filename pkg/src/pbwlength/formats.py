"""JSON formats: matrix-set files, reports and rewrite certificates.

All scalars travel as strings ("3", "-1/2") so nothing depends on a JSON
reader's number handling.  docs/formats.md has the full schemas.
"""
from __future__ import annotations

import hashlib
import json

from .exact_linalg import FieldError, FieldSpec, SquareMatrix
from .pbw import PbwCounterexample, PbwReport
from .rewrite import RewriteCertificate, RewriteStep
from .span_engine import GeneratorSet

FORMAT_VERSION = 1

__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "parse_matrix_set",
    "load_matrix_set",
    "matrix_set_to_json",
    "dumps",
    "generator_digest",
    "pbw_to_json",
    "pbw_from_json",
    "certificate_to_json",
    "certificate_from_json",
]


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse_matrix_set(obj) -> GeneratorSet:
    """Validate a decoded MatrixSetFile and build the generator set."""
    if not isinstance(obj, dict):
        raise FormatError("top level must be a JSON object")
    if obj.get("format", FORMAT_VERSION) != FORMAT_VERSION:
        raise FormatError(f"unsupported format {obj.get('format')!r}")
    try:
        field = FieldSpec.from_json(obj.get("field"))
    except FieldError as exc:
        raise FormatError(f"field: {exc}") from None
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise FormatError(f"n: expected an integer >= 2, got {n!r}")
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise FormatError("generators: expected a non-empty array of matrices")
    mats = []
    for g_idx, rows in enumerate(gens):
        where = f"generators[{g_idx}]"
        if not isinstance(rows, list) or len(rows) != n:
            raise FormatError(f"{where}: expected {n} rows")
        entries = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise FormatError(f"{where}[{i}]: expected {n} entries")
            out = []
            for j, x in enumerate(row):
                try:
                    out.append(field.parse(x))
                except FieldError as exc:
                    raise FormatError(f"{where}[{i}][{j}] = {x!r}: {exc}") from None
            entries.append(tuple(out))
        mats.append(SquareMatrix(field, tuple(entries)))
    names = obj.get("names")
    if names is not None:
        if not isinstance(names, list) or len(names) != len(mats) or not all(isinstance(s, str) for s in names):
            raise FormatError("names: expected one string per generator")
        names = tuple(names)
    return GeneratorSet(field, tuple(mats), names)


def load_matrix_set(text: str) -> GeneratorSet:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_matrix_set(obj)


def matrix_set_to_json(g: GeneratorSet) -> dict:
    out = {
        "format": FORMAT_VERSION,
        "field": g.field.to_json(),
        "n": g.n,
        "generators": [m.to_strings() for m in g.mats],
    }
    if g.names:
        out["names"] = list(g.names)
    return out


def generator_digest(g: GeneratorSet) -> str:
    """sha256 of the canonical MatrixSetFile (names excluded)."""
    obj = matrix_set_to_json(g)
    obj.pop("names", None)
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def pbw_to_json(r: PbwReport) -> dict:
    out = {"checked_up_to": r.checked_up_to, "verdict": r.verdict, "words_checked": r.words_checked,
           "counterexample": None}
    if r.counterexample:
        ce = r.counterexample
        out["counterexample"] = {
            "word": list(ce.word), "length": ce.length, "value": ce.value,
            "candidates": [list(w) for w in ce.candidates], "quotient_dim": ce.quotient_dim,
        }
    return out


def pbw_from_json(obj: dict) -> PbwReport:
    ce = obj.get("counterexample")
    if ce:
        ce = PbwCounterexample(tuple(ce["word"]), ce["length"], ce["value"],
                               tuple(tuple(w) for w in ce["candidates"]), ce["quotient_dim"])
    return PbwReport(obj["checked_up_to"], obj["verdict"], ce, obj.get("words_checked", 0))


def certificate_to_json(c: RewriteCertificate, g: GeneratorSet) -> dict:
    fmt = g.field.format
    return {
        "format": FORMAT_VERSION,
        "kind": "rewrite-certificate",
        "generators_sha256": generator_digest(g),
        "field": g.field.to_json(),
        "t": c.t,
        "input": list(c.input),
        "k": c.k,
        "N": c.N,
        "modulo_level": c.modulo_level,
        "ordered": c.ordered,
        "terms": [{"coefficient": fmt(a), "word": list(w)} for a, w in c.terms],
        "steps": [
            {"word": list(s.word), "coefficient": fmt(s.coefficient), "kind": s.kind,
             "position": s.position, "replaced": None if s.replaced is None else list(s.replaced),
             "results": [{"coefficient": fmt(a), "word": list(w)} for a, w in s.results]}
            for s in c.steps
        ],
    }


def certificate_from_json(obj: dict, g: GeneratorSet) -> RewriteCertificate:
    if obj.get("kind") != "rewrite-certificate":
        raise FormatError("not a rewrite certificate")
    F = g.field
    try:
        if FieldSpec.from_json(obj["field"]) != F:
            raise FormatError("certificate field does not match the matrix set")
        terms = [(F.parse(x["coefficient"]), tuple(x["word"])) for x in obj["terms"]]
        steps = [RewriteStep(tuple(s["word"]), F.parse(s["coefficient"]), s["kind"], s["position"],
                             None if s["replaced"] is None else tuple(s["replaced"]),
                             tuple((F.parse(r["coefficient"]), tuple(r["word"])) for r in s["results"]))
                 for s in obj["steps"]]
        return RewriteCertificate(tuple(obj["input"]), obj["k"], obj["N"], terms, obj["modulo_level"],
                                  obj["t"], bool(obj.get("ordered", False)), steps)
    except (KeyError, TypeError, FieldError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from None
