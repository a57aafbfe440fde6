"""Reading and writing complexes.

Text format: one facet per line, whitespace-separated labels, ``#`` starts a
comment.  Labels that look like integers are read as integers.

Structured format: a JSON document ``{"labels": [...], "facets": [[...], ...]}``
where ``labels`` is optional and fixes the vertex order.  A report document
with a ``"complex"`` member is accepted as well.
"""

from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path

from .complex import SimplicialComplex, from_facets
from .errors import EmptyInput, FaceRingError, ParseError

_TOKEN = re.compile(r"[A-Za-z0-9_.:+\-]+$")


def _label(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def parse_text(text: str) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        facet = []
        for match in re.finditer(r"\S+", body):
            token = match.group()
            if not _TOKEN.match(token):
                raise ParseError(f"invalid vertex label {token!r}", lineno, match.start() + 1)
            lab = _label(token)
            if lab in facet:
                raise ParseError(f"vertex {token!r} repeated in facet", lineno, match.start() + 1)
            facet.append(lab)
        facets.append(facet)
    if not facets:
        raise ParseError("no facets found")
    return from_facets(facets)


def dump_text(delta: SimplicialComplex) -> str:
    for lab in delta.labels:
        if not _TOKEN.match(str(lab)) or isinstance(lab, tuple):
            raise FaceRingError(f"label {lab!r} cannot be written in the text format; use the document format")
    return "".join(" ".join(str(v) for v in f) + "\n" for f in delta.facets)


def _hashable(value):
    if isinstance(value, list):
        return tuple(_hashable(v) for v in value)
    return value


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


def complex_to_doc(delta: SimplicialComplex) -> dict:
    return {
        "labels": [_jsonable(lab) for lab in delta.labels],
        "facets": [[_jsonable(v) for v in f] for f in delta.facets],
    }


def complex_from_doc(doc: dict) -> SimplicialComplex:
    if "complex" in doc and "facets" not in doc:
        doc = doc["complex"]
    if not isinstance(doc, dict) or not isinstance(doc.get("facets"), list):
        raise ParseError("document needs a 'facets' list")
    facets = doc["facets"]
    if any(not isinstance(f, list) for f in facets):
        raise ParseError("every facet must be a list of labels")
    labels = doc.get("labels")
    try:
        return from_facets(
            [[_hashable(v) for v in f] for f in facets],
            labels=None if labels is None else [_hashable(v) for v in labels],
        )
    except EmptyInput as exc:
        raise ParseError(str(exc)) from None
    except FaceRingError as exc:
        raise ParseError(str(exc)) from None


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def complex_hash(delta: SimplicialComplex) -> str:
    return hashlib.sha256(canonical_json(complex_to_doc(delta)).encode()).hexdigest()[:16]


def loads(text: str) -> SimplicialComplex:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return complex_from_doc(doc)
    return parse_text(text)


def load(path) -> SimplicialComplex:
    return loads(Path(path).read_text())


def dumps(delta: SimplicialComplex, fmt: str = "text") -> str:
    if fmt == "text":
        return dump_text(delta)
    return json.dumps(complex_to_doc(delta), indent=2) + "\n"
