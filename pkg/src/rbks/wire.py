"""Framing helpers for the on-disk / on-the-wire blobs.

Every artifact is a UTF-8 JSON object carrying a magic string, a format
version and a kind tag; group elements and byte strings are base64 of
their canonical encodings.  Keeping the envelope uniform lets every
module reject foreign or corrupted blobs the same way.
"""

from __future__ import annotations

import base64
import json
from typing import Any, Dict

from .errors import InvalidEncoding

MAGIC = "RBKS"
WIRE_VERSION = 1


def b64e(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


def b64d(text: str) -> bytes:
    try:
        return base64.b64decode(text.encode("ascii"), validate=True)
    except (ValueError, UnicodeEncodeError) as exc:
        raise InvalidEncoding(f"bad base64 field: {exc}") from exc


def frame(kind: str, body: Dict[str, Any]) -> bytes:
    doc = {"magic": MAGIC, "version": WIRE_VERSION, "kind": kind}
    doc.update(body)
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def unframe(kind: str, blob: bytes) -> Dict[str, Any]:
    try:
        doc = json.loads(blob.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise InvalidEncoding(f"not a valid envelope: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("magic") != MAGIC:
        raise InvalidEncoding("missing magic")
    if doc.get("version") != WIRE_VERSION:
        raise InvalidEncoding(f"unsupported wire version {doc.get('version')!r}")
    if doc.get("kind") != kind:
        raise InvalidEncoding(f"expected a {kind} blob, got {doc.get('kind')!r}")
    return doc
