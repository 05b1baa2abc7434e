"""Deterministic JSON serialization of reports."""

from __future__ import annotations

import json


def _default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    return str(o)


def dumps(report, timings=None) -> str:
    body = dict(report)
    if timings is not None:
        body["timings"] = timings
    return json.dumps(body, sort_keys=True, indent=2, default=_default) + "\n"
