"""Size caps for exhaustive routines.

Defaults are tuned so every routine finishes at desk scale.  They can be
overridden with the ``DIAMETER_LAB_CAPS`` environment variable, which must hold
a JSON object mapping cap names to integers, e.g.
``DIAMETER_LAB_CAPS='{"johnson_exact_nodes": 56}'``.
"""

from __future__ import annotations

import json
import os

from .errors import SizeLimit

DEFAULT_CAPS = {
    "canonical_n": 12,
    "canonical_frontier": 200_000,
    "johnson_exact_nodes": 35,
    "flag_n": 200,
    "clm_search_facets": 15,
    "clm_search_n": 5,
    "legal_n": 4,
    "legal_N": 8,
    "nonpure_n": 10,
    "join_facets": 2_000_000,
    "decompose_facets": 400,
}


def get_cap(name: str) -> int:
    raw = os.environ.get("DIAMETER_LAB_CAPS")
    if raw:
        try:
            overrides = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"DIAMETER_LAB_CAPS is not valid JSON: {exc}") from None
        if name in overrides:
            return int(overrides[name])
    return DEFAULT_CAPS[name]


def check_cap(name: str, value: int, what: str = "") -> None:
    cap = get_cap(name)
    if value > cap:
        label = what or name
        raise SizeLimit(f"{label} = {value} exceeds cap {name}={cap}")
