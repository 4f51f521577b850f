"""Resource caps shared by the enumerators.

Defaults can be overridden through the FACTORLAB_CAP environment variable,
either a bare integer applied to every cap or a comma list such as
``fiber=200000,completion=5000``.
"""
from __future__ import annotations

import os

DEFAULTS = {
    "fiber": 1_000_000,
    "completion": 100_000,
    "search": 200_000,
}


def cap(name: str) -> int:
    raw = os.environ.get("FACTORLAB_CAP", "").strip()
    if not raw:
        return DEFAULTS[name]
    if raw.isdigit():
        return int(raw)
    for item in raw.split(","):
        key, _, value = item.partition("=")
        if key.strip() == name and value.strip().isdigit():
            return int(value)
    return DEFAULTS[name]
