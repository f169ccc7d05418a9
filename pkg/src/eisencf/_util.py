"""Shared helpers: deterministic seed derivation and canonical JSON."""

from __future__ import annotations

import hashlib
import json


def derive_seed(master: int, label: str) -> int:
    """Stable 64-bit stream seed for (master, label); independent of hashing
    randomization and of how many sibling tasks run."""
    h = hashlib.blake2b(f"{master}:{label}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
