"""Within-document (local) term weights.

Four schemes, all functions of a term's in-document frequency ``tf`` and of
``max_tf``, the largest frequency of any term in the same document:

tp      1.0 if the term is present, else 0.0
tf      the raw frequency
atf     k + (1 - k) * tf / max_tf  (augmented frequency; present terms only)
logtf   log(tf + 1), natural log
"""

from __future__ import annotations

import math

LOCAL_SCHEMES = ("tp", "tf", "atf", "logtf")


def local_weight(scheme: str, tf: int, max_tf: int, k: float = 0.5) -> float:
    """Evaluate one local scheme.

    ``max_tf`` must be at least ``max(1, tf)``; ``atf`` is undefined for
    absent terms (sparse vectors never hold them), so ``tf == 0`` raises.
    """
    if scheme not in LOCAL_SCHEMES:
        raise ValueError(f"unknown local scheme {scheme!r}; expected one of {LOCAL_SCHEMES}")
    if max_tf < 1:
        raise ValueError(f"max_tf must be positive, got {max_tf}")
    if tf < 0 or tf > max_tf:
        raise ValueError(f"tf must lie in [0, max_tf], got tf={tf}, max_tf={max_tf}")
    if scheme == "tp":
        return 1.0 if tf > 0 else 0.0
    if scheme == "tf":
        return float(tf)
    if scheme == "logtf":
        return math.log(tf + 1)
    # atf
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"atf constant k must lie in [0, 1], got {k}")
    if tf == 0:
        raise ValueError("atf is undefined for absent terms (tf == 0)")
    return k + (1.0 - k) * tf / max_tf
