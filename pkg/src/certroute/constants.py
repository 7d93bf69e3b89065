"""Shared size bounds and scheme parameters.

Builders (sampling/resampling loops) and verifiers must agree bit-for-bit on
every bound, so all of them live here.  Logs are base 2, square roots are
taken on floats; the only integer-sensitive comparisons (cluster sizes) use
the float bound directly, which is exact for every count below 2**52.
"""

from __future__ import annotations

import math

# Resampling loops (landmarks, color hashes, hierarchies) give up after this
# many fresh draws and raise RetryLimitExceeded.
MAX_SAMPLING_ROUNDS = 64


class RetryLimitExceeded(RuntimeError):
    """A randomized construction failed to satisfy its bounds within the round cap."""


def cluster_limit(n: int) -> float:
    """Cluster-size bound 4*sqrt(n).  Builders enforce strictly-less, the
    verifier step 1 accepts up to and including the bound."""
    return 4.0 * math.sqrt(n)


def landmark_limit(n: int) -> float:
    """Landmark-count bound 2*sqrt(n)*log2(n), floored at 1 so the single-node
    graph (log2(1) = 0) keeps a nonempty landmark set."""
    return max(1.0, 2.0 * math.sqrt(n) * math.log2(n))


def landmark_rate(n: int) -> float:
    """Per-round inclusion probability for landmark sampling."""
    if n <= 1:
        return 1.0
    return min(1.0, math.sqrt(n) * math.log(n) / n)


def ball_size(n: int) -> int:
    """Vicinity-ball cardinality min(n, ceil(4*ln(n)*sqrt(n))), at least 1."""
    return min(n, max(1, math.ceil(4.0 * math.log(n) * math.sqrt(n))))


def color_count(n: int) -> int:
    """Number of colors ceil(sqrt(n))."""
    return max(1, math.ceil(math.sqrt(n)))


def color_class_limit(n: int) -> float:
    """Balance bound: at most 4*log2(n)*sqrt(n) identities per color."""
    return max(1.0, 4.0 * math.log2(n) * math.sqrt(n))


def hash_family_size(n: int, beta: int = 2) -> int:
    """Number of fingerprint functions k = beta*ceil(log2 n), at least 1."""
    return max(1, beta * math.ceil(math.log2(max(2, n))))


def hk_cluster_limit(n: int, k: int) -> float:
    """Hierarchical cluster bound 4*n^(1/k) (counted below the top level)."""
    return 4.0 * n ** (1.0 / k)


def hk_bunch_limit(n: int, k: int) -> float:
    """Hierarchical bunch bound 4*k*n^(1/k) (counted without the top level)."""
    return 4.0 * k * n ** (1.0 / k)


def hk_level_limit(n: int, k: int, i: int) -> float:
    """Level-size bound 2*n^(1-i/k)*log2(n) for 1 <= i <= k-1, floored at 1."""
    return max(1.0, 2.0 * n ** (1.0 - i / k) * math.log2(max(2, n)))


def hk_level_rate(n: int, k: int) -> float:
    """Per-level inclusion probability for hierarchy sampling with k >= 3.

    The bare n^(-1/k) rate starves small instances, so it is boosted by ln(n)
    and capped at 1/2 to keep the hierarchy strictly shrinking.
    """
    return min(0.5, n ** (-1.0 / k) * math.log(max(2, n)))
