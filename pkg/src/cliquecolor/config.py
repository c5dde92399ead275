"""Budget caps and seeded randomness.

All randomized operations derive their generators from one master seed
through named counter-based streams (Philox), so results are reproducible
independent of call order or worker count.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, replace

import numpy as np

_ENV_PREFIX = "CLIQUECOLOR_"


@dataclass(frozen=True)
class Budgets:
    max_vertices: int = 4096        # largest graph any builder will materialize
    max_petals: int = 20000         # petals per expansion call ('all' refuses beyond)
    max_exhaustive: int = 2_000_000  # lemma-6 exhaustive check: cap on C(m, 2k)
    max_definitional: int = 12      # vertex cap for definitional perfection checks


DEFAULT_BUDGETS = Budgets()


def budgets_from_env(base: Budgets = DEFAULT_BUDGETS) -> Budgets:
    """Apply CLIQUECOLOR_MAX_* environment overrides to the defaults."""
    overrides = {}
    for field in ("max_vertices", "max_petals", "max_exhaustive", "max_definitional"):
        raw = os.environ.get(_ENV_PREFIX + field.upper())
        if raw is not None:
            overrides[field] = int(raw)
    return replace(base, **overrides) if overrides else base


def stream(seed: int, name: str) -> np.random.Generator:
    """Named, counter-based random stream derived from one master seed.

    The stream name is hashed so distinct purposes ("bijection", "trial:7",
    ...) never collide, and the result does not depend on how many other
    streams were drawn first.
    """
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    words = [int.from_bytes(digest[j:j + 8], "little") for j in range(0, 32, 8)]
    ss = np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, *words])
    return np.random.Generator(np.random.Philox(ss))
