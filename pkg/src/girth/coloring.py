"""Two-colorings for color coding, random and from a verified perfect hash family."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

log = logging.getLogger(__name__)

# Colors are stored as booleans: False = C1, True = C2.
C1, C2 = False, True
TARGET = (C1, C2, C2, C1)

DETERMINISTIC_CAP = 1 << 16
EXHAUSTIVE_LIMIT = 800_000  # max number of 4-subsets checked exhaustively


@dataclass(frozen=True)
class Coloring:
    colors: np.ndarray  # bool per vertex, True = C2
    tag: str = ""

    def __hash__(self):
        return hash(self.colors.tobytes())

    def pattern(self, vertices) -> tuple[bool, ...]:
        return tuple(bool(self.colors[v]) for v in vertices)


def default_trials(n: int) -> int:
    """Smallest count with (15/16)^trials <= n^-3, rounded up to 48 ln n."""
    return math.ceil(48 * math.log(max(n, 2)))


def sample_colorings(n: int, trials: int | None = None, seed: int = 0) -> list[Coloring]:
    if trials is None:
        trials = default_trials(n)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng([seed, 0xC010])
    bits = rng.random((trials, n)) < 0.5
    return [Coloring(bits[i].copy(), f"random:{seed}:{i}") for i in range(trials)]


class FamilyTooLarge(ValueError):
    pass


def _subsets(n: int) -> np.ndarray:
    return np.array(list(itertools.combinations(range(n), 4)), dtype=np.int64).reshape(-1, 4)


def _separates(f: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    v = f[subsets]
    distinct = np.ones(len(subsets), dtype=bool)
    for i in range(4):
        for j in range(i + 1, 4):
            distinct &= v[:, i] != v[:, j]
    return distinct


@lru_cache(maxsize=32)
def perfect_hash_family(n: int, seed: int = 0) -> tuple[np.ndarray, ...]:
    """Functions [n] -> {0,1,2,3} such that every 4-subset is split by one of them.

    Greedy over random candidates. When C(n,4) <= EXHAUSTIVE_LIMIT the cover
    is verified over all subsets; above that, functions are added until a
    union bound over all subsets drops below 1e-9 and the result is then
    spot-checked on random subsets.
    """
    if n > DETERMINISTIC_CAP:
        raise FamilyTooLarge(f"n={n} exceeds the deterministic cap {DETERMINISTIC_CAP}")
    rng = np.random.default_rng([seed, 0x4A5])
    if n <= 4:
        return (np.arange(n, dtype=np.int64),)
    family: list[np.ndarray] = []
    if math.comb(n, 4) <= EXHAUSTIVE_LIMIT:
        uncovered = _subsets(n)
        while len(uncovered):
            best, best_hit = None, None
            for _ in range(12):
                f = rng.integers(0, 4, size=n)
                hit = _separates(f, uncovered)
                if best is None or hit.sum() > best_hit.sum():
                    best, best_hit = f, hit
            family.append(best)
            uncovered = uncovered[~best_hit]
        return tuple(family)
    # a random function splits a fixed 4-subset with probability 4!/4^4 = 3/32
    need = math.ceil((math.log(math.comb(n, 4)) + 9 * math.log(10)) / -math.log(1 - 3 / 32))
    family = [rng.integers(0, 4, size=n) for _ in range(need)]
    probe = np.array([rng.choice(n, size=4, replace=False) for _ in range(2000)])
    covered = np.zeros(len(probe), dtype=bool)
    for f in family:
        covered |= _separates(f, probe)
    if not covered.all():
        raise RuntimeError("perfect hash family failed its spot check")
    return tuple(family)


def deterministic_colorings(n: int) -> list[Coloring]:
    """Every ordered tuple of <= 4 distinct vertices gets (C1, C2, C2, C1) somewhere.

    Composes the 4-perfect family with all 16 maps {0,1,2,3} -> {C1, C2}.
    """
    family = perfect_hash_family(n)
    out: list[Coloring] = []
    seen = set()
    for fi, f in enumerate(family):
        for mi, bits in enumerate(itertools.product((C1, C2), repeat=4)):
            colors = np.array(bits, dtype=bool)[f] if n else np.zeros(0, dtype=bool)
            key = colors.tobytes()
            if key in seen:
                continue
            seen.add(key)
            out.append(Coloring(colors, f"family:{fi}:{mi}"))
    return out


def colorings_for(n: int, deterministic: bool, trials: int | None, seed: int) -> list[Coloring]:
    if deterministic:
        try:
            return deterministic_colorings(n)
        except FamilyTooLarge as exc:
            log.warning("%s; falling back to random colorings", exc)
    return sample_colorings(n, trials, seed)
