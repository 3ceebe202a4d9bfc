import itertools
import math

import numpy as np
import pytest

from girth.coloring import (
    C1, C2, TARGET, Coloring, colorings_for, default_trials, deterministic_colorings, perfect_hash_family,
    sample_colorings,
)


def test_seeded_colorings_repeat():
    a = sample_colorings(30, 10, seed=4)
    b = sample_colorings(30, 10, seed=4)
    assert all(np.array_equal(x.colors, y.colors) for x, y in zip(a, b))
    c = sample_colorings(30, 10, seed=5)
    assert any(not np.array_equal(x.colors, y.colors) for x, y in zip(a, c))


def test_trial_formula():
    assert default_trials(64) == 200
    assert default_trials(64) == math.ceil(48 * math.log(64))
    assert len(sample_colorings(64, seed=0)) == 200


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        sample_colorings(5, 0)


def test_pattern_frequency():
    cols = sample_colorings(4, 100_000, seed=1)
    freq = sum(c.pattern((0, 1, 2, 3)) == TARGET for c in cols) / len(cols)
    assert abs(freq - 1 / 16) <= 0.005


def test_family_n4_all_patterns():
    cols = deterministic_colorings(4)
    seen = {c.pattern((0, 1, 2, 3)) for c in cols}
    assert len(seen) == 16


def test_family_n10_random_quadruples():
    cols = np.array([c.colors for c in deterministic_colorings(10)])
    rng = np.random.default_rng(0)
    target = np.array(TARGET)
    for _ in range(1000):
        quad = rng.choice(10, size=4, replace=False)
        assert np.any(np.all(cols[:, quad] == target, axis=1))


def test_family_size_bound():
    for n in (5, 9, 14):
        assert len(deterministic_colorings(n)) <= 16 * len(perfect_hash_family(n))


def test_perfect_hash_family_separates():
    fam = perfect_hash_family(9)
    for quad in itertools.combinations(range(9), 4):
        assert any(len(set(f[list(quad)])) == 4 for f in fam)


def test_colorings_for_dispatch():
    assert len(colorings_for(12, False, 7, 0)) == 7
    det = colorings_for(6, True, None, 0)
    assert all(c.tag.startswith("family") for c in det)


def test_constants():
    assert TARGET == (C1, C2, C2, C1)
    assert Coloring(np.array([True, False])).pattern((1, 0)) == (C1, C2)
