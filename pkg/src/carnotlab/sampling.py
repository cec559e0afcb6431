"""Seeded sampling helpers shared across modules.

All draws go through explicit numpy Generators so every experiment is a
pure function of its seed.  Streams that feed running estimates are drawn
in single chunked calls, which keeps sample prefixes stable when only the
sample count changes.
"""

from __future__ import annotations

import numpy as np

from .liealg import GradedLieAlgebra


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """Independent substreams; stable under the number of consumers."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def unit_sphere(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform points on S^{dim-1}; a single point for dim == 1 is +-1."""
    v = rng.normal(size=(count, dim))
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    norm[norm == 0] = 1.0
    return v / norm


def layer_ball_elements(
    alg: GradedLieAlgebra, rng: np.random.Generator, count: int, radius: float = 1.0
) -> np.ndarray:
    """Elements with each layer-k block uniform in the Euclidean ball radius**k.

    The result satisfies N_infty(g) <= radius for unit weights, giving a
    convenient box for convexity and quasi-triangle sampling.
    """
    out = np.empty((count, alg.total_dim))
    for k, sl in enumerate(alg.layer_slices, start=1):
        dim = sl.stop - sl.start
        direction = unit_sphere(rng, count, dim)
        r = rng.uniform(size=(count, 1)) ** (1.0 / dim)
        out[:, sl] = direction * r * radius**k
    return out


def coordinate_box_elements(
    alg: GradedLieAlgebra,
    rng: np.random.Generator,
    count: int,
    bounds: np.ndarray,
) -> np.ndarray:
    """Coordinates uniform in the centered box with per-layer half-widths."""
    out = rng.uniform(-1.0, 1.0, size=(count, alg.total_dim))
    for k, sl in enumerate(alg.layer_slices):
        out[:, sl] *= bounds[k]
    return out
