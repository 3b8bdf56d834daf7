"""Adversarial inputs that certify the cost lower bound.

The construction places one coefficient per block so that the block norm
profile decays exactly geometrically, then adds a bump that vanishes at
every coordinate an algorithm sampled.  The two perturbed inputs are
indistinguishable from the base input through those samples, both stay
admissible and inside the norm ball, yet their solutions differ by a
computable separation.  Any algorithm sampling too few coefficients must
therefore err on one of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .spectrum import CoefficientSource, Problem, block_norm

_RANK_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class FoolingPair:
    """Base input, bump, and the two perturbed inputs.

    ``amplitude`` is the common scale of the base profile, ``shift`` the
    step applied along the bump, ``ratio`` the boundary ratio bound used,
    and ``blocks`` the number of profile blocks.  The bump vector is stored
    densely over coefficient indices 1..n_blocks.
    """

    base: CoefficientSource
    bump: np.ndarray
    plus: CoefficientSource
    minus: CoefficientSource
    amplitude: float
    shift: float
    ratio: float
    blocks: int


def _block_ranges(problem: Problem, blocks: int):
    """Index ranges [(lo, hi)] for the head 1..n_0 and blocks 1..blocks."""
    head = problem.partition.boundary(0)
    ranges = [(1, head)]
    for k in range(1, blocks + 1):
        ranges.append(problem.partition.block(k))
    return ranges


def _check_ratio(problem: Problem, ratio: float, blocks: int) -> None:
    if problem.partition.boundary(0) < 1:
        raise ValueError("the construction needs n_0 >= 1")
    if ratio < 1.0:
        raise ValueError("ratio must be at least 1")
    for k in range(1, blocks + 1):
        prev_boundary = problem.partition.boundary(k - 1)
        drop = (problem.spectrum.value(prev_boundary)
                / problem.spectrum.value(problem.partition.boundary(k)))
        if drop > ratio * (1.0 + 1e-12):
            raise ValueError(
                f"ratio {ratio} is below the actual boundary drop {drop} at block {k}")


def fooling_scale(problem: Problem, ratio: float, rho: float, blocks: int) -> float:
    """Amplitude c of the base profile.

    c**2 = rho**2 / ( (1 + (a-1)**2 / ((a+1)**2 ratio**2))
                      * sum_{k=0}^{blocks} b**(2(k-blocks)) / lam_{n_k}**2 ),

    sized so the base input plus a unit-blockwise bump still fits in the
    ball of radius rho.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    if blocks < 1:
        raise ValueError("need at least one block")
    if problem.partition.boundary(0) < 1:
        raise ValueError("the construction needs n_0 >= 1")
    a, b = problem.cone.a, problem.cone.b
    total = 0.0
    for k in range(0, blocks + 1):
        lam = problem.spectrum.value(problem.partition.boundary(k))
        total += b ** (2 * (k - blocks)) / (lam * lam)
    inflation = 1.0 + (a - 1.0) ** 2 / ((a + 1.0) ** 2 * ratio * ratio)
    return rho / math.sqrt(inflation * total)


def fooling_input(problem: Problem, ratio: float, rho: float, blocks: int) -> CoefficientSource:
    """Admissible input whose block norm profile is exactly c * b**(k - blocks).

    Places the single coefficient c * b**(k-blocks) / lam_{n_k} at index n_k
    for k = 1..blocks and zero elsewhere, so block k has norm c * b**(k-blocks)
    and the decay constraint holds with equality at r = 1 steps.
    """
    _check_ratio(problem, ratio, blocks)
    c = fooling_scale(problem, ratio, rho, blocks)
    b = problem.cone.b
    coeffs = np.zeros(problem.partition.boundary(blocks))
    for k in range(1, blocks + 1):
        boundary = problem.partition.boundary(k)
        lam = problem.spectrum.value(boundary)
        coeffs[boundary - 1] = c * b ** (k - blocks) / lam
    return CoefficientSource.from_vector(coeffs)


def _null_space(matrix: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the null space, as rows."""
    _, singulars, vh = np.linalg.svd(matrix, full_matrices=True)
    if matrix.shape[0] == 0:
        return vh
    cutoff = _RANK_TOLERANCE * max(matrix.shape) * (singulars[0] if singulars.size else 0.0)
    rank = int(np.sum(singulars > cutoff))
    return vh[rank:]


def fooling_pair(problem: Problem, ratio: float, rho: float, blocks: int,
                 zeroed_functionals: Sequence[int]) -> FoolingPair:
    """Base input f and perturbations f +- shift * u agreeing on sampled indices.

    The bump u is supported on indices 1..n_blocks, vanishes at every index
    in ``zeroed_functionals``, and is orthogonal to f, so f, f+ and f- are
    indistinguishable through the zeroed coordinates.  Writing u as a sum of
    per-block pieces u_k weighted by b**(k-blocks) / lam_{n_k}, the bump is
    rescaled so max_k ||u_k|| = 1; the step is shift = (a-1) c / ((a+1) ratio).
    Both perturbations then stay admissible with norm at most rho.

    Feasibility requires strictly fewer constraints than dimensions:
    |zeroed inside 1..n_blocks| + 1 < n_blocks.
    """
    _check_ratio(problem, ratio, blocks)
    a, b = problem.cone.a, problem.cone.b
    dimension = problem.partition.boundary(blocks)
    zeroed = sorted({int(i) for i in zeroed_functionals if 1 <= int(i) <= dimension})
    if len(zeroed) + 1 >= dimension:
        raise ValueError(
            f"infeasible: {len(zeroed)} zeroed functionals + 1 orthogonality "
            f"constraint must stay below the {dimension} available dimensions")

    base = fooling_input(problem, ratio, rho, blocks)
    c = fooling_scale(problem, ratio, rho, blocks)
    base_vec = base.dense(dimension)

    constraints = np.zeros((len(zeroed) + 1, dimension))
    for row, i in enumerate(zeroed):
        constraints[row, i - 1] = 1.0
    constraints[-1] = base_vec

    candidates = _null_space(constraints)
    if candidates.shape[0] == 0:
        raise ValueError("constraint system left no room for a bump")

    ranges = _block_ranges(problem, blocks)
    boundaries = [problem.partition.boundary(k) for k in range(0, blocks + 1)]
    lams = np.array([problem.spectrum.value(n) for n in boundaries])
    weights = b ** (np.arange(0, blocks + 1, dtype=np.float64) - blocks) / lams

    def piece_norms(vec):
        # ||u_k|| implied by the dense bump: u restricted to block k is
        # weights[k] * u_k, so u_k = u[block] / weights[k].
        norms = np.zeros(blocks + 1)
        for k, (lo, hi) in enumerate(ranges):
            if hi >= lo:
                norms[k] = float(np.linalg.norm(vec[lo - 1:hi])) / weights[k]
        return norms

    scores = [float(np.max(piece_norms(vec))) for vec in candidates]
    chosen = candidates[int(np.argmax(scores))]
    top = float(np.max(piece_norms(chosen)))
    if top <= 0.0:
        raise ValueError("degenerate bump; constraints admit only zero")
    bump = chosen / top

    shift = (a - 1.0) * c / ((a + 1.0) * ratio)
    plus = CoefficientSource.from_vector(base_vec + shift * bump)
    minus = CoefficientSource.from_vector(base_vec - shift * bump)
    return FoolingPair(base=base, bump=bump, plus=plus, minus=minus,
                       amplitude=c, shift=shift, ratio=ratio, blocks=blocks)


def solution_separation(problem: Problem, pair: FoolingPair) -> float:
    """Distance between the two perturbed solutions, 2 * shift * ||S(bump)||.

    Always at least 2 * shift: each block piece of the bump contributes at
    least its own norm to ||S(bump)|| after the singular values are applied,
    and the largest piece has norm one.
    """
    idx = np.arange(1, pair.bump.size + 1, dtype=np.int64)
    image = problem.spectrum.values(idx) * pair.bump
    return 2.0 * pair.shift * math.sqrt(math.fsum((image * image).tolist()))


def orthogonal_blind_spot(sampled_indices: Sequence[int], dimension: int) -> np.ndarray:
    """Nonzero coefficient vector invisible to the sampled coordinates.

    Returns a unit vector over indices 1..dimension vanishing at every
    sampled index: equal weight on all unsampled coordinates.  Whatever
    linear reconstruction an algorithm builds from those samples cannot
    distinguish an input from the same input shifted along this vector.
    """
    if dimension < 1:
        raise ValueError("dimension must be positive")
    sampled = {int(i) for i in sampled_indices if 1 <= int(i) <= dimension}
    free = [i for i in range(1, dimension + 1) if i not in sampled]
    if not free:
        raise ValueError(
            f"infeasible: all {dimension} coordinates are sampled; a blind "
            "spot needs at least one unsampled coordinate")
    vec = np.zeros(dimension)
    vec[np.array(free) - 1] = 1.0 / math.sqrt(len(free))
    return vec


def profile_norms(problem: Problem, source: CoefficientSource, blocks: int):
    """Block norms 1..blocks of a source, as a list."""
    return [block_norm(problem, source, j) for j in range(1, blocks + 1)]
