"""Fooling constructions behind the complexity lower bound."""

import math

import numpy as np
import pytest

from adaptlin import (CoefficientSource, ConeParams, Partition, Problem,
                      SingularSpectrum, adaptive_algorithm, block_norm,
                      cone_membership, fooling_input, fooling_pair,
                      fooling_scale, orthogonal_blind_spot,
                      solution_separation)

from conftest import unit_spectrum

CONE = ConeParams(2.0, 0.5)


def unit_problem():
    return Problem(unit_spectrum(), Partition.doubling(1), CONE)


def harmonic_problem():
    return Problem(SingularSpectrum.algebraic(1.0, 1.0),
                   Partition.doubling(1), CONE)


# -- amplitude and base input ------------------------------------------------

def test_fooling_scale_hand_value():
    # flat weights, two blocks: c**2 = rho**2 / ((10/9) * (16 + 4 + 1))
    c = fooling_scale(unit_problem(), 1.0, 1.0, 2)
    assert c ** 2 == pytest.approx(9.0 / 210.0, rel=1e-14)
    assert c == pytest.approx(0.20701966780270625, rel=1e-14)


def test_fooling_scale_proportional_to_radius():
    problem = unit_problem()
    assert fooling_scale(problem, 1.0, 5.0, 2) == pytest.approx(
        5.0 * fooling_scale(problem, 1.0, 1.0, 2), rel=1e-14)


def test_fooling_input_dense_layout():
    problem = unit_problem()
    f = fooling_input(problem, 1.0, 1.0, 2)
    c = fooling_scale(problem, 1.0, 1.0, 2)
    assert np.allclose(f.dense(4), [0.0, 2.0 * c, 0.0, c], rtol=1e-14)


def test_fooling_input_profile_is_exactly_geometric():
    problem = harmonic_problem()
    blocks = 6
    f = fooling_input(problem, 2.0, 1.0, blocks)
    c = fooling_scale(problem, 2.0, 1.0, blocks)
    b = problem.cone.b
    for k in range(1, blocks + 1):
        assert block_norm(problem, f, k) == pytest.approx(
            c * b ** (k - blocks), rel=1e-10)


def test_fooling_input_is_member_with_norm_inside_ball():
    problem = harmonic_problem()
    for rho in (1.0, 7.0):
        f = fooling_input(problem, 2.0, rho, 5)
        assert cone_membership(problem, f).member
        assert f.norm() <= rho * (1 + 1e-12)


def test_fooling_rejects_understated_ratio():
    # the harmonic spectrum drops by 2 across each doubling block
    with pytest.raises(ValueError):
        fooling_input(harmonic_problem(), 1.5, 1.0, 4)


def test_fooling_requires_head():
    problem = Problem(SingularSpectrum.algebraic(1.0, 1.0),
                      Partition.zero_then_doubling(4), CONE)
    with pytest.raises(ValueError, match="n_0 >= 1"):
        fooling_input(problem, 2.0, 1.0, 3)


# -- fooling pairs -----------------------------------------------------------

def make_pair(problem, ratio, rho=1.0, blocks=6, zeroed=(1, 2, 5)):
    return fooling_pair(problem, ratio, rho, blocks, zeroed)


def test_pair_identity_between_amplitude_and_shift():
    pair = make_pair(harmonic_problem(), 2.0)
    a = CONE.a
    gap = abs(a * (pair.amplitude - pair.shift * pair.ratio)
              - (pair.amplitude + pair.shift * pair.ratio))
    assert gap <= 1e-12 * max(1.0, pair.amplitude)


def test_pair_bump_constraints():
    problem = harmonic_problem()
    zeroed = (1, 2, 5, 9)
    pair = fooling_pair(problem, 2.0, 1.0, 6, zeroed)
    for i in zeroed:
        assert abs(pair.bump[i - 1]) < 1e-10
    base_vec = pair.base.dense(pair.bump.size)
    assert abs(float(np.dot(pair.bump, base_vec))) < 1e-10
    # largest per-block piece of the bump is normalized to one
    b = problem.cone.b
    norms = []
    for k in range(0, pair.blocks + 1):
        lo = problem.partition.boundary(max(k - 1, 0)) + 1 if k else 1
        hi = problem.partition.boundary(k)
        weight = (b ** (k - pair.blocks)
                  / problem.spectrum.value(problem.partition.boundary(k)))
        norms.append(np.linalg.norm(pair.bump[lo - 1:hi]) / weight)
    assert max(norms) == pytest.approx(1.0, rel=1e-12)


def test_pair_sigma_profile_sandwich():
    problem = harmonic_problem()
    pair = make_pair(problem, 2.0)
    b = problem.cone.b
    c, eta, r = pair.amplitude, pair.shift, pair.ratio
    for k in range(1, pair.blocks + 1):
        for f in (pair.plus, pair.minus):
            s = block_norm(problem, f, k)
            assert s >= b ** (k - pair.blocks) * (c - eta * r) * (1 - 1e-12)
            assert s <= b ** (k - pair.blocks) * (c + eta * r) * (1 + 1e-12)


def test_pair_members_inside_ball():
    problem = harmonic_problem()
    rho = 3.0
    pair = fooling_pair(problem, 2.0, rho, 6, (3, 4))
    for f in (pair.base, pair.plus, pair.minus):
        assert cone_membership(problem, f).member
        assert f.norm() <= rho * (1 + 1e-10)


def test_pair_separation_at_least_twice_shift():
    problem = harmonic_problem()
    pair = make_pair(problem, 2.0)
    separation = solution_separation(problem, pair)
    assert separation >= 2.0 * pair.shift * (1 - 1e-12)
    # and matches the direct solution-space distance of the two inputs
    idx = np.arange(1, pair.bump.size + 1)
    lam = problem.spectrum.values(idx)
    direct = np.linalg.norm(lam * (pair.plus.dense(pair.bump.size)
                                   - pair.minus.dense(pair.bump.size)))
    assert separation == pytest.approx(float(direct), rel=1e-12)


def test_pair_fools_the_adaptive_run():
    problem = harmonic_problem()
    eps = 0.05
    blocks = 8
    probe = fooling_input(problem, 2.0, 1.0, blocks)
    run = adaptive_algorithm(problem, probe, eps)
    assert run.cost + 1 < problem.partition.boundary(blocks)
    pair = fooling_pair(problem, 2.0, 1.0, blocks, tuple(run.indices.tolist()))
    run_plus = adaptive_algorithm(problem, pair.plus, eps)
    run_minus = adaptive_algorithm(problem, pair.minus, eps)
    assert np.array_equal(run_plus.indices, run_minus.indices)
    assert np.array_equal(run_plus.values, run_minus.values)
    # yet the two true solutions sit strictly apart
    assert solution_separation(problem, pair) > 0.0


def test_pair_infeasible_when_constraints_fill_dimension():
    problem = unit_problem()
    # two blocks span four coordinates; zeroing three leaves only the
    # orthogonality constraint no slack
    with pytest.raises(ValueError, match="available dimensions"):
        fooling_pair(problem, 1.0, 1.0, 2, (1, 2, 3))


def test_pair_deterministic():
    problem = harmonic_problem()
    first = make_pair(problem, 2.0)
    second = make_pair(problem, 2.0)
    assert np.array_equal(first.bump, second.bump)
    assert np.array_equal(first.plus.dense(64), second.plus.dense(64))


# -- orthogonal blind spots --------------------------------------------------

def test_blind_spot_single_free_coordinate():
    vec = orthogonal_blind_spot([1], 2)
    assert np.allclose(vec, [0.0, 1.0])


def test_blind_spot_nothing_sampled():
    vec = orthogonal_blind_spot([], 1)
    assert np.allclose(vec, [1.0])


def test_blind_spot_two_free_coordinates():
    vec = orthogonal_blind_spot([1, 3], 4)
    assert np.allclose(vec, [0.0, 1.0 / math.sqrt(2.0), 0.0,
                             1.0 / math.sqrt(2.0)])
    assert np.linalg.norm(vec) == pytest.approx(1.0, rel=1e-15)


def test_blind_spot_infeasible_when_everything_sampled():
    with pytest.raises(ValueError, match="unsampled"):
        orthogonal_blind_spot([1, 2, 3], 3)
