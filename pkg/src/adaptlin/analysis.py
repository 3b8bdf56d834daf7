"""Cost bounds and optimality comparisons for the solvers.

The adaptive solver's cost is n_{j*} where j* is its stopping block.  This
module bounds j* from above for all admissible inputs in a norm ball
(``stop_block_bound`` and its cheaper relaxations), bounds the cost of any
successful algorithm from below via the block index certified by the
adversarial construction (``complexity_lower_block``), and packages the
"essentially no worse" comparison between cost curves that links the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .algorithm import DEFAULT_BLOCK_LIMIT, stop_threshold
from .spectrum import (ConeParams, GuardExceeded, Problem, SingularSpectrum,
                       DEFAULT_SCAN_LIMIT, Partition)


@dataclass(frozen=True)
class CostCurve:
    """Cost of an algorithm family as a function of (epsilon, rho)."""

    evaluator: Callable[[float, float], int]
    label: str

    def cost(self, epsilon: float, rho: float) -> int:
        return int(self.evaluator(epsilon, rho))


@dataclass(frozen=True)
class RatioScan:
    """Result of scanning lam_{n_{k-1}} / lam_{n_k} over block boundaries.

    ``still_growing`` flags a running maximum that was still increasing at
    the last scanned boundary, meaning the supremum may not be attained and
    the returned value understates it.
    """

    value: float
    attained_at: int
    still_growing: bool


@dataclass(frozen=True)
class ComparisonConstants:
    """Constants controlling how the adaptive cost compares to the optimum.

    ``boundary_ratio`` bounds lam_{n_{k-1}} / lam_{n_k} over blocks,
    ``decay_floor`` bounds lam_{n_{j+1}+1} / lam_{n_j+1} from below, and
    ``tolerance_factor`` is the tolerance shrink under which the adaptive
    solver is essentially no worse than the ball-optimal one.
    """

    boundary_ratio: float
    decay_floor: float
    tolerance_factor: float

    def __post_init__(self):
        if self.boundary_ratio < 1.0:
            raise ValueError("boundary ratio is at least 1")
        if not (0.0 < self.decay_floor <= 1.0):
            raise ValueError("decay floor lies in (0, 1]")
        if not (0.0 < self.tolerance_factor < 1.0):
            raise ValueError("tolerance factor lies in (0, 1)")


def boundary_ratio(problem: Problem, k_max: int) -> RatioScan:
    """Largest singular value drop across one block, scanned to k_max.

    Evaluates lam_{n_{k-1}} / lam_{n_k} for k = 1..k_max, skipping any k
    with n_{k-1} = 0 (there is no zeroth singular value).  The flag reports
    whether the final term was a strict maximum over all earlier ones.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    best = 0.0
    attained = 0
    terms = []
    for k in range(1, k_max + 1):
        prev_boundary = problem.partition.boundary(k - 1)
        if prev_boundary < 1:
            continue
        lam_high = problem.spectrum.value(prev_boundary)
        lam_low = problem.spectrum.value(problem.partition.boundary(k))
        if lam_low == 0.0:
            # The drop across this block underflows the float range, so the
            # supremum certainly keeps growing past anything representable.
            return RatioScan(value=best if terms else math.inf,
                             attained_at=attained, still_growing=True)
        term = lam_high / lam_low
        terms.append(term)
        if term > best:
            best = term
            attained = k
    if not terms:
        raise ValueError("no block with positive lower boundary up to k_max")
    growing = len(terms) >= 2 and terms[-1] > max(terms[:-1])
    return RatioScan(value=best, attained_at=attained, still_growing=growing)


def tolerance_shrink_factor(cone: ConeParams, ratio: float) -> float:
    """Shrink factor for the essentially-no-worse comparison.

    Given the cone parameters and a boundary ratio bound R >= 1, returns

        sqrt( (1 - b**2) / (a**4 * (1 + b**2 R**2 + b**4 R**4))
              / ((a+1)**2 R**2 / (a-1)**2 + 1) )

    which always lies strictly between 0 and 1.
    """
    if ratio < 1.0:
        raise ValueError("ratio must be at least 1")
    a, b = cone.a, cone.b
    numerator = 1.0 - b * b
    spread = 1.0 + (b * ratio) ** 2 + (b * ratio) ** 4
    bracket = (a + 1.0) ** 2 * ratio * ratio / (a - 1.0) ** 2 + 1.0
    return math.sqrt(numerator / (a ** 4 * spread) / bracket)


def stop_block_bound(problem: Problem, epsilon: float, rho: float, *,
                     block_limit: int = DEFAULT_BLOCK_LIMIT) -> int:
    """Tight upper bound on the adaptive stopping block over the ball.

    Returns the smallest j with

        rho**2 / epsilon**2 <= (1-b**2)/(a**2 b**2) *
            [ sum_{k=1}^{j-1} b**(2(k-j)) / (a**2 lam_{n_{k-1}+1}**2)
              + 1 / lam_{n_{j-1}+1}**2 ].

    The bracket increases in j, so the first hit is the minimum.  Every
    admissible input of norm at most rho stops at or before this block.
    """
    if epsilon <= 0 or rho <= 0:
        raise ValueError("epsilon and rho must be positive")
    a, b = problem.cone.a, problem.cone.b
    target = (rho / epsilon) ** 2
    lead = (1.0 - b * b) / (a * a * b * b)
    partial = 0.0  # sum over k = 1..j-1 of b**(2(k-j)) / (a**2 lam_{n_{k-1}+1}**2)
    for j in range(1, block_limit + 1):
        edge = problem.spectrum.value(problem.partition.boundary(j - 1) + 1)
        bracket = partial + 1.0 / (edge * edge)
        if target <= lead * bracket:
            return j
        partial = (partial + 1.0 / (a * a * edge * edge)) / (b * b)
    raise GuardExceeded(f"no stopping block bound within {block_limit} blocks")


def stop_block_bound_rough(problem: Problem, epsilon: float, rho: float, *,
                           block_limit: int = DEFAULT_BLOCK_LIMIT) -> int:
    """Simpler bound: first j with lam_{n_{j-1}+1} <= eps*sqrt(1-b**2)/(a*b*rho)."""
    if epsilon <= 0 or rho <= 0:
        raise ValueError("epsilon and rho must be positive")
    level = stop_threshold(problem.cone, epsilon) / rho
    for j in range(1, block_limit + 1):
        edge = problem.spectrum.value(problem.partition.boundary(j - 1) + 1)
        if edge <= level:
            return j
    raise GuardExceeded(f"no rough stopping bound within {block_limit} blocks")


def stop_block_bound_first_term(problem: Problem, epsilon: float, rho: float) -> int:
    """Closed-form bound keeping only the first bracket term.

    ceil( log( rho * a**2 * lam_{n_0+1} / (epsilon * sqrt(1-b**2)) )
          / log(1/b) ), clamped to at least 1.
    """
    if epsilon <= 0 or rho <= 0:
        raise ValueError("epsilon and rho must be positive")
    a, b = problem.cone.a, problem.cone.b
    lead = problem.spectrum.value(problem.partition.boundary(0) + 1)
    argument = rho * a * a * lead / (epsilon * math.sqrt(1.0 - b * b))
    if argument <= 1.0:
        return 1
    return max(1, math.ceil(math.log(argument) / math.log(1.0 / b)))


def stop_block_bound_geometric(alpha: float, beta: float, cone: ConeParams,
                               epsilon: float, rho: float) -> int:
    """Closed-form bound when block edges decay as lam_{n_{j-1}+1} <= alpha * beta**j.

    ceil( log( rho * alpha * a * b / (epsilon * sqrt(1-b**2)) )
          / log(1/beta) ), clamped to at least 1.
    """
    if epsilon <= 0 or rho <= 0:
        raise ValueError("epsilon and rho must be positive")
    if not (0.0 < beta < 1.0) or alpha <= 0.0:
        raise ValueError("need alpha > 0 and beta in (0, 1)")
    a, b = cone.a, cone.b
    argument = rho * alpha * a * b / (epsilon * math.sqrt(1.0 - b * b))
    if argument <= 1.0:
        return 1
    return max(1, math.ceil(math.log(argument) / math.log(1.0 / beta)))


def complexity_lower_block(problem: Problem, ratio: float, epsilon: float,
                           rho: float, *,
                           block_limit: int = DEFAULT_BLOCK_LIMIT) -> int:
    """Deepest block whose boundary every successful algorithm must reach.

    Returns the largest j with

        ((a+1)**2 ratio**2 / (a-1)**2 + 1) *
            sum_{k=0}^{j} b**(2(k-j)) / lam_{n_k}**2  <  rho**2 / epsilon**2,

    or 0 when even j = 1 fails.  The adversarial construction produces, for
    such j, admissible inputs of norm at most rho that no algorithm sampling
    fewer than n_j coefficients can separate to accuracy epsilon.  Requires
    n_0 >= 1.  The left side increases in j, so the scan stops at the first
    failure; reaching ``block_limit`` with the condition still holding
    raises GuardExceeded since the true maximum lies beyond the scan.
    """
    if epsilon <= 0 or rho <= 0:
        raise ValueError("epsilon and rho must be positive")
    if ratio < 1.0:
        raise ValueError("ratio must be at least 1")
    if problem.partition.boundary(0) < 1:
        raise ValueError("the lower bound construction needs n_0 >= 1")
    a, b = problem.cone.a, problem.cone.b
    target = (rho / epsilon) ** 2
    bracket = (a + 1.0) ** 2 * ratio * ratio / (a - 1.0) ** 2 + 1.0
    edge0 = problem.spectrum.value(problem.partition.boundary(0))
    tail_sum = 1.0 / (edge0 * edge0)  # sum over k = 0..j of b**(2(k-j)) / lam_{n_k}**2
    best = 0
    for j in range(1, block_limit + 1):
        edge = problem.spectrum.value(problem.partition.boundary(j))
        tail_sum = tail_sum / (b * b) + 1.0 / (edge * edge)
        if bracket * tail_sum < target:
            best = j
        else:
            return best
    raise GuardExceeded(
        f"lower-bound block still growing at block limit {block_limit}")


@dataclass(frozen=True)
class ComparisonReport:
    holds: bool
    violations: tuple
    tolerance_factor: float
    grid: tuple


def essentially_no_worse(candidate: CostCurve, reference: CostCurve,
                         tolerance_factor: float,
                         grid: Sequence) -> ComparisonReport:
    """Certify candidate_cost(eps, rho) <= reference_cost(factor*eps, rho) on a grid.

    The grid is a sequence of (epsilon, rho) pairs.  Violating points are
    returned as (epsilon, rho, candidate_cost, reference_cost) tuples; the
    certificate holds when there are none.  A factor of exactly 1 turns the
    check into plain cost domination.
    """
    if not (0.0 < tolerance_factor <= 1.0):
        raise ValueError("tolerance factor lies in (0, 1]")
    violations = []
    points = tuple((float(e), float(r)) for e, r in grid)
    for eps, rho in points:
        cand = candidate.cost(eps, rho)
        ref = reference.cost(tolerance_factor * eps, rho)
        if cand > ref:
            violations.append((eps, rho, cand, ref))
    return ComparisonReport(holds=not violations, violations=tuple(violations),
                            tolerance_factor=tolerance_factor, grid=points)


@dataclass(frozen=True)
class BracketReport:
    family: str
    scale: float
    base: float
    epsilon: float
    rho: float
    cost: int
    lower: Optional[float]
    upper: Optional[float]
    applicable: bool
    ok: bool


def cost_bracket_check(family: str, scale: float, base: float, epsilon: float,
                       rho: float, *, scan_limit: int = DEFAULT_SCAN_LIMIT) -> BracketReport:
    """Check the analytic cost brackets of the ball solver for one family.

    For lam_i = scale / i**base the scanned cost n* satisfies
        (scale*rho/eps)**(1/base) - 1 <= n* < (scale*rho/eps)**(1/base).
    For lam_i = scale / base**i and eps < scale*rho it satisfies
        log(scale*rho/eps)/log(base) - 1 <= n* < log(scale*rho/eps)/log(base);
    for eps >= scale*rho the scanned cost is simply 0.
    """
    if family == "algebraic":
        spectrum = SingularSpectrum.algebraic(scale, base)
    elif family == "geometric":
        spectrum = SingularSpectrum.geometric(scale, base)
    else:
        raise ValueError(f"unknown family {family!r}")
    cost = spectrum.first_at_or_below(epsilon / rho, limit=scan_limit + 1) - 1
    reduced = scale * rho / epsilon
    if family == "algebraic":
        upper = reduced ** (1.0 / base)
        lower = upper - 1.0
        applicable = True
        ok = lower <= cost < upper
    else:
        if epsilon < scale * rho:
            upper = math.log(reduced) / math.log(base)
            lower = upper - 1.0
            applicable = True
            ok = lower <= cost < upper
        else:
            upper = None
            lower = None
            applicable = False
            ok = cost == 0
    return BracketReport(family=family, scale=scale, base=base, epsilon=epsilon,
                         rho=rho, cost=cost, lower=lower, upper=upper,
                         applicable=applicable, ok=ok)


def ball_cost_curve(spectrum: SingularSpectrum, *, label: str = "ball",
                    scan_limit: int = DEFAULT_SCAN_LIMIT) -> CostCurve:
    """Cost curve of the ball solver: min{n >= 0 : lam_{n+1} <= eps/rho}."""

    def evaluator(epsilon, rho):
        return spectrum.first_at_or_below(epsilon / rho, limit=scan_limit + 1) - 1

    return CostCurve(evaluator=evaluator, label=label)


def blocked_ball_cost_curve(spectrum: SingularSpectrum, partition: Partition, *,
                            label: str = "blocked ball",
                            block_limit: int = DEFAULT_BLOCK_LIMIT) -> CostCurve:
    """Ball solver restricted to partition boundaries: cost n_j at the first
    j >= 0 with lam_{n_j + 1} <= eps/rho."""

    def evaluator(epsilon, rho):
        level = epsilon / rho
        for j in range(0, block_limit + 1):
            n_j = partition.boundary(j)
            if spectrum.value(n_j + 1) <= level:
                return n_j
        raise GuardExceeded(f"no boundary within {block_limit} blocks")

    return CostCurve(evaluator=evaluator, label=label)


def adaptive_cost_bound_curve(problem: Problem, *, label: str = "adaptive bound",
                              block_limit: int = DEFAULT_BLOCK_LIMIT) -> CostCurve:
    """Upper cost curve of the adaptive solver over admissible inputs:
    the boundary of the stopping block bound."""

    def evaluator(epsilon, rho):
        j = stop_block_bound(problem, epsilon, rho, block_limit=block_limit)
        return problem.partition.boundary(j)

    return CostCurve(evaluator=evaluator, label=label)
