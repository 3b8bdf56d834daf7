"""Primitives for coefficient-based approximation of diagonal linear operators.

A problem instance couples a non-increasing sequence of positive singular
values with a strictly increasing partition of the coefficient indices into
blocks, plus two cone parameters quantifying how steadily the block norms of
an admissible input must decay.  Everything downstream (solvers, cost bounds,
adversarial constructions) is phrased in terms of these pieces.

Coefficient indices are 1-based throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

DEFAULT_SCAN_LIMIT = 2 ** 30


class OutOfRangeError(LookupError):
    """An explicitly enumerated sequence was queried past its last element."""


class SupportBoundRequired(ValueError):
    """The requested quantity is undecidable without a finite support bound."""


class GuardExceeded(RuntimeError):
    """An iteration or scan guard was reached before the target condition."""


class SingularSpectrum:
    """Non-increasing positive weights lam_1 >= lam_2 >= ... > 0.

    The sequence is described by a rule mapping 1-based indices to weights.
    Rules must accept float numpy arrays (indices are cast to float64 before
    the call so integer powers cannot overflow).  Explicitly enumerated
    spectra keep their values in an array and refuse queries past the end.

    A ``decay_witness`` callable, when present, maps a level ``delta > 0`` to
    an index at which the weight has dropped to ``delta`` or below.  It makes
    the "tends to zero" invariant checkable for closed-form rules.
    """

    def __init__(self, rule: Callable, *, name: str = "spectrum",
                 table: Optional[np.ndarray] = None,
                 decay_witness: Optional[Callable[[float], int]] = None):
        self._rule = rule
        self._table = None if table is None else np.asarray(table, dtype=np.float64)
        self.name = name
        self.decay_witness = decay_witness
        if self._table is not None:
            if self._table.ndim != 1 or self._table.size == 0:
                raise ValueError("enumerated spectrum must be a non-empty 1-d array")
            if not np.all(self._table > 0.0):
                raise ValueError("singular values must be positive")
            if np.any(np.diff(self._table) > 0.0):
                raise ValueError("singular values must be non-increasing")

    # -- constructors ------------------------------------------------------

    @classmethod
    def algebraic(cls, scale: float, power: float) -> "SingularSpectrum":
        """lam_i = scale / i**power with scale > 0, power > 0."""
        if scale <= 0 or power <= 0:
            raise ValueError("scale and power must be positive")

        def witness(delta):
            return int(math.floor((scale / delta) ** (1.0 / power))) + 1

        return cls(lambda i: scale / i ** power,
                   name=f"algebraic(scale={scale}, power={power})",
                   decay_witness=witness)

    @classmethod
    def geometric(cls, scale: float, base: float) -> "SingularSpectrum":
        """lam_i = scale / base**i with scale > 0, base > 1."""
        if scale <= 0 or base <= 1:
            raise ValueError("need scale > 0 and base > 1")

        def witness(delta):
            return max(1, int(math.floor(math.log(scale / delta, base))) + 1)

        def rule(i):
            # deep indices overflow base**i to inf; the quotient is then a
            # clean 0.0, so the warning carries no information
            with np.errstate(over="ignore"):
                return scale / base ** i

        return cls(rule, name=f"geometric(scale={scale}, base={base})",
                   decay_witness=witness)

    @classmethod
    def from_values(cls, values: Sequence[float], *, name: str = "enumerated") -> "SingularSpectrum":
        """Spectrum backed by an explicit finite array of weights."""
        table = np.asarray(values, dtype=np.float64)

        def rule(idx):
            raise OutOfRangeError("enumerated spectrum has no rule")

        return cls(rule, name=name, table=table)

    @classmethod
    def from_rule(cls, fn: Callable, *, name: str = "rule",
                  vectorized: bool = True,
                  decay_witness: Optional[Callable[[float], int]] = None) -> "SingularSpectrum":
        if vectorized:
            rule = fn
        else:
            def rule(idx):
                flat = np.atleast_1d(idx)
                return np.array([fn(float(v)) for v in flat], dtype=np.float64)

        return cls(rule, name=name, decay_witness=decay_witness)

    # -- access ------------------------------------------------------------

    def value(self, i: int) -> float:
        if i < 1:
            raise ValueError("indices are 1-based")
        if self._table is not None:
            if i > self._table.size:
                raise OutOfRangeError(
                    f"index {i} past the {self._table.size} enumerated singular values")
            return float(self._table[i - 1])
        return float(np.asarray(self._rule(np.float64(i))))

    def values(self, indices) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size and idx.min() < 1:
            raise ValueError("indices are 1-based")
        if self._table is not None:
            if idx.size and idx.max() > self._table.size:
                raise OutOfRangeError(
                    f"index {int(idx.max())} past the {self._table.size} "
                    "enumerated singular values")
            return self._table[idx - 1]
        return np.asarray(self._rule(idx.astype(np.float64)), dtype=np.float64)

    @property
    def enumerated_length(self) -> Optional[int]:
        return None if self._table is None else int(self._table.size)

    def first_at_or_below(self, threshold: float, *, limit: int = DEFAULT_SCAN_LIMIT) -> int:
        """Smallest index i with lam_i <= threshold.

        Monotonicity of the spectrum turns this into a bisection after an
        exponential bracketing phase.  Raises GuardExceeded when no index up
        to ``limit`` qualifies, or OutOfRangeError when an enumerated
        spectrum is exhausted first.
        """
        if threshold <= 0:
            raise ValueError("threshold must be positive")
        if self._table is not None:
            hits = np.nonzero(self._table <= threshold)[0]
            if hits.size == 0:
                raise OutOfRangeError(
                    "threshold not reached within the enumerated spectrum")
            first = int(hits[0]) + 1
            if first > limit:
                raise GuardExceeded(f"first qualifying index {first} exceeds limit {limit}")
            return first
        if self.value(1) <= threshold:
            return 1
        lo = 1  # invariant: lam_lo > threshold
        hi = 2
        while hi < limit and self.value(hi) > threshold:
            lo, hi = hi, min(2 * hi, limit)
        if self.value(hi) > threshold:
            raise GuardExceeded(
                f"no singular value at or below {threshold!r} within {limit} indices")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.value(mid) <= threshold:
                hi = mid
            else:
                lo = mid
        return hi

    def validate_prefix(self, count: int = 32) -> None:
        """Check positivity and monotonicity on the first ``count`` indices."""
        if self._table is not None:
            return  # validated at construction
        upto = count
        vals = self.values(np.arange(1, upto + 1))
        if not np.all(vals > 0.0):
            raise ValueError(f"{self.name}: singular values must be positive")
        if np.any(np.diff(vals) > 0.0):
            raise ValueError(f"{self.name}: singular values must be non-increasing")

    def __repr__(self):
        return f"SingularSpectrum({self.name})"


class Partition:
    """Strictly increasing block boundaries n_0 < n_1 < n_2 < ...

    Block j >= 1 covers coefficient indices n_{j-1}+1 through n_j.  Indices
    1..n_0 belong to no block; solvers sample them but never test them.
    """

    def __init__(self, rule: Callable[[int], int], *, kind: str = "rule",
                 table: Optional[Sequence[int]] = None):
        self._rule = rule
        self._table = None if table is None else [int(v) for v in table]
        self.kind = kind
        if self._table is not None:
            if len(self._table) < 2:
                raise ValueError("explicit partition needs at least two boundaries")
            for lo, hi in zip(self._table, self._table[1:]):
                if hi <= lo:
                    raise ValueError("boundaries must be strictly increasing")
            if self._table[0] < 0:
                raise ValueError("boundaries must be non-negative")

    @classmethod
    def doubling(cls, start: int) -> "Partition":
        """n_j = start * 2**j with start >= 1."""
        if start < 1:
            raise ValueError("doubling partitions need start >= 1")
        return cls(lambda j: start << j, kind="doubling")

    @classmethod
    def arithmetic(cls, start: int, step: int) -> "Partition":
        """n_j = start + j * step with start >= 0, step >= 1."""
        if start < 0 or step < 1:
            raise ValueError("need start >= 0 and step >= 1")
        return cls(lambda j: start + j * step, kind="arithmetic")

    @classmethod
    def from_boundaries(cls, values: Sequence[int]) -> "Partition":
        table = [int(v) for v in values]

        def rule(j):
            raise OutOfRangeError("explicit partition has no rule")

        return cls(rule, kind="explicit", table=table)

    @classmethod
    def zero_then_doubling(cls, first: int) -> "Partition":
        """Boundaries (0, first, 2*first, 4*first, ...) with first >= 1."""
        if first < 1:
            raise ValueError("need first >= 1")
        return cls(lambda j: 0 if j == 0 else first << (j - 1), kind="zero-doubling")

    def boundary(self, j: int) -> int:
        if j < 0:
            raise ValueError("boundary indices start at 0")
        if self._table is not None:
            if j >= len(self._table):
                raise OutOfRangeError(
                    f"partition has {len(self._table)} boundaries, asked for n_{j}")
            return self._table[j]
        return int(self._rule(j))

    def block(self, j: int) -> tuple:
        """Inclusive coefficient index range (n_{j-1}+1, n_j) of block j >= 1."""
        if j < 1:
            raise ValueError("blocks are numbered from 1")
        lo, hi = self.boundary(j - 1), self.boundary(j)
        if hi <= lo:
            raise ValueError(f"partition boundaries not increasing at block {j}")
        return lo + 1, hi

    def block_indices(self, j: int) -> np.ndarray:
        lo, hi = self.block(j)
        return np.arange(lo, hi + 1, dtype=np.int64)

    def validate_prefix(self, count: int = 8) -> None:
        if self._table is not None:
            return
        previous = self.boundary(0)
        if previous < 0:
            raise ValueError("n_0 must be non-negative")
        for j in range(1, count + 1):
            current = self.boundary(j)
            if current <= previous:
                raise ValueError(f"boundaries must be strictly increasing (n_{j})")
            previous = current

    def __repr__(self):
        return f"Partition({self.kind})"


@dataclass(frozen=True)
class ConeParams:
    """Decay envelope for admissible inputs.

    An input with block norms s_1, s_2, ... is admissible when
    s_{j+r} <= a * b**r * s_j for every j >= 1 and r >= 1.  ``b`` caps the
    long-run decay rate per block while ``a`` allows bounded short-run
    upticks; admissibility requires 0 < b < 1 < a.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (self.b > 0.0 and self.b < 1.0 and self.a > 1.0):
            raise ValueError("cone parameters require 0 < b < 1 < a")

    @property
    def tail_factor(self) -> float:
        """Multiplier turning a stopping block norm into an error bound."""
        return self.a * self.b / math.sqrt(1.0 - self.b * self.b)


class CoefficientSource:
    """Deterministic, repeatable map from 1-based index to series coefficient.

    ``support_bound`` = N promises that coefficients vanish for indices
    above N, which is what makes exact tail norms and membership checks
    decidable.  Sources without a bound can still be solved adaptively.
    """

    def __init__(self, provider: Callable[[int], float],
                 support_bound: Optional[int] = None, *,
                 vector: Optional[Callable] = None):
        self._provider = provider
        self._vector = vector
        if support_bound is not None and support_bound < 0:
            raise ValueError("support bound must be non-negative")
        self.support_bound = support_bound

    @classmethod
    def from_vector(cls, values) -> "CoefficientSource":
        arr = np.asarray(values, dtype=np.float64).copy()
        arr.flags.writeable = False

        def provider(i):
            return float(arr[i - 1]) if 1 <= i <= arr.size else 0.0

        def vector(idx):
            out = np.zeros(idx.shape, dtype=np.float64)
            mask = idx <= arr.size
            out[mask] = arr[idx[mask] - 1]
            return out

        src = cls(provider, support_bound=int(arr.size), vector=vector)
        src._dense_backing = arr
        return src

    @classmethod
    def zero(cls) -> "CoefficientSource":
        return cls.from_vector(np.zeros(0))

    def coefficient(self, i: int) -> float:
        if i < 1:
            raise ValueError("indices are 1-based")
        return float(self._provider(int(i)))

    def coefficients(self, indices) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size and idx.min() < 1:
            raise ValueError("indices are 1-based")
        if self._vector is not None:
            return np.asarray(self._vector(idx), dtype=np.float64)
        return np.array([self._provider(int(i)) for i in idx], dtype=np.float64)

    def dense(self, n: int) -> np.ndarray:
        """Coefficients 1..n as an array."""
        return self.coefficients(np.arange(1, n + 1, dtype=np.int64))

    def scaled(self, factor: float) -> "CoefficientSource":
        base_provider = self._provider
        base_vector = self._vector
        vector = None if base_vector is None else (lambda idx: factor * base_vector(idx))
        return CoefficientSource(lambda i: factor * base_provider(i),
                                 support_bound=self.support_bound, vector=vector)

    def norm(self) -> float:
        """Input-space norm, the plain l2 norm of the coefficients."""
        if self.support_bound is None:
            raise SupportBoundRequired(
                "input norms need a finite support bound")
        vals = self.dense(self.support_bound)
        return math.sqrt(math.fsum((vals * vals).tolist()))


@dataclass(frozen=True)
class Problem:
    """A diagonal linear operator together with a block partition and cone."""

    spectrum: SingularSpectrum
    partition: Partition
    cone: ConeParams

    def __post_init__(self):
        self.spectrum.validate_prefix(16)
        self.partition.validate_prefix(4)


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    worst_ratio: float
    witness: Optional[tuple]
    blocks: int


def block_norm(problem: Problem, f: CoefficientSource, j: int) -> float:
    """Euclidean norm of the solution coefficients in block j.

    Computes sqrt(sum((lam_i * fhat_i)**2)) over the block's index range,
    accumulating in ascending index order with exact summation.  When the
    spectrum is a finite table the operator has exactly that many modes, so
    the range clips to the enumerated length and a block lying entirely past
    it has norm zero.
    """
    if j < 1:
        raise ValueError("blocks are numbered from 1")
    lo, hi = problem.partition.block(j)
    length = problem.spectrum.enumerated_length
    if length is not None:
        hi = min(hi, length)
        if lo > hi:
            return 0.0
    idx = np.arange(lo, hi + 1, dtype=np.int64)
    prod = problem.spectrum.values(idx) * f.coefficients(idx)
    return math.sqrt(math.fsum((prod * prod).tolist()))


def cone_membership(problem: Problem, f: CoefficientSource, *,
                    slack: float = 1e-9) -> MembershipReport:
    """Decide whether a finite-support input satisfies the cone decay.

    Checks s_{j+r} <= a * b**r * s_j for all pairs with 1 <= j < j+r <= J,
    where J is the first block whose boundary covers the support.  Blocks
    past J vanish, so those pairs hold vacuously.  The verdict allows a
    relative slack of 1e-9 on the ratio; a zero allowance with a positive
    later block norm counts as an infinite ratio.
    """
    bound = f.support_bound
    if bound is None:
        raise SupportBoundRequired(
            "membership is undecidable without a finite support bound")
    last = 0
    while problem.partition.boundary(last) < bound:
        last += 1
    norms = [block_norm(problem, f, j) for j in range(1, last + 1)]
    a, b = problem.cone.a, problem.cone.b
    worst = 0.0
    witness = None
    for j in range(1, last):
        for r in range(1, last - j + 1):
            allowed = a * b ** r * norms[j - 1]
            actual = norms[j + r - 1]
            if actual == 0.0:
                ratio = 0.0
            elif allowed == 0.0:
                ratio = math.inf
            else:
                ratio = actual / allowed
            if ratio > worst:
                worst = ratio
            if witness is None and ratio > 1.0 + slack:
                witness = (j, r)
    return MembershipReport(member=worst <= 1.0 + slack, worst_ratio=worst,
                            witness=witness, blocks=last)


def tail_norm(problem: Problem, f: CoefficientSource, n: int) -> float:
    """Exact norm of the solution tail past index n for finite-support input.

    Returns sqrt(sum((lam_i * fhat_i)**2 for i > n)), summed directly over
    the declared support.  This is the reference value of the error made by
    keeping only the first n solution coefficients; no quadrature enters.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    bound = f.support_bound
    if bound is None:
        raise SupportBoundRequired(
            "exact tail norms need a finite support bound")
    if n >= bound:
        return 0.0
    top = bound
    length = problem.spectrum.enumerated_length
    if length is not None:
        top = min(top, length)
        if n >= top:
            return 0.0
    idx = np.arange(n + 1, top + 1, dtype=np.int64)
    prod = problem.spectrum.values(idx) * f.coefficients(idx)
    return math.sqrt(math.fsum((prod * prod).tolist()))


def random_cone_member(problem: Problem, rng: np.random.Generator,
                       blocks: int, *, scale: float = 1.0,
                       head: bool = True) -> CoefficientSource:
    """Draw a finite-support input satisfying the cone decay by construction.

    The block norm profile is s_j = c_j * scale * b**j with c_j uniform on
    [1, a], so s_{j+r} / s_j = (c_{j+r} / c_j) * b**r <= a * b**r for every
    pair.  Mass inside each block is spread along a random direction.  With
    ``head`` set, indices 1..n_0 also receive Gaussian mass, which changes
    the input norm but no block norm.
    """
    if blocks < 1:
        raise ValueError("need at least one block")
    a, b = problem.cone.a, problem.cone.b
    factors = rng.uniform(1.0, a, size=blocks)
    profile = scale * factors * b ** np.arange(1, blocks + 1, dtype=np.float64)
    coeffs = np.zeros(problem.partition.boundary(blocks))
    for j in range(1, blocks + 1):
        idx = problem.partition.block_indices(j)
        direction = rng.standard_normal(idx.size)
        norm = float(np.linalg.norm(direction))
        while norm == 0.0:
            direction = rng.standard_normal(idx.size)
            norm = float(np.linalg.norm(direction))
        weights = profile[j - 1] * direction / norm
        coeffs[idx - 1] = weights / problem.spectrum.values(idx)
    head_len = problem.partition.boundary(0)
    if head and head_len > 0:
        coeffs[:head_len] = scale * rng.standard_normal(head_len)
    return CoefficientSource.from_vector(coeffs)
