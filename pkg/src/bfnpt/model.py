"""Core data model: sample spaces, parameter grids, likelihood tables, priors.

Everything downstream works on finite grids, so every probability integral
is a finite weighted sum and every claim about a test can be checked by
exact enumeration.  Continuous priors and densities are represented by
quadrature nodes whose weights are absorbed into the prior / sample-space
weight vectors.

All types are immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

# Normalization tolerances.  Discrete sums are exact up to rounding;
# quadrature error is model dependent and must be declared by the model.
DISCRETE_NORMALIZATION_TOL = 1e-12
DEFAULT_QUADRATURE_TOL = 1e-6
PRIOR_NORMALIZATION_TOL = 1e-12


class SpaceKind(str, Enum):
    DISCRETE_EXACT = "discrete-exact"
    QUADRATURE_GRID = "quadrature-grid"


class PriorKind(str, Enum):
    GENERAL = "general"
    POINT_MASS = "point-mass"


class HypothesisLabel(str, Enum):
    NULL = "null"
    ALTERNATIVE = "alternative"


def _readonly(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampleSpace:
    """Ordered outcome labels with per-outcome quadrature weights.

    The label order is the canonical iteration order used for deterministic
    reports and tie-breaking.  ``weights`` are all 1 for discrete-exact
    spaces; for quadrature grids they carry the integration rule, and a
    probability of a set of outcomes is the weighted sum over it.
    """

    outcomes: tuple[str, ...]
    kind: SpaceKind = SpaceKind.DISCRETE_EXACT
    weights: np.ndarray | None = None
    tolerance: float = DEFAULT_QUADRATURE_TOL

    def __post_init__(self):
        outcomes = tuple(str(o) for o in self.outcomes)
        if not outcomes:
            raise ValueError("sample space needs at least one outcome")
        if len(set(outcomes)) != len(outcomes):
            raise ValueError("outcome identifiers must be unique")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        if self.weights is None:
            weights = np.ones(len(outcomes))
        else:
            weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (len(outcomes),):
            raise ValueError("need exactly one weight per outcome")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0.0):
            raise ValueError("weights must be strictly positive and finite")
        if self.kind is SpaceKind.DISCRETE_EXACT and not np.all(weights == 1.0):
            raise ValueError("discrete-exact spaces must have unit weights")
        object.__setattr__(self, "weights", _readonly(weights))

    @classmethod
    def discrete(cls, outcomes: Iterable[str]) -> "SampleSpace":
        return cls(tuple(outcomes), SpaceKind.DISCRETE_EXACT)

    @classmethod
    def quadrature(
        cls,
        outcomes: Iterable[str],
        weights: Sequence[float],
        tolerance: float = DEFAULT_QUADRATURE_TOL,
    ) -> "SampleSpace":
        return cls(tuple(outcomes), SpaceKind.QUADRATURE_GRID, np.asarray(weights, float), tolerance)

    @property
    def size(self) -> int:
        return len(self.outcomes)

    @property
    def normalization_tolerance(self) -> float:
        if self.kind is SpaceKind.DISCRETE_EXACT:
            return DISCRETE_NORMALIZATION_TOL
        return self.tolerance

    def __len__(self) -> int:
        return len(self.outcomes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SampleSpace):
            return NotImplemented
        return (
            self.outcomes == other.outcomes
            and self.kind == other.kind
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True, eq=False)
class ParameterSpace:
    """Finite ordered grid of parameter points, each a real vector."""

    points: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[0] == 0:
            raise ValueError("parameter space needs a non-empty 2-d point array")
        if not np.all(np.isfinite(points)):
            raise ValueError("parameter points must be finite")
        object.__setattr__(self, "points", _readonly(points))

    @classmethod
    def grid(cls, values: Sequence[float]) -> "ParameterSpace":
        """One-dimensional grid from a sequence of scalars."""
        return cls(np.asarray(values, dtype=float))

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.points.shape[0]

    def values_1d(self) -> np.ndarray:
        if self.dimension != 1:
            raise ValueError("parameter space is not one-dimensional")
        return self.points[:, 0]

    def is_increasing_1d(self) -> bool:
        return self.dimension == 1 and bool(np.all(np.diff(self.points[:, 0]) > 0.0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParameterSpace):
            return NotImplemented
        return np.array_equal(self.points, other.points)


@dataclass(frozen=True, eq=False)
class LikelihoodTable:
    """Probability (or density) of each outcome under each parameter point.

    ``values[i, j]`` is the probability of outcome ``i`` given parameter
    point ``j``.  Construction only enforces shape compatibility; content
    invariants (finiteness, nonnegativity, column normalization) are
    diagnosed by :func:`validate_model` so that malformed tables can be
    inspected rather than rejected blindly.
    """

    sample_space: SampleSpace
    parameter_space: ParameterSpace
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        expected = (self.sample_space.size, self.parameter_space.size)
        if values.shape != expected:
            raise ValueError(f"likelihood matrix shape {values.shape} != {expected}")
        object.__setattr__(self, "values", _readonly(values))

    @property
    def n_outcomes(self) -> int:
        return self.sample_space.size

    @property
    def n_parameters(self) -> int:
        return self.parameter_space.size


@dataclass(frozen=True, eq=False)
class Prior:
    """Weight function over a parameter grid; quadrature weights included.

    Weights must sum to 1 within ``PRIOR_NORMALIZATION_TOL``.  A point-mass
    prior concentrates all weight on a single grid point and realizes a
    delta-function prior exactly.
    """

    parameter_space: ParameterSpace
    weights: np.ndarray
    kind: PriorKind = PriorKind.GENERAL

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (self.parameter_space.size,):
            raise ValueError("need exactly one prior weight per parameter point")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0.0):
            raise ValueError("prior weights must be finite and nonnegative")
        total = float(weights.sum())
        if abs(total - 1.0) > PRIOR_NORMALIZATION_TOL:
            raise ValueError(f"prior weights sum to {total!r}, not 1")
        kind = PriorKind(self.kind)
        if kind is PriorKind.POINT_MASS and int(np.count_nonzero(weights)) != 1:
            raise ValueError("point-mass prior must have exactly one nonzero weight")
        object.__setattr__(self, "weights", _readonly(weights))
        object.__setattr__(self, "kind", kind)

    @classmethod
    def uniform(cls, parameter_space: ParameterSpace, support: Sequence[int] | None = None) -> "Prior":
        weights = np.zeros(parameter_space.size)
        idx = np.arange(parameter_space.size) if support is None else np.asarray(support, int)
        weights[idx] = 1.0 / len(idx)
        return cls(parameter_space, weights)

    @classmethod
    def point_mass(cls, parameter_space: ParameterSpace, index: int) -> "Prior":
        weights = np.zeros(parameter_space.size)
        weights[index] = 1.0
        return cls(parameter_space, weights, PriorKind.POINT_MASS)

    @classmethod
    def from_weights(cls, parameter_space: ParameterSpace, weights: Sequence[float]) -> "Prior":
        """Normalize arbitrary nonnegative weights into a prior."""
        weights = np.asarray(weights, dtype=float)
        total = weights.sum()
        if total <= 0.0:
            raise ValueError("weights must have positive total mass")
        weights = weights / total
        kind = PriorKind.POINT_MASS if np.count_nonzero(weights) == 1 else PriorKind.GENERAL
        return cls(parameter_space, weights, kind)

    @property
    def atom_index(self) -> int:
        if self.kind is not PriorKind.POINT_MASS:
            raise ValueError("prior is not a point mass")
        return int(np.flatnonzero(self.weights)[0])


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """A likelihood table plus a prior restricted to a support set.

    ``support`` lists the parameter indices on which the prior may be
    nonzero; weights are exactly zero elsewhere.  Null and alternative
    hypotheses used together must share the same sample space (their
    parameter spaces and likelihoods may differ).
    """

    label: HypothesisLabel
    likelihood: LikelihoodTable
    prior: Prior
    support: tuple[int, ...] = ()

    def __post_init__(self):
        if self.prior.parameter_space != self.likelihood.parameter_space:
            raise ValueError("prior and likelihood must share a parameter space")
        support = tuple(int(i) for i in self.support)
        if not support:
            support = tuple(int(i) for i in np.flatnonzero(self.prior.weights))
        if len(set(support)) != len(support) or sorted(support) != list(support):
            raise ValueError("support must be sorted and duplicate-free")
        n = self.likelihood.n_parameters
        if any(i < 0 or i >= n for i in support):
            raise ValueError("support index out of range")
        outside = np.delete(np.arange(n), support)
        if outside.size and np.any(self.prior.weights[outside] != 0.0):
            raise ValueError("prior weight must be zero outside the support")
        object.__setattr__(self, "label", HypothesisLabel(self.label))
        object.__setattr__(self, "support", support)

    @classmethod
    def null(cls, likelihood: LikelihoodTable, prior: Prior, support: Sequence[int] = ()) -> "Hypothesis":
        return cls(HypothesisLabel.NULL, likelihood, prior, tuple(support))

    @classmethod
    def alternative(cls, likelihood: LikelihoodTable, prior: Prior, support: Sequence[int] = ()) -> "Hypothesis":
        return cls(HypothesisLabel.ALTERNATIVE, likelihood, prior, tuple(support))

    @property
    def sample_space(self) -> SampleSpace:
        return self.likelihood.sample_space

    @property
    def parameter_space(self) -> ParameterSpace:
        return self.likelihood.parameter_space

    @property
    def support_weights(self) -> np.ndarray:
        return self.prior.weights[list(self.support)]

    @property
    def is_simple(self) -> bool:
        """True when the prior is a point mass (a single sharp parameter)."""
        return self.prior.kind is PriorKind.POINT_MASS


@dataclass(frozen=True, eq=False)
class Statistic:
    """One real value per outcome; induces a total preorder on outcomes."""

    sample_space: SampleSpace
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.sample_space.size,):
            raise ValueError("need exactly one statistic value per outcome")
        if not np.all(np.isfinite(values)):
            raise ValueError("statistic values must be finite")
        object.__setattr__(self, "values", _readonly(values))


@dataclass(frozen=True)
class ValidationResult:
    """Diagnostic outcome of a model check; never raised, always returned."""

    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_model(likelihood: LikelihoodTable) -> ValidationResult:
    """Check likelihood-table invariants and report violations with indices.

    Checks, in order: every entry finite, every entry nonnegative, and
    each weighted column summing to 1 within the sample space's
    normalization tolerance.  Idempotent and side-effect-free.
    """
    violations: list[str] = []
    values = likelihood.values
    space = likelihood.sample_space

    bad = np.argwhere(~np.isfinite(values))
    for i, j in bad:
        violations.append(f"entry ({i},{j}) is {values[i, j]!r}, not finite")
    finite = np.where(np.isfinite(values), values, 0.0)

    neg = np.argwhere(finite < 0.0)
    for i, j in neg:
        violations.append(f"entry ({i},{j}) is {values[i, j]:.12g} < 0")

    tol = space.normalization_tolerance
    sums = space.weights @ np.abs(np.where(np.isfinite(values), values, 0.0))
    for j, s in enumerate(sums):
        if abs(s - 1.0) > tol:
            violations.append(f"column {j} sum {s:.12g} != 1 (tolerance {tol:g})")

    return ValidationResult(ok=not violations, violations=tuple(violations))


def restrict_hypothesis(hypothesis: Hypothesis, subset: Sequence[int]) -> Hypothesis:
    """Restrict a hypothesis to a parameter subset, renormalizing the prior.

    The subset must be nonempty, lie inside the parameter grid, and carry
    positive prior mass; the returned hypothesis has that subset as its
    support.
    """
    subset = sorted(int(i) for i in subset)
    if not subset:
        raise ValueError("subset must be non-empty")
    n = hypothesis.likelihood.n_parameters
    if len(set(subset)) != len(subset) or subset[0] < 0 or subset[-1] >= n:
        raise ValueError("subset must be a duplicate-free set of valid parameter indices")

    old = hypothesis.prior.weights
    mass = float(old[subset].sum())
    if mass <= 0.0:
        raise ValueError("prior mass on the subset is zero")
    weights = np.zeros(n)
    weights[subset] = old[subset] / mass
    kind = PriorKind.POINT_MASS if np.count_nonzero(weights) == 1 else PriorKind.GENERAL
    prior = Prior(hypothesis.prior.parameter_space, weights, kind)
    return Hypothesis(hypothesis.label, hypothesis.likelihood, prior, tuple(subset))


def require_shared_sample_space(*hypotheses: Hypothesis) -> SampleSpace:
    space = hypotheses[0].sample_space
    for h in hypotheses[1:]:
        if h.sample_space != space:
            raise ValueError("hypotheses do not share a sample space")
    return space
