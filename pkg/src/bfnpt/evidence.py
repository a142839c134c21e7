"""Marginal likelihoods and Bayes factors, computed in log space.

All evidence arithmetic uses max-shifted log-sum-exp so that the small
tail probabilities entering power calculations never underflow.  Log Bayes
factors may be +/-inf where exactly one hypothesis assigns an outcome zero
probability; outcomes impossible under both hypotheses are flagged
unreachable and excluded from rejection regions (they carry no probability
under either model, so the exclusion cannot change any error rate).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .model import Hypothesis, SampleSpace, require_shared_sample_space


@dataclass(frozen=True, eq=False)
class LogEvidence:
    """Per-outcome log marginal likelihood; -inf only at impossible outcomes."""

    sample_space: SampleSpace
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.sample_space.size,):
            raise ValueError("need one log evidence per outcome")
        if np.any(np.isnan(values)) or np.any(values == np.inf):
            raise ValueError("log evidence must be finite or -inf")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def linear(self) -> np.ndarray:
        return np.exp(self.values)


@dataclass(frozen=True, eq=False)
class LogBayesFactor:
    """Per-outcome log evidence ratio, alternative over null.

    ``values`` holds ``log p(D|H1) - log p(D|H0)``; entries are NaN exactly
    on the ``unreachable`` mask (both evidences zero), and such outcomes
    are excluded from every region built downstream.  +/-inf entries sort
    above / below all finite values when ordering outcomes.
    """

    sample_space: SampleSpace
    values: np.ndarray
    unreachable: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        unreachable = np.asarray(self.unreachable, dtype=bool)
        if values.shape != (self.sample_space.size,) or unreachable.shape != values.shape:
            raise ValueError("need one log Bayes factor and one flag per outcome")
        if np.any(np.isnan(values) != unreachable):
            raise ValueError("NaN entries must coincide with the unreachable mask")
        values.setflags(write=False)
        unreachable.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "unreachable", unreachable)


def marginal_likelihood(hypothesis: Hypothesis) -> LogEvidence:
    """Log prior-weighted likelihood of each outcome, log p(D|H).

    Exact finite sum over the support grid, performed as a max-shifted
    log-sum-exp.  A point-mass prior collapses to the corresponding
    likelihood column exactly.
    """
    support = list(hypothesis.support)
    table = hypothesis.likelihood.values[:, support]
    weights = hypothesis.prior.weights[support]
    with np.errstate(divide="ignore"):
        log_terms = np.log(table) + np.log(weights)[None, :]
    values = logsumexp(log_terms, axis=1)
    return LogEvidence(hypothesis.sample_space, values)


def bayes_factor(h1: Hypothesis, h0: Hypothesis) -> LogBayesFactor:
    """Entrywise log evidence ratio of two hypotheses on a shared space."""
    space = require_shared_sample_space(h1, h0)
    e1 = marginal_likelihood(h1).values
    e0 = marginal_likelihood(h0).values
    unreachable = np.isneginf(e1) & np.isneginf(e0)
    with np.errstate(invalid="ignore"):
        values = e1 - e0
    return LogBayesFactor(space, values, unreachable)


def sharp_null_bayes_factor(h1: Hypothesis, h0: Hypothesis, theta_hat_index: int) -> LogBayesFactor:
    """Bayes factor against the null pinned to one parameter point.

    Replaces the null prior by a point mass at ``theta_hat_index`` (the
    caller supplies the worst-case null parameter; see
    :func:`bfnpt.regions.max_type1`) and reuses the ordinary Bayes factor.
    """
    if int(theta_hat_index) not in h0.support:
        raise ValueError(f"theta_hat index {theta_hat_index} is outside the null support")
    sharp = sharpen(h0, int(theta_hat_index))
    return bayes_factor(h1, sharp)


def sharpen(hypothesis: Hypothesis, index: int) -> Hypothesis:
    """Copy of a hypothesis with its prior replaced by a point mass."""
    from .model import Prior

    prior = Prior.point_mass(hypothesis.parameter_space, index)
    return Hypothesis(hypothesis.label, hypothesis.likelihood, prior, (index,))
