"""Bayesian updating over a test set and posterior summaries.

Log-likelihoods drop the multinomial coefficient: it is constant across
states, cancels in the posterior normalization, and the model-comparison
module uses the same convention so score differences are unaffected.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg, measurement
from .errors import AllStatesExcludedError, LengthMismatchError
from .families import TestSet


@dataclass
class Posterior:
    """Normalized weights over a test set, index-aligned with it."""

    weights: np.ndarray
    record: measurement.MeasurementRecord


@dataclass
class EstimateSummary:
    prob_entangled: float
    neg_mean: float
    neg_std: float
    pur_mean: float
    pur_std: float


@dataclass
class Histogram:
    """Equal-width negativity bins over (0, max]; zero-negativity mass kept apart."""

    bin_edges: np.ndarray
    bin_mass: np.ndarray
    separable_mass: float


def log_likelihood(rec: measurement.MeasurementRecord, rho: np.ndarray) -> float:
    """Sum of count * log(outcome probability); -inf if a zero-probability
    outcome was observed."""
    total = 0.0
    for setting, row in zip(rec.settings, rec.counts):
        probs = measurement.outcome_probabilities(rho, setting)
        for count, p in zip(row, probs):
            if count > 0:
                if p <= 0.0:
                    return -np.inf
                total += count * np.log(p)
    return total


def log_likelihood_vector(ts: TestSet, rec: measurement.MeasurementRecord) -> np.ndarray:
    """Log-likelihood of the record under every state in the test set."""
    measurement.require_default_settings(rec)
    counts = rec.counts.reshape(-1).astype(float)
    nz = counts > 0
    probs = ts.outcome_probs()[:, nz]
    logp = np.full_like(probs, -np.inf)
    np.log(probs, out=logp, where=probs > 0)
    return logp @ counts[nz]


def update_posterior(
    ts: TestSet,
    rec: measurement.MeasurementRecord,
    prior_weights: np.ndarray | None = None,
) -> Posterior:
    """Bayes update: weights proportional to prior * exp(log-likelihood).

    Normalized with a max-shifted exponential sum; summation order is
    fixed, so results are deterministic across runs.
    """
    prior = ts.prior_weights if prior_weights is None else np.asarray(prior_weights)
    if len(prior) != ts.n_states:
        raise LengthMismatchError("prior weights do not match the test set")
    ll = log_likelihood_vector(ts, rec)
    shift = ll.max()
    if not np.isfinite(shift):
        raise AllStatesExcludedError("every test state assigns zero probability to the record")
    w = prior * np.exp(ll - shift)
    total = w.sum()
    if total <= 0.0:
        raise AllStatesExcludedError("posterior mass vanished after the update")
    return Posterior(weights=w / total, record=rec)


def summarize(ts: TestSet, post: Posterior) -> EstimateSummary:
    """Posterior entanglement probability and negativity/purity moments."""
    w = post.weights
    if len(w) != ts.n_states:
        raise LengthMismatchError("posterior does not match the test set")
    neg_mean = float(w @ ts.negativities)
    neg_var = max(0.0, float(w @ ts.negativities**2) - neg_mean**2)
    pur_mean = float(w @ ts.purities)
    pur_var = max(0.0, float(w @ ts.purities**2) - pur_mean**2)
    return EstimateSummary(
        prob_entangled=float(w[ts.entangled].sum()),
        neg_mean=neg_mean,
        neg_std=np.sqrt(neg_var),
        pur_mean=pur_mean,
        pur_std=np.sqrt(pur_var),
    )


def histogram_negativity(ts: TestSet, weights: np.ndarray, n_bins: int) -> Histogram:
    """Histogram of negativity under the given weights (prior or posterior)."""
    if len(weights) != ts.n_states:
        raise LengthMismatchError("weights do not match the test set")
    ent = ts.entangled
    separable_mass = float(weights[~ent].sum())
    top = float(ts.negativities.max())
    if top <= 0.0:
        top = 1.0
    edges = np.linspace(0.0, top, n_bins + 1)
    mass, _ = np.histogram(ts.negativities[ent], bins=edges, weights=weights[ent])
    return Histogram(bin_edges=edges, bin_mass=mass, separable_mass=separable_mass)


def mean_state(ts: TestSet, post: Posterior) -> np.ndarray:
    """Posterior mean density matrix sum_i w_i rho_i.

    Its negativity never exceeds the posterior mean negativity (the trace
    norm is convex); checked here defensively.
    """
    w = post.weights
    if len(w) != ts.n_states:
        raise LengthMismatchError("posterior does not match the test set")
    rho = np.zeros((4, 4), dtype=complex)
    chunk = 100_000
    for lo in range(0, ts.n_states, chunk):
        sl = slice(lo, min(lo + chunk, ts.n_states))
        rho += np.einsum("n,nij->ij", w[sl], ts.matrices(sl))
    rho = linalg.validate_state(rho)
    assert linalg.negativity(rho) <= float(w @ ts.negativities) + 1e-9
    return rho
