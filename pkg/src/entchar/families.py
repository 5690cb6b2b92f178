"""State families and prior test sets.

Two families back the priors used for Bayesian updating:

* the two-parameter family rho_{p,sigma} = p * rho_sigma + (1-p) * I/4,
  where rho_sigma is the (|00>+|11>)/sqrt(2) projector averaged over a
  Gaussian phase distribution of width sigma truncated to [-pi, pi];
* Bell-diagonal states sum_i p_i |Phi_i><Phi_i|.

Both admit exact expressions for their outcome probabilities, negativity
and purity, which the test-set builders cache so that posterior updates
never need per-state eigendecompositions.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import linalg, measurement
from .errors import (
    IndexOutOfRangeError,
    InvalidGridSizeError,
    InvalidSimplexPointError,
    OutOfDomainError,
    ParseFailureError,
    UnknownStateFamilyError,
)

MODEL_TWO_PARAM = "two_param"
MODEL_BELL_DIAGONAL = "bell_diag"

_SQRT2 = np.sqrt(2.0)

#: Bell basis vectors |Phi_1>..|Phi_4| in the |00>,|01>,|10>,|11> basis.
BELL_VECTORS = np.array(
    [
        [1.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, -1.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
    ],
    dtype=complex,
) / _SQRT2


def bell_state(i: int) -> np.ndarray:
    """Projector onto |Phi_i>, i in 1..4."""
    if i not in (1, 2, 3, 4):
        raise IndexOutOfRangeError(f"Bell state index must be 1..4, got {i}")
    v = BELL_VECTORS[i - 1]
    return np.outer(v, v.conj())


def coherence_factor(sigma: float) -> float:
    """Off-diagonal damping factor c(sigma) of the phase-averaged Bell state.

    c(sigma) is the mean of cos(phi) under the normalized Gaussian phase
    distribution exp(-phi^2/sigma^2) truncated to [-pi, pi].  Evaluated by
    adaptive quadrature after substituting x = phi/sigma; sigma = 0 maps
    to 1 by continuity.
    """
    if sigma < 0:
        raise OutOfDomainError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0.0:
        return 1.0
    # Beyond |x| = 8 the Gaussian tail contributes < 1e-27 of the mass.
    upper = min(np.pi / sigma, 8.0)
    num, _ = quad(lambda x: np.cos(sigma * x) * np.exp(-x * x), -upper, upper,
                  epsabs=1e-14, epsrel=1e-13, limit=200)
    den, _ = quad(lambda x: np.exp(-x * x), -upper, upper,
                  epsabs=1e-14, epsrel=1e-13, limit=200)
    return num / den


def _two_param_matrix(p: float, c: float) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = (1.0 + p) / 4.0
    rho[1, 1] = rho[2, 2] = (1.0 - p) / 4.0
    rho[0, 3] = rho[3, 0] = p * c / 2.0
    return rho


def two_param_state(p: float, sigma: float) -> np.ndarray:
    """rho_{p,sigma}: phase-noisy Bell state mixed with white noise."""
    if not 0.0 <= p <= 1.0:
        raise OutOfDomainError(f"p must be in [0, 1], got {p}")
    return _two_param_matrix(p, coherence_factor(sigma))


def two_param_state_from_coherence(p: float, c: float) -> np.ndarray:
    """rho_{p,sigma} parameterized directly by the coherence factor c."""
    if not 0.0 <= p <= 1.0:
        raise OutOfDomainError(f"p must be in [0, 1], got {p}")
    if not 0.0 <= c <= 1.0:
        raise OutOfDomainError(f"c must be in [0, 1], got {c}")
    return _two_param_matrix(p, c)


def two_param_negativity(p, c):
    """Analytic negativity of rho_{p,sigma}: 2 * max(0, p*c/2 - (1-p)/4)."""
    return 2.0 * np.maximum(0.0, np.asarray(p) * np.asarray(c) / 2.0 - (1.0 - np.asarray(p)) / 4.0)


def two_param_purity(p, c):
    """Analytic Tr(rho^2) for rho_{p,sigma}."""
    p = np.asarray(p)
    c = np.asarray(c)
    return 2.0 * (((1.0 + p) / 4.0) ** 2 + ((1.0 - p) / 4.0) ** 2) + 2.0 * (p * c / 2.0) ** 2


def bell_diagonal_state(pvec) -> np.ndarray:
    """Mixture of the four Bell projectors with weights pvec."""
    pvec = np.asarray(pvec, dtype=float)
    if pvec.shape != (4,) or pvec.min() < 0 or abs(pvec.sum() - 1.0) > 1e-12:
        raise InvalidSimplexPointError(f"weights must be a point on the 3-simplex, got {pvec}")
    rho = np.zeros((4, 4), dtype=complex)
    for w, v in zip(pvec, BELL_VECTORS):
        rho += w * np.outer(v, v.conj())
    return rho


def bell_diagonal_negativity(pvec):
    """2 * max(0, max_i p_i - 1/2) for Bell-diagonal weights (rows of pvec)."""
    pvec = np.atleast_2d(pvec)
    out = 2.0 * np.maximum(0.0, pvec.max(axis=1) - 0.5)
    return out if out.size > 1 else float(out[0])


def rho_k_state(k: float) -> np.ndarray:
    """0.5 |psi_k><psi_k| + 0.5 I/4 with |psi_k> = (|00> + k|11>)/sqrt(1+k^2).

    Purity is 0.4375 for every k in (0, 1].
    """
    if not 0.0 < k <= 1.0:
        raise OutOfDomainError(f"k must be in (0, 1], got {k}")
    v = np.array([1.0, 0.0, 0.0, k], dtype=complex) / np.sqrt(1.0 + k * k)
    return 0.5 * np.outer(v, v.conj()) + 0.125 * np.eye(4, dtype=complex)


def reference_mixture(which: str) -> np.ndarray:
    """Benchmark source states: 0.53/0.47 mixtures of two partially entangled kets.

    "rho1" uses relative amplitude 0.9 and "rho2" uses 0.5; both mix a
    (|00> + a|11>)-type ket with a (|01> + a|10>)-type ket.
    """
    amps = {"rho1": 0.9, "rho2": 0.5}
    if which not in amps:
        raise UnknownStateFamilyError(f"unknown mixture {which!r}; expected 'rho1' or 'rho2'")
    a = amps[which]
    norm = np.sqrt(1.0 + a * a)
    psi = np.array([1.0, 0.0, 0.0, a], dtype=complex) / norm
    phi = np.array([0.0, 1.0, a, 0.0], dtype=complex) / norm
    return 0.53 * np.outer(psi, psi.conj()) + 0.47 * np.outer(phi, phi.conj())


# --- test sets ---------------------------------------------------------------

ENTANGLED_THRESHOLD = 1e-12

_CHUNK = 100_000


@dataclass
class TestSet:
    """Finite prior over candidate states with cached per-state scalars.

    ``params`` rows are (p, sigma, c) for the two-parameter family and
    (p1, p2, p3, p4) for the Bell-diagonal family.
    """

    model_id: str
    params: np.ndarray
    negativities: np.ndarray
    purities: np.ndarray
    prior_weights: np.ndarray
    _probs: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.params)
        if n < 1:
            raise InvalidGridSizeError("test set must contain at least one state")
        if self.prior_weights.min() < 0 or abs(self.prior_weights.sum() - 1.0) > 1e-12:
            raise InvalidSimplexPointError("prior weights must be non-negative and sum to 1")

    @property
    def n_states(self) -> int:
        return len(self.params)

    @property
    def entangled(self) -> np.ndarray:
        return self.negativities > ENTANGLED_THRESHOLD

    def state(self, i: int) -> np.ndarray:
        if self.model_id == MODEL_TWO_PARAM:
            p, _, c = self.params[i]
            return _two_param_matrix(p, c)
        return bell_diagonal_state(self.params[i])

    def matrices(self, idx) -> np.ndarray:
        """Density matrices for the given index range, stacked (n, 4, 4)."""
        prm = self.params[idx]
        if self.model_id == MODEL_TWO_PARAM:
            n = len(prm)
            rho = np.zeros((n, 4, 4), dtype=complex)
            p, c = prm[:, 0], prm[:, 2]
            rho[:, 0, 0] = rho[:, 3, 3] = (1.0 + p) / 4.0
            rho[:, 1, 1] = rho[:, 2, 2] = (1.0 - p) / 4.0
            rho[:, 0, 3] = rho[:, 3, 0] = p * c / 2.0
            return rho
        return np.einsum("ni,ijk->njk", prm, _bell_projector_stack())

    def outcome_probs(self) -> np.ndarray:
        """Outcome probabilities (n_states, 20) for the five default settings.

        Computed once and cached; Bell-diagonal sets use the exact linear
        map from simplex weights to probabilities.
        """
        if self._probs is None:
            ops = measurement.setting_operators().reshape(20, 4, 4)
            ovec = ops.transpose(0, 2, 1).reshape(20, 16)
            if self.model_id == MODEL_BELL_DIAGONAL:
                bvec = _bell_projector_stack().reshape(4, 16)
                mmap = (bvec @ ovec.T).real  # (4, 20)
                probs = self.params @ mmap
            else:
                probs = np.empty((self.n_states, 20))
                for lo in range(0, self.n_states, _CHUNK):
                    sl = slice(lo, min(lo + _CHUNK, self.n_states))
                    rvec = self.matrices(sl).reshape(-1, 16)
                    probs[sl] = (rvec @ ovec.T).real
            assert probs.min() > -1e-10
            self._probs = np.clip(probs, 0.0, 1.0)
        return self._probs


def _bell_projector_stack() -> np.ndarray:
    return np.stack([np.outer(v, v.conj()) for v in BELL_VECTORS])


def grid_prior_two_param(n_p: int, n_sigma: int) -> TestSet:
    """Uniform (p, sigma) grid over [0,1] x [0,pi], both endpoints included."""
    if n_p < 2 or n_sigma < 2:
        raise InvalidGridSizeError(f"grid must be at least 2x2, got {n_p}x{n_sigma}")
    p_axis = np.linspace(0.0, 1.0, n_p)
    s_axis = np.linspace(0.0, np.pi, n_sigma)
    c_axis = np.array([coherence_factor(s) for s in s_axis])
    pg, sg = np.meshgrid(p_axis, s_axis, indexing="ij")
    cg = np.broadcast_to(c_axis, pg.shape)
    params = np.column_stack([pg.ravel(), sg.ravel(), cg.ravel()])
    n = len(params)
    return TestSet(
        model_id=MODEL_TWO_PARAM,
        params=params,
        negativities=two_param_negativity(params[:, 0], params[:, 2]),
        purities=two_param_purity(params[:, 0], params[:, 2]),
        prior_weights=np.full(n, 1.0 / n),
    )


def simplex_prior_bell_diagonal(n: int, seed: int) -> TestSet:
    """n Bell-diagonal weight vectors drawn uniformly on the 3-simplex.

    Uses sorted-uniform spacings, which are exactly uniform on the simplex;
    deterministic for a given seed.
    """
    if n < 1:
        raise InvalidGridSizeError(f"sample count must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    u = np.sort(rng.random((n, 3)), axis=1)
    params = np.diff(u, axis=1, prepend=0.0, append=1.0)
    return TestSet(
        model_id=MODEL_BELL_DIAGONAL,
        params=params,
        negativities=np.atleast_1d(bell_diagonal_negativity(params)),
        purities=(params**2).sum(axis=1),
        prior_weights=np.full(n, 1.0 / n),
    )


def save_test_set(ts: TestSet, path) -> None:
    """Write one JSON line per state: model id, parameters, cached scalars."""
    with open(path, "w") as fh:
        for prm, neg, pur, w in zip(ts.params, ts.negativities, ts.purities, ts.prior_weights):
            fh.write(
                json.dumps(
                    {
                        "model": ts.model_id,
                        "params": list(prm),
                        "negativity": neg,
                        "purity": pur,
                        "weight": w,
                    }
                )
            )
            fh.write("\n")


def load_test_set(path) -> TestSet:
    params, neg, pur, weights = [], [], [], []
    model_ids = set()
    try:
        with open(path) as fh:
            for line in fh:
                if not line.strip():
                    continue
                doc = json.loads(line)
                model_ids.add(doc["model"])
                params.append(doc["params"])
                neg.append(doc["negativity"])
                pur.append(doc["purity"])
                weights.append(doc["weight"])
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise ParseFailureError(f"cannot read test set {path}: {exc}") from exc
    if len(model_ids) != 1:
        raise ParseFailureError(f"test set mixes model ids: {sorted(model_ids)}")
    model_id = model_ids.pop()
    if model_id not in (MODEL_TWO_PARAM, MODEL_BELL_DIAGONAL):
        raise UnknownStateFamilyError(f"unknown model id {model_id!r}")
    return TestSet(
        model_id=model_id,
        params=np.array(params),
        negativities=np.array(neg),
        purities=np.array(pur),
        prior_weights=np.array(weights),
    )
