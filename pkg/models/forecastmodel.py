""" Forecaster interface and the reference linear Chebyshev
    spatio-temporal model.

    The reference model shares its coefficients across nodes:

        y[h] = sum_k sum_tau theta[h, k, tau] * T_k(L~) x[tau] + b[h]

    so the parameter vector depends only on (K, T, T') and models
    trained on differently pruned subgraphs can always be averaged.

    Created: Oct 05, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
from dataclasses import dataclass, field
from pathlib import Path

# Third party
import numpy as np
from scipy.linalg import eigvalsh
from scipy.sparse.linalg import eigsh

# Custom
from models.graphmodel import induced_subgraph

##########
# Logger #
##########
logger = logging.getLogger(__name__)

##############
# Exceptions #
##############
class IncompatibleModels(ValueError):
    """ Parameter vectors with different shape tags. """
    pass


class DimensionMismatch(ValueError):
    pass

#############
# Constants #
#############
BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8
# Larger operators use sparse Lanczos for lambda_max
DENSE_LIMIT = 500

####################
# ForecasterConfig #
####################
@dataclass(frozen=True)
class ForecasterConfig:
    K: int = 3
    lookback: int = 12
    lr: float = 1e-4
    weight_decay: float = 1e-5
    batch_size: int = 32
    lr_decay: float = 0.7
    lr_decay_every: int = 5
    steps_per_window: int = 1
    init_noise: float = 0.01

    def __post_init__(self):
        if self.K < 1 or self.lookback < 1:
            raise ValueError("K and lookback must be >= 1")
        if self.lr <= 0 or self.weight_decay < 0:
            raise ValueError("lr must be positive, weight_decay >= 0")
        if min(self.batch_size, self.lr_decay_every,
               self.steps_per_window) < 1:
            raise ValueError(
                "batch_size, lr_decay_every and steps_per_window "
                "must be >= 1")
        if not 0 < self.lr_decay <= 1:
            raise ValueError("lr_decay must be in (0, 1]")

####################
# ForecasterParams #
####################
@dataclass(frozen=True, eq=False)
class ForecasterParams:
    """ Flat coefficient vector plus the tag needed to unflatten it. """
    theta: np.ndarray
    shape_tag: str

    def __post_init__(self):
        self.theta.setflags(write=False)

    @property
    def size(self):
        return self.theta.size

    def unflatten(self):
        """ (coefficients (T', K, T), bias (T',)). """
        K, T, horizon = parse_shape_tag(self.shape_tag)
        n_coef = horizon * K * T
        if self.theta.size != n_coef + horizon:
            raise DimensionMismatch(
                f"{self.theta.size} values do not fit {self.shape_tag}")
        return (self.theta[:n_coef].reshape(horizon, K, T),
                self.theta[n_coef:])

    @classmethod
    def flatten(cls, coefficients, bias, shape_tag):
        theta = np.concatenate([np.ravel(coefficients), np.ravel(bias)])
        return cls(theta=theta.astype(float), shape_tag=shape_tag)


def make_shape_tag(K, T, horizon):
    return f"cheb-linear;K={K};T={T};H={horizon}"


def parse_shape_tag(tag):
    parts = dict(p.split('=') for p in tag.split(';')[1:])
    return int(parts['K']), int(parts['T']), int(parts['H'])

#############
# ChebModel #
#############
@dataclass(frozen=True, eq=False)
class ChebModel:
    """ Chebyshev operator of one training subgraph.

        The first local_count nodes of the subgraph carry the loss;
        the rest only feed the receptive field.
    """
    K: int
    T: int
    horizon: int
    scaled_laplacian: np.ndarray
    lambda_max: float
    local_count: int
    polynomials: np.ndarray = field(repr=False, default=None)

    @property
    def n_nodes(self):
        return self.scaled_laplacian.shape[0]

    @property
    def shape_tag(self):
        return make_shape_tag(self.K, self.T, self.horizon)

    @property
    def n_params(self):
        return self.horizon * self.K * self.T + self.horizon


def normalized_laplacian(adjacency):
    """ I - D^-1/2 W D^-1/2; isolated nodes get a unit diagonal. """
    w = np.asarray(adjacency, dtype=float)
    degree = w.sum(axis=1)
    inv_sqrt = np.zeros_like(degree)
    nonzero = degree > 0
    inv_sqrt[nonzero] = 1.0 / np.sqrt(degree[nonzero])
    return np.eye(w.shape[0]) - inv_sqrt[:, None] * w * inv_sqrt[None, :]


def largest_eigenvalue(matrix, max_iter=10_000):
    """ Largest eigenvalue of a symmetric matrix to machine precision:
        LAPACK for graphs up to DENSE_LIMIT nodes, Lanczos above.
    """
    n = matrix.shape[0]
    if n == 0:
        return 0.0
    if n <= DENSE_LIMIT:
        return float(eigvalsh(matrix, subset_by_index=[n - 1, n - 1])[0])
    # Deterministic start; all-ones is orthogonal to the top
    # eigenvector of an even-length path
    start = np.random.default_rng(0).uniform(0.5, 1.5, size=n)
    value = eigsh(matrix, k=1, which='LA', v0=start, tol=0,
                  maxiter=max_iter, return_eigenvectors=False)
    return float(value[0])


def scaled_laplacian(adjacency):
    """ (L~, lambda_max) with L~ = 2L / lambda_max - I. """
    lap = normalized_laplacian(adjacency)
    lam = largest_eigenvalue(lap)
    if lam <= 0:
        return -np.eye(lap.shape[0]), lam
    return 2.0 * lap / lam - np.eye(lap.shape[0]), lam


def chebyshev_basis(laplacian, K, X):
    """ [T_0 X, ..., T_{K-1} X] by the three-term recursion. """
    if K < 1:
        raise ValueError("Chebyshev order K must be >= 1")
    L = np.asarray(laplacian, dtype=float)
    X = np.asarray(X, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1] or X.shape[0] != L.shape[0]:
        raise DimensionMismatch(
            f"Operator {L.shape} cannot act on input {X.shape}")
    basis = [X]
    if K > 1:
        basis.append(L @ X)
    for _ in range(2, K):
        basis.append(2.0 * L @ basis[-1] - basis[-2])
    return basis


def build_model(graph, local_nodes, active_cross, K=3, T=12, horizon=12):
    """ ChebModel over the induced subgraph local + active cross. """
    sub = induced_subgraph(graph, local_nodes, active_cross)
    laplacian, lam = scaled_laplacian(sub.adjacency)
    polys = np.stack(chebyshev_basis(laplacian, K, np.eye(sub.n_nodes)))
    return ChebModel(
        K=K,
        T=T,
        horizon=horizon,
        scaled_laplacian=laplacian,
        lambda_max=lam,
        local_count=len(local_nodes),
        polynomials=polys
        ), sub

##############
# Prediction #
##############
def _features(model, inputs):
    """ Z[b, k, tau, n] = (T_k(L~) x_b[tau])_n for inputs (B, T, n). """
    inputs = np.asarray(inputs, dtype=float)
    if inputs.ndim == 2:
        inputs = inputs[None]
    if inputs.shape[1:] != (model.T, model.n_nodes):
        raise DimensionMismatch(
            f"Input {inputs.shape[1:]} does not match "
            f"(T={model.T}, nodes={model.n_nodes})")
    # T_k(L~) is symmetric, so x @ T_k applies it along the node axis
    return np.einsum('btn,kmn->bktm', inputs, model.polynomials)


def predict(model, params, inputs):
    """ (T, n) -> (T', n), or batched (B, T, n) -> (B, T', n). """
    if params.shape_tag != model.shape_tag:
        raise IncompatibleModels(
            f"Params {params.shape_tag} do not fit model {model.shape_tag}")
    single = np.ndim(inputs) == 2
    coef, bias = params.unflatten()
    Z = _features(model, inputs)
    out = np.einsum('hkt,bktn->bhn', coef, Z) + bias[None, :, None]
    return out[0] if single else out


def loss_and_grad(model, params, batch):
    """ Mean |y^ - y| over local nodes and its exact subgradient
        (sign(0) = 0).
    """
    if not len(batch):
        raise ValueError("Loss needs a non-empty batch")
    coef, bias = params.unflatten()
    Z = _features(model, batch.inputs)
    pred = np.einsum('hkt,bktn->bhn', coef, Z) + bias[None, :, None]
    local = slice(0, model.local_count)
    resid = pred[:, :, local] - batch.targets[:, :, local]
    count = resid.size
    loss = float(np.abs(resid).sum() / count)

    s = np.sign(resid) / count
    grad_coef = np.einsum('bhn,bktn->hkt', s, Z[:, :, :, local])
    grad_bias = s.sum(axis=(0, 2))
    grad = np.concatenate([grad_coef.ravel(), grad_bias])
    return loss, grad

##################
# Initialization #
##################
def init_params(K, T, horizon, rng, noise=0.01):
    """ Persistence wiring (copy the last input step) plus uniform
        noise on the coefficients.
    """
    coef = rng.uniform(-noise, noise, size=(horizon, K, T))
    coef[:, 0, T - 1] += 1.0
    return ForecasterParams.flatten(
        coef, np.zeros(horizon), make_shape_tag(K, T, horizon))


def persistence_params(K, T, horizon):
    coef = np.zeros((horizon, K, T))
    coef[:, 0, T - 1] = 1.0
    return ForecasterParams.flatten(
        coef, np.zeros(horizon), make_shape_tag(K, T, horizon))

#############
# Optimizer #
#############
@dataclass(frozen=True, eq=False)
class AdamState:
    m: np.ndarray
    v: np.ndarray
    step: int = 0

    @classmethod
    def zeros(cls, params):
        return cls(m=np.zeros(params.size), v=np.zeros(params.size))


def adam_step(params, grad, state, lr, weight_decay=0.0):
    """ Adam with decoupled weight decay. """
    grad = np.asarray(grad, dtype=float)
    if grad.shape != params.theta.shape:
        raise DimensionMismatch(
            f"Gradient {grad.shape} vs params {params.theta.shape}")
    step = state.step + 1
    m = BETA1 * state.m + (1 - BETA1) * grad
    v = BETA2 * state.v + (1 - BETA2) * grad ** 2
    m_hat = m / (1 - BETA1 ** step)
    v_hat = v / (1 - BETA2 ** step)
    theta = params.theta - lr * (m_hat / (np.sqrt(v_hat) + EPSILON)
                                 + weight_decay * params.theta)
    return (ForecasterParams(theta=theta, shape_tag=params.shape_tag),
            AdamState(m=m, v=v, step=step))


def scheduled_lr(base_lr, window_index, gamma=0.7, every=5):
    """ Step decay bound to the window count. """
    return base_lr * gamma ** (window_index // every)

###############
# Aggregation #
###############
def average_params(params_list, weights=None):
    """ Convex combination with renormalized weights. """
    params_list = list(params_list)
    if not params_list:
        raise ValueError("Nothing to average")
    tags = {p.shape_tag for p in params_list}
    if len(tags) > 1:
        raise IncompatibleModels(f"Cannot average shape tags {sorted(tags)}")
    if weights is None:
        weights = np.ones(len(params_list))
    weights = np.asarray(weights, dtype=float)
    if (weights < 0).any() or weights.sum() <= 0:
        raise ValueError("Weights must be non-negative with a positive sum")
    weights = weights / weights.sum()
    theta = np.tensordot(weights, np.stack([p.theta for p in params_list]),
                         axes=1)
    return ForecasterParams(theta=theta, shape_tag=params_list[0].shape_tag)

############
# Training #
############
def train_on_window(model, params, batch, opt_state, rng, lr,
                    weight_decay=0.0, steps_per_window=1, batch_size=32):
    """ steps_per_window shuffled passes of mini-batch Adam over the
        window. Returns (params, opt_state, mean mini-batch loss).
    """
    if not len(batch):
        return params, opt_state, None
    losses = []
    for _ in range(steps_per_window):
        order = rng.permutation(len(batch))
        for start in range(0, len(order), batch_size):
            mini = batch.subset(order[start:start + batch_size])
            loss, grad = loss_and_grad(model, params, mini)
            params, opt_state = adam_step(
                params, grad, opt_state, lr, weight_decay)
            losses.append(loss)
    return params, opt_state, float(np.mean(losses))


def train_step(model, params, batch, opt_state, rng, lr,
               weight_decay=0.0, batch_size=32):
    """ A single optimizer step on one random mini-batch. """
    if not len(batch):
        return params, opt_state
    rows = rng.permutation(len(batch))[:batch_size]
    _, grad = loss_and_grad(model, params, batch.subset(rows))
    return adam_step(params, grad, opt_state, lr, weight_decay)

###############
# Checkpoints #
###############
def save_params(path, params):
    """ shape_tag header line, then little-endian float64 values. """
    path = Path(path)
    with open(path, 'wb') as f:
        f.write(params.shape_tag.encode('ascii') + b'\n')
        f.write(params.theta.astype('<f8').tobytes())
    logger.debug("Saved %d params to %s", params.size, path)


def load_params(path):
    with open(path, 'rb') as f:
        tag = f.readline().decode('ascii').strip()
        theta = np.frombuffer(f.read(), dtype='<f8').astype(float)
    params = ForecasterParams(theta=theta, shape_tag=tag)
    params.unflatten()
    return params


if __name__ == "__main__":
    pass
