""" Regression metrics, sudden-event detection, the SEPA score and
    the two oracle baselines.

    All arrays are time x node in mile/h. Events carry the absolute
    step index t and the global node index, so callers pass the
    absolute step of row 0 (offset) and the global node of each
    column (nodes).

    Created: Oct 04, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
from dataclasses import dataclass

# Third party
import numpy as np
import pandas as pd

##########
# Logger #
##########
logger = logging.getLogger(__name__)

##############
# Exceptions #
##############
class ShapeMismatch(ValueError):
    pass


class ZeroTruthSum(ValueError):
    pass

#############
# Constants #
#############
SLOWDOWN = 'slowdown'
RECOVERY = 'recovery'
EVENT_COLUMNS = ['node', 't', 'kind', 'magnitude']

###############
# EventRecord #
###############
@dataclass(frozen=True, order=True)
class EventRecord:
    node: int
    t: int
    kind: str
    magnitude: float

##############
# SepaConfig #
##############
@dataclass(frozen=True)
class SepaConfig:
    H: int = 12
    delta_change: float = 20.0
    delta_tol: float = 10.0
    tau_c: int = 6

    def __post_init__(self):
        if self.H < 1:
            raise ValueError("H must be >= 1")
        if min(self.delta_change, self.delta_tol, self.tau_c) <= 0:
            raise ValueError("SEPA thresholds and cooldown must be positive")

#############
# SepaScore #
#############
@dataclass(frozen=True)
class SepaScore:
    correct: int
    total: int

    @property
    def value(self):
        """ Fraction correct, or None when there were no events. """
        if self.total == 0:
            return None
        return self.correct / self.total

    def __add__(self, other):
        return SepaScore(self.correct + other.correct,
                         self.total + other.total)

######################
# Regression metrics #
######################
def _check_pair(pred, truth):
    pred = np.asarray(pred, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if pred.shape != truth.shape:
        raise ShapeMismatch(
            f"Prediction shape {pred.shape} != truth shape {truth.shape}")
    if pred.size == 0:
        raise ShapeMismatch("Metrics need at least one entry")
    return pred, truth


def mae(pred, truth):
    pred, truth = _check_pair(pred, truth)
    return float(np.mean(np.abs(pred - truth)))


def rmse(pred, truth):
    pred, truth = _check_pair(pred, truth)
    return float(np.sqrt(np.mean((pred - truth) ** 2)))


def wmape(pred, truth):
    """ Sum |error| / sum truth, in percent. """
    pred, truth = _check_pair(pred, truth)
    total = truth.sum()
    if total <= 0:
        raise ZeroTruthSum("WMAPE needs a positive sum of true values")
    return float(np.abs(pred - truth).sum() / total * 100.0)


def regression_metrics(pred, truth):
    """ MAE, RMSE and WMAPE as a dict. """
    return {
        'mae': mae(pred, truth),
        'rmse': rmse(pred, truth),
        'wmape': wmape(pred, truth)
    }

###################
# Event detection #
###################
def detect_sudden_events(truth_raw, cfg, nodes=None, offset=0):
    """ Slowdown if X_t <= X_k - delta_change for some k in the last H
        steps, recovery if X_t >= X_k + delta_change. Slowdown wins
        when both trigger. After an event the node is not scanned for
        the next tau_c steps.
    """
    x = np.asarray(truth_raw, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] < 2:
        raise ValueError("Event detection needs at least two steps")
    if nodes is None:
        nodes = range(x.shape[1])
    nodes = [int(n) for n in nodes]

    # Max / min of the previous H values (fewer at the start)
    frame = pd.DataFrame(x)
    past = frame.shift(1).rolling(cfg.H, min_periods=1)
    past_max = past.max().to_numpy()
    past_min = past.min().to_numpy()

    with np.errstate(invalid='ignore'):
        slow = x <= past_max - cfg.delta_change
        rec = x >= past_min + cfg.delta_change

    events = []
    for col, node in enumerate(nodes):
        candidates = np.flatnonzero(slow[:, col] | rec[:, col])
        last = None
        for t in candidates:
            if last is not None and t - last <= cfg.tau_c:
                continue
            if slow[t, col]:
                kind, magnitude = SLOWDOWN, past_max[t, col] - x[t, col]
            else:
                kind, magnitude = RECOVERY, x[t, col] - past_min[t, col]
            events.append(EventRecord(
                node=node, t=int(t) + offset, kind=kind,
                magnitude=float(magnitude)))
            last = t
    events.sort(key=lambda e: (e.t, e.node))
    logger.debug("Detected %d sudden events over %d steps x %d nodes",
                 len(events), x.shape[0], x.shape[1])
    return events


def filter_events(events, nodes=None, start=None, stop=None):
    """ Events at the given nodes with start <= t < stop. """
    keep = None if nodes is None else set(int(n) for n in nodes)
    return [
        e for e in events
        if (keep is None or e.node in keep)
        and (start is None or e.t >= start)
        and (stop is None or e.t < stop)
        ]


def events_to_frame(events):
    return pd.DataFrame(
        [(e.node, e.t, e.kind, e.magnitude) for e in events],
        columns=EVENT_COLUMNS
        )

########
# SEPA #
########
def _locate(events, shape, nodes, offset):
    """ (row, col) of each event inside a (steps, nodes) array. """
    if nodes is None:
        nodes = range(shape[1])
    column = {int(n): i for i, n in enumerate(nodes)}
    cells = []
    for e in events:
        row = e.t - offset
        if e.node in column and 0 <= row < shape[0]:
            cells.append((row, column[e.node]))
    return cells


def sepa(pred_raw, truth_raw, events, cfg, nodes=None, offset=0):
    """ Count events whose prediction lies within delta_tol of the
        truth. Entries without a prediction (NaN) are not counted.
    """
    pred, truth = _check_pair(pred_raw, truth_raw)
    if pred.ndim == 1:
        pred, truth = pred[:, None], truth[:, None]
    correct = total = 0
    for row, col in _locate(events, pred.shape, nodes, offset):
        if np.isnan(pred[row, col]):
            continue
        total += 1
        if abs(pred[row, col] - truth[row, col]) <= cfg.delta_tol:
            correct += 1
    return SepaScore(correct=correct, total=total)


def aggregate_weighted(values, weights):
    """ Weighted mean skipping absent (None) values and their weights. """
    pairs = [(v, w) for v, w in zip(values, weights)
             if v is not None and w > 0]
    if any(w < 0 for w in weights):
        raise ValueError("Weights must be non-negative")
    if not pairs:
        return None
    total = sum(w for _, w in pairs)
    return float(sum(v * w for v, w in pairs) / total)


def event_error_split(pred_raw, truth_raw, events, nodes=None, offset=0):
    """ Mean absolute error at event entries vs. all other entries. """
    pred, truth = _check_pair(pred_raw, truth_raw)
    if pred.ndim == 1:
        pred, truth = pred[:, None], truth[:, None]
    err = np.abs(pred - truth)
    mask = np.zeros(err.shape, dtype=bool)
    for row, col in _locate(events, err.shape, nodes, offset):
        mask[row, col] = True
    valid = ~np.isnan(err)
    sudden = err[mask & valid]
    calm = err[~mask & valid]
    return {
        'mae_all': float(err[valid].mean()) if valid.any() else None,
        'mae_sudden': float(sudden.mean()) if sudden.size else None,
        'mae_non_sudden': float(calm.mean()) if calm.size else None,
        'n_sudden': int(sudden.size),
        'n_non_sudden': int(calm.size)
    }

####################
# Oracle baselines #
####################
def event_blind_oracle(truth_raw, events, cfg, nodes=None, offset=0):
    """ Exact everywhere except at events, where the prediction misses
        by delta_tol + 1 mile/h in the direction of the old speed.
    """
    truth = np.asarray(truth_raw, dtype=float)
    pred = truth.copy()
    view = pred if pred.ndim == 2 else pred[:, None]
    shift = cfg.delta_tol + 1.0
    # One shift per (node, t), even if the event list repeats it
    located = {}
    for e in events:
        cells = _locate([e], view.shape, nodes, offset)
        if cells:
            located[cells[0]] = 1.0 if e.kind == SLOWDOWN else -1.0
    for (row, col), sign in located.items():
        view[row, col] += sign * shift
    return pred


def event_perfect_oracle(truth_raw, cfg, rng, q=0.99):
    """ Truth plus uniform noise strictly inside the tolerance band. """
    truth = np.asarray(truth_raw, dtype=float)
    bound = cfg.delta_tol * q
    return truth + rng.uniform(-bound, bound, size=truth.shape)


if __name__ == "__main__":
    pass
