""" Speed series ingestion, standardization, instance packing and
    the sliding-window stream used for online training.

    Created: Oct 03, 2026
    Last edited: Oct 18, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
import math
from dataclasses import dataclass

# Third party
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# Custom
from models.matrixmodel import SpeedMatrix

##########
# Logger #
##########
logger = logging.getLogger(__name__)

##############
# Exceptions #
##############
class ZeroVariance(ValueError):
    """ Training data has zero population variance. """
    pass

###############
# SpeedSeries #
###############
@dataclass(frozen=True, eq=False)
class SpeedSeries:
    """ Time x node speed matrix (mile/h, or standardized units).

        offset is the absolute index of the first row, so splits keep
        their position in the original recording.
    """
    values: np.ndarray
    node_ids: tuple
    interval: int = 300
    offset: int = 0

    def __post_init__(self):
        if self.values.ndim != 2:
            raise ValueError("Speed values must be a time x node matrix")
        if self.values.shape[1] != len(self.node_ids):
            raise ValueError(
                f"{self.values.shape[1]} columns but "
                f"{len(self.node_ids)} node ids")
        self.values.setflags(write=False)

    @property
    def n_steps(self):
        return self.values.shape[0]

    @property
    def n_nodes(self):
        return self.values.shape[1]

    def with_values(self, values):
        return SpeedSeries(
            values=values,
            node_ids=self.node_ids,
            interval=self.interval,
            offset=self.offset
            )

############
# Instance #
############
@dataclass(frozen=True, eq=False)
class Instance:
    """ One (lookback, horizon) pair; t0 is the absolute index of the
        first input step.
    """
    input: np.ndarray
    target: np.ndarray
    t0: int

###############
# WindowBatch #
###############
@dataclass(frozen=True, eq=False)
class WindowBatch:
    """ One online-training window of stacked instances.

        inputs  (B, T, n)   standardized
        targets (B, T', n)  standardized
        raw_truth (B, T', n) mile/h
        t0      (B,)        absolute index of each first input step
        nodes   global node index of every column
    """
    window_index: int
    inputs: np.ndarray
    targets: np.ndarray
    raw_truth: np.ndarray
    t0: np.ndarray
    nodes: tuple

    def __len__(self):
        return self.inputs.shape[0]

    @property
    def lookback(self):
        return self.inputs.shape[1]

    @property
    def horizon(self):
        return self.targets.shape[1]

    @property
    def step_span(self):
        """ (first, last) absolute step covered by inputs and targets. """
        if not len(self):
            return None
        last = int(self.t0[-1]) + self.lookback + self.horizon - 1
        return int(self.t0[0]), last

    @property
    def n_timesteps(self):
        """ Unique timesteps spanned by the window. """
        span = self.step_span
        return 0 if span is None else span[1] - span[0] + 1

    def select(self, nodes):
        """ Restrict to the given global nodes, in the given order. """
        column = {n: i for i, n in enumerate(self.nodes)}
        cols = [column[int(n)] for n in nodes]
        return WindowBatch(
            window_index=self.window_index,
            inputs=self.inputs[:, :, cols],
            targets=self.targets[:, :, cols],
            raw_truth=self.raw_truth[:, :, cols],
            t0=self.t0,
            nodes=tuple(int(n) for n in nodes)
            )

    def subset(self, rows):
        """ Rows (instances) of this window, as a new batch. """
        return WindowBatch(
            window_index=self.window_index,
            inputs=self.inputs[rows],
            targets=self.targets[rows],
            raw_truth=self.raw_truth[rows],
            t0=self.t0[rows],
            nodes=self.nodes
            )

################
# Standardizer #
################
@dataclass(frozen=True, eq=False)
class Standardizer:
    """ z-score transform. mean and std are scalars (global) or
        per-sensor vectors.
    """
    mean: object
    std: object

    def standardize(self, values):
        return (np.asarray(values, dtype=float) - self.mean) / self.std

    def destandardize(self, values):
        return np.asarray(values, dtype=float) * self.std + self.mean

    def select(self, nodes):
        """ Standardizer for a subset of columns. """
        if np.ndim(self.mean) == 0:
            return self
        nodes = list(nodes)
        return Standardizer(mean=np.asarray(self.mean)[nodes],
                            std=np.asarray(self.std)[nodes])

##############
# Operations #
##############
def load_speed_matrix(path, interval=300):
    """ Read a speed CSV into a SpeedSeries. """
    node_ids, values = SpeedMatrix(path).import_matrix_file()
    return SpeedSeries(values=values, node_ids=node_ids, interval=interval)


def split_train_val(series, ratio=0.8):
    """ Chronological prefix/suffix split at floor(ratio * steps). """
    if not 0 < ratio < 1:
        raise ValueError(f"Split ratio must be in (0, 1), got {ratio}")
    cut = math.floor(ratio * series.n_steps)
    train = SpeedSeries(
        values=np.array(series.values[:cut]),
        node_ids=series.node_ids,
        interval=series.interval,
        offset=series.offset
        )
    val = SpeedSeries(
        values=np.array(series.values[cut:]),
        node_ids=series.node_ids,
        interval=series.interval,
        offset=series.offset + cut
        )
    logger.info("Split %d steps into %d train / %d validation",
                series.n_steps, train.n_steps, val.n_steps)
    return train, val


def fit_standardizer(train, per_sensor=False):
    """ Mean and population std of the training split. """
    if train.n_steps == 0:
        raise ValueError("Cannot fit a standardizer on an empty series")
    values = train.values
    if per_sensor:
        mean = values.mean(axis=0)
        std = values.std(axis=0)
        if (std <= 0).any():
            flat = [train.node_ids[i] for i in np.flatnonzero(std <= 0)]
            raise ZeroVariance(f"Zero variance for sensor(s) {flat}")
    else:
        mean = float(values.mean())
        std = float(values.std())
        if std <= 0:
            raise ZeroVariance("Training data has zero variance")
    return Standardizer(mean=mean, std=std)


def standardize(series, standardizer):
    return series.with_values(standardizer.standardize(series.values))


def destandardize(series, standardizer):
    return series.with_values(standardizer.destandardize(series.values))


def make_instances(series, lookback=12, horizon=12):
    """ Stride-1 (lookback, horizon) instances; views, not copies. """
    span = lookback + horizon
    if series.n_steps < span:
        logger.warning(
            "Series of %d steps is shorter than lookback + horizon (%d); "
            "no instances", series.n_steps, span)
        return []
    # (count, n, span) -> (count, span, n)
    frames = sliding_window_view(series.values, span, axis=0)
    frames = frames.transpose(0, 2, 1)
    return [
        Instance(
            input=frames[i, :lookback],
            target=frames[i, lookback:],
            t0=series.offset + i
            )
        for i in range(frames.shape[0])
        ]


def window_stream(instances, window_size, standardizer, nodes=None):
    """ Consecutive, non-overlapping windows of window_size instances.
        The final partial window is kept.
    """
    if window_size <= 0:
        raise ValueError("window_size must be positive")
    windows = []
    for index, start in enumerate(range(0, len(instances), window_size)):
        chunk = instances[start:start + window_size]
        inputs = np.stack([inst.input for inst in chunk])
        targets = np.stack([inst.target for inst in chunk])
        if nodes is None:
            nodes = tuple(range(inputs.shape[2]))
        windows.append(WindowBatch(
            window_index=index,
            inputs=inputs,
            targets=targets,
            raw_truth=standardizer.destandardize(targets),
            t0=np.array([inst.t0 for inst in chunk], dtype=int),
            nodes=tuple(nodes)
            ))
    logger.info("Streaming %d instances as %d windows of up to %d",
                len(instances), len(windows), window_size)
    return windows


if __name__ == "__main__":
    pass
