""" End-to-end experiment: dataset, partition, online loop, final
    evaluation and the oracle baselines.

    Created: Oct 12, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
from dataclasses import dataclass, replace

# Third party
import numpy as np

# Custom
from models import datamodel as dm
from models import graphmodel as gm
from models import matrixmodel as mx
from models import metricsmodel as mm
from models.federationmodel import Federation, RoundContext
from models.synthmodel import generate_synthetic

##########
# Logger #
##########
logger = logging.getLogger(__name__)

#############
# Constants #
#############
# Extra stream id for the event-perfect oracle noise
ORACLE_STREAM = 2

#############
# RunInputs #
#############
@dataclass(frozen=True, eq=False)
class RunInputs:
    """ Loaded speeds, graph and closed partition of one run. """
    series: dm.SpeedSeries
    graph: gm.WeightedGraph
    partition: gm.CloudletPartition
    synthetic: object = None


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    config: object
    inputs: RunInputs
    federation: Federation
    final: dict
    oracles: dict
    train_events: list
    val_events: list
    n_train_steps: int
    n_val_steps: int

###########
# Loading #
###########
def _synthetic_inputs(config):
    syn = config.synthetic
    data = generate_synthetic(
        nodes=syn.nodes,
        steps=syn.steps,
        jam_rate=syn.jam_rate,
        seed=config.seed,
        cloudlets=syn.cloudlets,
        spacing=syn.spacing,
        interval=config.dataset.interval,
        cooldown=config.sepa.tau_c,
        event_window=config.sepa.H,
        lag=syn.lag
        )
    node_ids = data.speeds.node_ids
    graph = gm.build_adjacency(
        mx.distance_matrix(data.distances, node_ids, source='synthetic'),
        kernel_sigma=config.graph.kernel_sigma,
        cutoff=config.graph.cutoff,
        node_ids=node_ids,
        positions=data.positions[['x_m', 'y_m']].to_numpy(dtype=float)
        )
    radius = config.graph.radius or data.radius
    centers = data.centers[['x_m', 'y_m']].to_numpy(dtype=float)
    partition = gm.partition_by_radius(graph, centers, radius)
    return data.speeds, graph, partition, data


def _file_inputs(config):
    data = config.data
    series = dm.load_speed_matrix(data.speeds, config.dataset.interval)
    node_ids = series.node_ids

    positions = None
    if data.positions is not None:
        positions = mx.PositionTable(data.positions).import_matrix_file(
            node_ids)
    if data.distances is not None:
        distances = mx.DistanceTable(data.distances).import_matrix_file(
            node_ids)
    else:
        logger.info("No distance table; using straight-line distances")
        distances = gm.distances_from_positions(positions)

    graph = gm.build_adjacency(
        distances,
        kernel_sigma=config.graph.kernel_sigma,
        cutoff=config.graph.cutoff,
        node_ids=node_ids,
        positions=positions
        )
    if data.assignment is not None:
        mapping = mx.AssignmentTable(data.assignment).import_matrix_file()
        partition = gm.partition_from_assignment(graph, mapping)
    else:
        centers = mx.CenterTable(data.centers).import_matrix_file()
        partition = gm.partition_by_radius(graph, centers, config.graph.radius)
    return series, graph, partition, None


def load_inputs(config):
    """ Speeds, weighted graph and partition with its l-hop closure. """
    if config.synthetic.enabled:
        series, graph, partition, synthetic = _synthetic_inputs(config)
    else:
        series, graph, partition, synthetic = _file_inputs(config)
    partition = gm.dependency_closure(graph, partition, config.l_hops)
    partition.check()
    return RunInputs(series=series, graph=graph, partition=partition,
                     synthetic=synthetic)

###########
# Oracles #
###########
def evaluate_oracles(val_batch, val_events, config):
    """ Event-blind and event-perfect predictions at the headline
        horizon over every node of the validation split.
    """
    h = config.horizon
    truth = val_batch.raw_truth[:, h - 1, :]
    offset = int(val_batch.t0[0]) + val_batch.lookback - 1 + h
    rng = np.random.default_rng([config.seed, ORACLE_STREAM])
    preds = {
        'event_blind': mm.event_blind_oracle(
            truth, val_events, config.sepa, offset=offset),
        'event_perfect': mm.event_perfect_oracle(truth, config.sepa, rng)
    }
    oracles = {}
    for name, pred in preds.items():
        score = mm.sepa(pred, truth, val_events, config.sepa, offset=offset)
        oracles[name] = {
            **mm.regression_metrics(pred, truth),
            'sepa': score.value,
            'sepa_total': score.total
        }
    return oracles

##############
# Experiment #
##############
def _instances(split, standardizer, config):
    instances = dm.make_instances(
        dm.standardize(split, standardizer),
        lookback=config.forecaster.lookback,
        horizon=config.horizon
        )
    return instances


def run_experiment(config):
    """ dataset -> partition -> online loop -> final evaluation. """
    logger.info("Starting run: connectivity=%s, strategy=%s, horizon=%d, "
                "window=%d, seed=%d", config.connectivity,
                config.federation.strategy, config.horizon,
                config.window_size, config.seed)
    inputs = load_inputs(config)
    train, val = dm.split_train_val(inputs.series, config.dataset.split_ratio)
    standardizer = dm.fit_standardizer(train, config.dataset.per_sensor)

    # Events are found once per split on the raw series
    train_events = mm.detect_sudden_events(
        train.values, config.sepa, offset=train.offset)
    val_events = mm.detect_sudden_events(
        val.values, config.sepa, offset=val.offset)
    logger.info("Sudden events: %d train, %d validation",
                len(train_events), len(val_events))

    windows = dm.window_stream(
        _instances(train, standardizer, config), config.window_size,
        standardizer)
    if not windows:
        raise ValueError("Training split is too short for one instance")
    val_instances = _instances(val, standardizer, config)
    if not val_instances:
        raise ValueError("Validation split is too short for one instance")
    val_batch = dm.window_stream(
        val_instances, len(val_instances), standardizer)[0]

    ctx = RoundContext(
        graph=inputs.graph,
        partition=inputs.partition,
        windows=windows,
        events=train_events,
        standardizer=standardizer,
        horizon=config.horizon,
        connectivity=config.connectivity,
        forecaster=config.forecaster,
        controller=config.controller,
        sepa=config.sepa,
        strategy=replace(config.federation, seed=config.seed)
        )
    federation = Federation(ctx)
    federation.run()
    final = federation.final_evaluation(val_batch, val_events)
    oracles = evaluate_oracles(val_batch, val_events, config)

    return ExperimentResult(
        config=config,
        inputs=inputs,
        federation=federation,
        final=final,
        oracles=oracles,
        train_events=train_events,
        val_events=val_events,
        n_train_steps=train.n_steps,
        n_val_steps=val.n_steps
        )


if __name__ == "__main__":
    pass
