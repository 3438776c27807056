""" Seeded synthetic corridor with spatially propagating jams.

    Sensors sit on a straight corridor. Free-flow speed is 60 mile/h
    plus uniform noise. A jam drops the speed at its source node in a
    single step, holds for several steps, then recovers in a single
    step. It spreads to corridor neighbours hop by hop, reaching each
    node lag steps after the one it came from, so upstream features
    lead the downstream signal.

    Created: Oct 11, 2026
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

# Custom
from models.datamodel import SpeedSeries

##########
# Logger #
##########
logger = logging.getLogger(__name__)

#############
# Constants #
#############
FREE_FLOW = 60.0
NOISE = 2.0
DROP_RANGE = (25.0, 35.0)
DURATION_RANGE = (6, 18)
DEPTH_RANGE = (3, 10)
LAG_RANGE = (1, 2)
JAM_COLUMNS = ['jam', 'source', 'node', 'hop', 'start', 'stop', 'drop']

#################
# SyntheticData #
#################
@dataclass(frozen=True, eq=False)
class SyntheticData:
    """ Everything needed to run a scenario from memory or disk.

        speeds      SpeedSeries with string node ids
        distances   from,to,distance_m (neighbours within two hops)
        positions   sensor_id,x_m,y_m
        centers     cloudlet_id,x_m,y_m
        radius      covers every node from its nearest center
        jams        ground-truth jam log (stop is exclusive)
    """
    speeds: SpeedSeries
    distances: pd.DataFrame
    positions: pd.DataFrame
    centers: pd.DataFrame
    radius: float
    jams: pd.DataFrame

    def speed_frame(self):
        return pd.DataFrame(self.speeds.values,
                            columns=list(self.speeds.node_ids))

##############
# Operations #
##############
def _layout(nodes, cloudlets, spacing):
    """ Corridor positions, contiguous cloudlet blocks and their
        centers.
    """
    x = np.arange(nodes) * spacing
    blocks = np.array_split(np.arange(nodes), cloudlets)
    centers = np.array([[x[b].mean(), 0.0] for b in blocks])
    half_span = max((x[b].max() - x[b].min()) / 2 for b in blocks)
    return x, centers, half_span + spacing / 2


def _distance_table(node_ids, x, reach=2):
    rows = []
    n = len(node_ids)
    for i in range(n):
        for j in range(i + 1, min(n, i + reach + 1)):
            rows.append((node_ids[i], node_ids[j], float(x[j] - x[i])))
    return pd.DataFrame(rows, columns=['from', 'to', 'distance_m'])


def _wave_hops(source, t, direction, depth, duration, lag, rng, nodes,
               steps, quiet_from, guard):
    """ (node, hop, start, stop) of every node a jam reaches. The wave
        ends at the corridor edge, the end of the recording, or the
        first node that has not been quiet for guard steps.
    """
    hops = []
    start, node = t, source
    for hop in range(depth + 1):
        if not 0 <= node < nodes or start >= steps:
            break
        if hop and start - quiet_from[node] < guard:
            break
        hops.append((node, hop, start, min(start + duration, steps)))
        start += lag if lag is not None else int(
            rng.integers(LAG_RANGE[0], LAG_RANGE[1] + 1))
        node += direction
    return hops


def generate_synthetic(nodes, steps, jam_rate, seed, cloudlets=3,
                       spacing=2000.0, interval=300, cooldown=6,
                       event_window=12, lag=None):
    """ Build a corridor scenario.

        jam_rate is the expected number of new jams per hour over the
        whole corridor. A jam source is only accepted when the node
        has been in free flow for at least event_window + cooldown
        steps, so every source onset is a detectable slowdown; the
        same guard holds at every node the wave reaches.

        lag is the number of steps a jam takes to move one hop; None
        draws 1-2 steps per hop.
    """
    if nodes < 2 or steps < 50:
        raise ValueError("Synthetic scenarios need nodes >= 2, steps >= 50")
    if jam_rate < 0:
        raise ValueError("jam_rate must be >= 0")
    if not 1 <= cloudlets <= nodes:
        raise ValueError("cloudlets must be in [1, nodes]")
    if lag is not None and lag < 1:
        raise ValueError("lag must be >= 1 step per hop")

    rng = np.random.default_rng(seed)
    node_ids = tuple(str(i) for i in range(nodes))
    x, centers, radius = _layout(nodes, cloudlets, spacing)

    noise = rng.uniform(-NOISE, NOISE, size=(steps, nodes))
    drop = np.zeros((steps, nodes))
    # Step after the last affected step of each node
    quiet_from = np.zeros(nodes, dtype=int)

    p_start = jam_rate * interval / 3600.0
    guard = event_window + cooldown
    jams = []
    n_jams = 0
    for t in range(1, steps - 1):
        if rng.random() >= p_start:
            continue
        source = int(rng.integers(nodes))
        if t - quiet_from[source] < guard or drop[t - 1, source] > 0:
            continue
        magnitude = rng.uniform(*DROP_RANGE)
        duration = int(rng.integers(DURATION_RANGE[0], DURATION_RANGE[1] + 1))
        depth = int(rng.integers(DEPTH_RANGE[0], DEPTH_RANGE[1] + 1))
        direction = -1 if rng.random() < 0.5 else 1

        for node, hop, start, stop in _wave_hops(
                source, t, direction, depth, duration, lag, rng, nodes,
                steps, quiet_from, guard):
            drop[start:stop, node] = magnitude
            quiet_from[node] = stop
            jams.append((n_jams, source, node, hop, start, stop,
                         float(magnitude)))
        n_jams += 1

    values = FREE_FLOW + noise - drop
    speeds = SpeedSeries(values=values, node_ids=node_ids,
                         interval=interval)
    logger.info("Synthetic corridor: %d nodes, %d steps, %d jams",
                nodes, steps, n_jams)

    return SyntheticData(
        speeds=speeds,
        distances=_distance_table(node_ids, x),
        positions=pd.DataFrame({'sensor_id': list(node_ids), 'x_m': x,
                                'y_m': np.zeros(nodes)}),
        centers=pd.DataFrame({'cloudlet_id': np.arange(cloudlets),
                              'x_m': centers[:, 0],
                              'y_m': centers[:, 1]}),
        radius=float(radius),
        jams=pd.DataFrame(jams, columns=JAM_COLUMNS)
        )


def jam_sources(jams):
    """ (node, onset step) of every jam's source. """
    src = jams[jams['hop'] == 0]
    return list(zip(src['node'].astype(int), src['start'].astype(int)))


if __name__ == "__main__":
    pass
