""" Adaptive cross-cloudlet pruning.

    Per window a cloudlet protects the cross-cloudlet neighbours of
    local nodes with sudden events, prunes a fraction p_t of the
    remaining cross-cloudlet nodes (higher node score = more likely
    to go), validates once on the pruned subgraph and once with half
    of the surviving cross nodes masked, and feeds the SEPA difference
    back into the node scores. A ratio controller moves p_t.

    Node scores are accuracy oriented: masking an important node
    lowers SEPA, DELTA_SEPA is negative and that node's score drops,
    so it is pruned last.

    Created: Oct 06, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
import math
from dataclasses import dataclass, field, replace

# Third party
import numpy as np

##########
# Logger #
##########
logger = logging.getLogger(__name__)

#############
# Constants #
#############
WEIGHT_FLOOR = 1e-6

####################
# ControllerConfig #
####################
@dataclass(frozen=True)
class ControllerConfig:
    p_start: float = 0.10
    p_min: float = 0.10
    p_max: float = 0.70
    W_init: int = 2
    W: int = 3
    delta_margin_up: float = 0.00
    delta_margin_down: float = 0.03
    delta_pruning_up: float = 0.05
    delta_pruning_down: float = 0.05
    E_settle: int = 3

    def __post_init__(self):
        if not 0 <= self.p_min <= self.p_start <= self.p_max <= 1:
            raise ValueError(
                "Pruning bounds must satisfy 0 <= p_min <= p_start "
                "<= p_max <= 1")
        if min(self.W, self.W_init, self.E_settle) < 1:
            raise ValueError("W, W_init and E_settle must be >= 1")

################
# PruningState #
################
@dataclass(frozen=True)
class PruningState:
    """ Controller and node-score state of one cloudlet. """
    p_t: float
    node_scores: dict = field(default_factory=dict)
    sepa_base: float = None
    sepa_buffer: tuple = ()
    windows_seen: int = 0
    warmup_done: bool = False
    base_sum: float = 0.0
    base_count: int = 0
    settle_count: int = 0
    ratio: float = None
    ratio_undefined: bool = False

    @classmethod
    def start(cls, cfg, cross_nodes=()):
        return cls(
            p_t=cfg.p_start,
            node_scores={int(n): 0.0 for n in sorted(cross_nodes)}
            )

##############
# Operations #
##############
def protected_set(local_events, cloudlet, partition, graph):
    """ Cross-cloudlet nodes within l hops of a local node that had a
        sudden event.
    """
    sources = {e.node for e in local_events}
    if not sources:
        return frozenset()
    ball = graph.hop_ball(sources, partition.l_hops)
    return frozenset(ball & partition.dependencies[cloudlet])


def prune_count(p_t, n_cross, n_candidates):
    """ round(p_t * n_cross), halves rounded up, capped at the
        candidate count.
    """
    return min(int(math.floor(p_t * n_cross + 0.5)), n_candidates)


def prune_weights(candidates, scores):
    """ Removal weights NS_i - min NS + floor, in candidate order. """
    ns = np.array([scores.get(n, 0.0) for n in candidates], dtype=float)
    if not ns.size:
        return ns
    return ns - ns.min() + WEIGHT_FLOOR


def sample_prune(candidates, scores, p_t, rng, n_cross=None):
    """ Draw prune_count nodes without replacement, weighted by
        prune_weights.
    """
    candidates = sorted(int(n) for n in candidates)
    if n_cross is None:
        n_cross = len(candidates)
    m = prune_count(p_t, n_cross, len(candidates))
    if m == 0:
        return frozenset()
    weights = prune_weights(candidates, scores)
    picked = rng.choice(len(candidates), size=m, replace=False,
                        p=weights / weights.sum())
    return frozenset(candidates[i] for i in picked)


def mask_half(remaining, rng):
    """ floor(|remaining| / 2) nodes, uniformly without replacement. """
    remaining = sorted(int(n) for n in remaining)
    m = len(remaining) // 2
    if m == 0:
        return frozenset()
    picked = rng.choice(len(remaining), size=m, replace=False)
    return frozenset(remaining[i] for i in picked)


def delta_sepa(sepa_pruned, sepa_masked):
    """ SEPA_masked - SEPA_pruned; 0 when either is absent. """
    if sepa_pruned is None or sepa_masked is None:
        return 0.0
    return sepa_masked - sepa_pruned


def update_scores(scores, masked, delta):
    """ Add delta to the score of every masked node. """
    updated = dict(scores)
    for node in masked:
        updated[int(node)] = updated.get(int(node), 0.0) + delta
    return updated


def adjust_pruning_rate(p_t, ratio, cfg):
    """ Step p_t up or down around the dead band, then clamp. """
    if ratio > 1 + cfg.delta_margin_up:
        p_t = p_t + cfg.delta_pruning_up
    elif ratio < 1 - cfg.delta_margin_down:
        p_t = p_t - cfg.delta_pruning_down
    return min(max(p_t, cfg.p_min), cfg.p_max)


def controller_update(state, sepa_t, cfg):
    """ One controller step per window.

        Warm-up: the first W_init windows with a defined SEPA build
        SEPA_base while p stays at p_start. Afterwards each defined
        SEPA goes into a FIFO of length W, and every E_settle pushes
        the buffer mean is compared with SEPA_base.
    """
    state = replace(state, windows_seen=state.windows_seen + 1)
    if sepa_t is None:
        return state

    if not state.warmup_done:
        base_sum = state.base_sum + sepa_t
        base_count = state.base_count + 1
        done = base_count >= cfg.W_init
        return replace(
            state,
            p_t=cfg.p_start,
            base_sum=base_sum,
            base_count=base_count,
            warmup_done=done,
            sepa_base=base_sum / base_count if done else None
            )

    buffer = (state.sepa_buffer + (sepa_t,))[-cfg.W:]
    settle = state.settle_count + 1
    if settle < cfg.E_settle:
        return replace(state, sepa_buffer=buffer, settle_count=settle)

    sepa_win = float(np.mean(buffer))
    if state.sepa_base == 0:
        logger.warning("SEPA_base is 0; holding pruning rate at %.2f",
                       state.p_t)
        return replace(state, sepa_buffer=buffer, settle_count=0,
                       ratio=None, ratio_undefined=True)

    ratio = sepa_win / state.sepa_base
    p_next = adjust_pruning_rate(state.p_t, ratio, cfg)
    logger.debug("Ratio %.4f: pruning rate %.2f -> %.2f",
                 ratio, state.p_t, p_next)
    return replace(state, sepa_buffer=buffer, settle_count=0,
                   ratio=ratio, ratio_undefined=False, p_t=p_next)


if __name__ == "__main__":
    pass
