""" Online semi-decentralized training across cloudlets.

    Every window each cloudlet builds its training subgraph (all,
    none or an adaptively pruned share of its cross-cloudlet
    dependencies), fetches the features it needs, trains on window t,
    validates on window t+1 and, in adaptive mode, updates its
    pruning controller and node scores. Models are then exchanged by
    traditional FL, server-free FL or gossip learning. Every transfer
    is written to a CommLedger.

    Created: Oct 08, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

# Third party
import numpy as np
import pandas as pd

# Custom
from models import forecastmodel as fm
from models import metricsmodel as mm
from models import pruningmodel as pm

##########
# Logger #
##########
logger = logging.getLogger(__name__)

#############
# Constants #
#############
SERVER = -1
FEATURES = 'features'
MODEL = 'model'
FEATURE_SCALAR_BYTES = 4
MODEL_SCALAR_BYTES = 8
CONNECTIVITIES = ('full', 'none', 'adaptive')
STRATEGIES = ('traditional_fl', 'serverfree_fl', 'gossip', 'local')
REPORT_HORIZONS = (3, 6, 12)
MODEL_CACHE_SIZE = 32

##############
# CommLedger #
##############
@dataclass(frozen=True)
class LedgerEntry:
    round: int
    src: int
    dst: int
    kind: str
    bytes: int


class CommLedger:
    """ Append-only record of cross-cloudlet transfers. """
    columns = ['round', 'src', 'dst', 'kind', 'bytes']

    def __init__(self):
        self._entries = []

    def __len__(self):
        return len(self._entries)

    @property
    def entries(self):
        return tuple(self._entries)

    def append(self, round, src, dst, kind, nbytes):
        if nbytes < 0:
            raise ValueError("Ledger entries cannot have negative bytes")
        if kind not in (FEATURES, MODEL):
            raise ValueError(f"Unknown transfer kind {kind!r}")
        entry = LedgerEntry(int(round), int(src), int(dst), kind, int(nbytes))
        self._entries.append(entry)
        return entry

    def extend(self, entries):
        for e in entries:
            self.append(e.round, e.src, e.dst, e.kind, e.bytes)

    def total(self, kind=None, round=None, cloudlet=None):
        """ Bytes matching the filters; cloudlet matches either end. """
        return sum(
            e.bytes for e in self._entries
            if (kind is None or e.kind == kind)
            and (round is None or e.round == round)
            and (cloudlet is None or cloudlet in (e.src, e.dst))
            )

    def cumulative(self, kind, n_rounds):
        """ Running byte total at the end of each round. """
        per_round = np.zeros(n_rounds, dtype=np.int64)
        for e in self._entries:
            if e.kind == kind and e.round < n_rounds:
                per_round[e.round] += e.bytes
        return np.cumsum(per_round).tolist()

    def to_frame(self):
        return pd.DataFrame(
            [(e.round, e.src, e.dst, e.kind, e.bytes) for e in self._entries],
            columns=self.columns
            )

##################
# StrategyConfig #
##################
@dataclass(frozen=True)
class StrategyConfig:
    strategy: str = 'traditional_fl'
    period: int = 1
    gossip_fanout: int = 1
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"Unknown strategy {self.strategy!r}")
        if self.period < 1 or self.gossip_fanout < 1 or self.workers < 1:
            raise ValueError("period, gossip_fanout and workers must be >= 1")

#################
# CloudletState #
#################
@dataclass(eq=False)
class CloudletState:
    """ Everything one cloudlet owns across the run. """
    cloudlet_id: int
    local_nodes: tuple
    dependencies: frozenset
    params: fm.ForecasterParams
    opt_state: fm.AdamState
    pruning: pm.PruningState
    rng: np.random.Generator
    gossip_rng: np.random.Generator
    active_cross: frozenset = frozenset()
    gossip_buffer: deque = None
    history: list = field(default_factory=list)
    # Working set of the current round
    model: fm.ChebModel = None
    batch: object = None
    _models: dict = field(default_factory=dict, repr=False)

    @property
    def shape_tag(self):
        return self.params.shape_tag

################
# RoundContext #
################
@dataclass(frozen=True, eq=False)
class RoundContext:
    """ Static inputs shared by every round of a run. """
    graph: object
    partition: object
    windows: list
    events: list
    standardizer: object
    horizon: int
    connectivity: str
    forecaster: fm.ForecasterConfig = fm.ForecasterConfig()
    controller: pm.ControllerConfig = pm.ControllerConfig()
    sepa: mm.SepaConfig = mm.SepaConfig()
    strategy: StrategyConfig = StrategyConfig()

    def __post_init__(self):
        if self.connectivity not in CONNECTIVITIES:
            raise ValueError(f"Unknown connectivity {self.connectivity!r}")

    def lr(self, window_index):
        cfg = self.forecaster
        return fm.scheduled_lr(cfg.lr, window_index, cfg.lr_decay,
                               cfg.lr_decay_every)

##################
# Initialization #
##################
def init_states(ctx):
    """ One CloudletState per cloudlet, all starting from the same
        persistence-wired params. RNG streams are derived from
        (seed, cloudlet id) only.
    """
    cfg = ctx.forecaster
    seed = ctx.strategy.seed
    start = fm.init_params(cfg.K, cfg.lookback, ctx.horizon,
                           np.random.default_rng(seed), cfg.init_noise)
    states = []
    for c in ctx.partition.cloudlet_ids:
        deps = frozenset(ctx.partition.dependencies.get(c, frozenset()))
        states.append(CloudletState(
            cloudlet_id=c,
            local_nodes=ctx.partition.local_nodes(c),
            dependencies=deps,
            params=start,
            opt_state=fm.AdamState.zeros(start),
            pruning=pm.PruningState.start(ctx.controller, deps),
            rng=np.random.default_rng([seed, c]),
            gossip_rng=np.random.default_rng([seed, c, 1]),
            active_cross=deps if ctx.connectivity != 'none' else frozenset(),
            gossip_buffer=deque([start], maxlen=2)
            ))
    return states

###########
# Helpers #
###########
def _model_for(state, ctx, active):
    """ ChebModel over local + active cross nodes (cached). """
    key = frozenset(active)
    if key not in state._models:
        if len(state._models) >= MODEL_CACHE_SIZE:
            state._models.clear()
        cfg = ctx.forecaster
        model, sub = fm.build_model(
            ctx.graph, state.local_nodes, key,
            K=cfg.K, T=cfg.lookback, horizon=ctx.horizon)
        state._models[key] = (model, tuple(int(i) for i in sub.parent_index))
    return state._models[key]


def horizon_slice(batch, pred_raw, h):
    """ Predictions and truth for horizon step h as step-aligned
        (steps, nodes) arrays, plus the absolute step of row 0.
    """
    offset = int(batch.t0[0]) + batch.lookback - 1 + h
    return pred_raw[:, h - 1, :], batch.raw_truth[:, h - 1, :], offset


def evaluate_batch(model, params, batch, local_nodes, ctx, events, h):
    """ Raw-unit metrics over every (instance, horizon, local node)
        entry, and the SEPA score at horizon h.
    """
    n_local = len(local_nodes)
    std = ctx.standardizer.select(local_nodes)
    pred = fm.predict(model, params, batch.inputs)[:, :, :n_local]
    pred_raw = std.destandardize(pred)
    local = batch.select(batch.nodes[:n_local])
    metrics = mm.regression_metrics(pred_raw, local.raw_truth)
    pred_h, truth_h, offset = horizon_slice(local, pred_raw, h)
    score = mm.sepa(pred_h, truth_h, events, ctx.sepa,
                    nodes=local_nodes, offset=offset)
    return metrics, score, pred_raw


def _feature_entries(state, ctx, window_index, n_timesteps):
    """ One ledger entry per source cloudlet of the active cross nodes. """
    per_src = {}
    for node in state.active_cross:
        src = ctx.partition.owner(node)
        per_src[src] = per_src.get(src, 0) + 1
    return [
        LedgerEntry(window_index, src, state.cloudlet_id, FEATURES,
                    count * n_timesteps * FEATURE_SCALAR_BYTES)
        for src, count in sorted(per_src.items())
        ]

##################
# Cloudlet round #
##################
def cloudlet_round(state, ctx, window_index):
    """ Steps (a)-(h) for one cloudlet. Mutates only this state and
        returns its feature ledger entries.
    """
    batch_t = ctx.windows[window_index]
    has_next = window_index + 1 < len(ctx.windows)
    batch_next = ctx.windows[window_index + 1] if has_next else None
    deps = state.dependencies
    p_used = state.pruning.p_t

    # (a) local sudden events in window t and the protected set
    first, last = batch_t.step_span
    local_events = mm.filter_events(
        ctx.events, state.local_nodes, first, last + 1)
    protected = frozenset()
    if ctx.connectivity == 'adaptive':
        protected = pm.protected_set(
            local_events, state.cloudlet_id, ctx.partition, ctx.graph)

    # (b) pruning
    if ctx.connectivity == 'full':
        pruned = frozenset()
    elif ctx.connectivity == 'none':
        pruned = deps
    else:
        pruned = pm.sample_prune(
            deps - protected, state.pruning.node_scores, p_used,
            state.rng, n_cross=len(deps))
    state.active_cross = frozenset(deps - pruned)

    # (c) training subgraph and feature fetches
    model, order = _model_for(state, ctx, state.active_cross)
    entries = _feature_entries(
        state, ctx, window_index, batch_t.n_timesteps)
    batch = batch_t.select(order)
    state.model, state.batch = model, batch

    # (d) train on window t
    lr = ctx.lr(window_index)
    state.params, state.opt_state, train_loss = fm.train_on_window(
        model, state.params, batch, state.opt_state, state.rng, lr,
        weight_decay=ctx.forecaster.weight_decay,
        steps_per_window=ctx.forecaster.steps_per_window,
        batch_size=ctx.forecaster.batch_size)

    record = {
        'window': window_index,
        'cloudlet': state.cloudlet_id,
        'train_loss': train_loss,
        'mae': None,
        'rmse': None,
        'wmape': None,
        'sepa': None,
        'sepa_masked': None,
        'n_events': len(local_events),
        'p_t': p_used,
        'n_cross': len(deps),
        'n_protected': len(protected),
        'n_pruned': len(pruned),
        'n_masked': 0,
        'delta_sepa': None,
        'ratio': None,
        'feature_bytes': sum(e.bytes for e in entries),
        'model_bytes': 0
    }

    if batch_next is not None and len(batch_next):
        # (e) validate on window t+1, pruned and masked
        metrics, score, _ = evaluate_batch(
            model, state.params, batch_next.select(order),
            state.local_nodes, ctx, ctx.events, ctx.horizon)
        record.update(metrics)
        record['sepa'] = score.value

        if ctx.connectivity == 'adaptive':
            masked = pm.mask_half(state.active_cross, state.rng)
            masked_model, masked_order = _model_for(
                state, ctx, state.active_cross - masked)
            _, masked_score, _ = evaluate_batch(
                masked_model, state.params, batch_next.select(masked_order),
                state.local_nodes, ctx, ctx.events, ctx.horizon)

            # (f) controller
            state.pruning = pm.controller_update(
                state.pruning, score.value, ctx.controller)

            # (g-h) score feedback
            delta = pm.delta_sepa(score.value, masked_score.value)
            if score.value is not None and masked_score.value is not None:
                state.pruning = replace(
                    state.pruning,
                    node_scores=pm.update_scores(
                        state.pruning.node_scores, masked, delta))
            record.update({
                'sepa_masked': masked_score.value,
                'n_masked': len(masked),
                'delta_sepa': delta,
                'ratio': state.pruning.ratio
                })

    state.history.append(record)
    return entries

###################
# Model exchanges #
###################
def _model_bytes(params):
    return params.size * MODEL_SCALAR_BYTES


def fedavg(states, ledger, round):
    """ Server average weighted by local node counts, broadcast back. """
    weights = [len(s.local_nodes) for s in states]
    global_params = fm.average_params([s.params for s in states], weights)
    nbytes = _model_bytes(global_params)
    for s in states:
        ledger.append(round, s.cloudlet_id, SERVER, MODEL, nbytes)
        ledger.append(round, SERVER, s.cloudlet_id, MODEL, nbytes)
        s.params = global_params
    return states


def serverfree_exchange(states, cloudlet_neighbours, ledger, round):
    """ Each cloudlet averages its params with its neighbours'
        pre-round params, equal weights.
    """
    snapshot = {s.cloudlet_id: s.params for s in states}
    for s in states:
        linked = [n for n in cloudlet_neighbours(s.cloudlet_id)
                  if n in snapshot]
        for n in linked:
            ledger.append(round, n, s.cloudlet_id, MODEL,
                          _model_bytes(snapshot[n]))
        group = [snapshot[s.cloudlet_id]] + [snapshot[n] for n in linked]
        s.params = fm.average_params(group)
    return states


def gossip_step(states, ctx, ledger, round):
    """ Push own model into the 2-slot FIFO, average it, take one
        optimizer step, send to random peers. Deliveries land after
        every cloudlet has sent.
    """
    lr = ctx.lr(round)
    outgoing = []
    ids = [s.cloudlet_id for s in states]
    for s in states:
        s.gossip_buffer.append(s.params)
        merged = fm.average_params(list(s.gossip_buffer))
        if s.model is not None and s.batch is not None:
            merged, s.opt_state = fm.train_step(
                s.model, merged, s.batch, s.opt_state, s.rng, lr,
                weight_decay=ctx.forecaster.weight_decay,
                batch_size=ctx.forecaster.batch_size)
        s.params = merged
        peers = [c for c in ids if c != s.cloudlet_id]
        if not peers:
            continue
        fanout = min(ctx.strategy.gossip_fanout, len(peers))
        picks = s.gossip_rng.choice(len(peers), size=fanout, replace=False)
        for i in sorted(picks):
            outgoing.append((s.cloudlet_id, peers[i], merged))

    by_id = {s.cloudlet_id: s for s in states}
    for src, dst, params in outgoing:
        by_id[dst].gossip_buffer.append(params)
        ledger.append(round, src, dst, MODEL, _model_bytes(params))
    return states


def exchange_models(states, ctx, ledger, window_index):
    """ Apply the configured strategy on aggregation rounds. """
    strategy = ctx.strategy
    if strategy.strategy == 'local':
        return states
    if (window_index + 1) % strategy.period:
        return states
    if strategy.strategy == 'traditional_fl':
        return fedavg(states, ledger, window_index)
    if strategy.strategy == 'serverfree_fl':
        return serverfree_exchange(
            states, ctx.partition.neighbours, ledger, window_index)
    return gossip_step(states, ctx, ledger, window_index)

##############
# Round loop #
##############
def run_round(states, window_index, ctx, ledger):
    """ One barrier-synchronized round: all cloudlets train and
        validate, then models are exchanged.
    """
    workers = min(ctx.strategy.workers, len(states))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                lambda s: cloudlet_round(s, ctx, window_index), states))
    else:
        results = [cloudlet_round(s, ctx, window_index) for s in states]

    # Ledger order is fixed by cloudlet id, never by completion order
    for entries in results:
        ledger.extend(entries)

    exchange_models(states, ctx, ledger, window_index)
    for s in states:
        s.history[-1]['model_bytes'] = sum(
            e.bytes for e in ledger.entries
            if e.round == window_index and e.kind == MODEL
            and s.cloudlet_id in (e.src, e.dst))
    return states


class Federation:
    """ A full online run over the training windows. """

    def __init__(self, ctx):
        logger.debug("Initializing Federation")
        self.ctx = ctx
        self.ledger = CommLedger()
        self.states = init_states(ctx)
        tags = {s.shape_tag for s in self.states}
        if len(tags) != 1:
            raise fm.IncompatibleModels(f"Mixed shape tags {sorted(tags)}")

    def run(self):
        n = len(self.ctx.windows)
        logger.info("Online training: %d windows, %d cloudlets, %s / %s",
                    n, len(self.states), self.ctx.connectivity,
                    self.ctx.strategy.strategy)
        for t in range(n):
            run_round(self.states, t, self.ctx, self.ledger)
            logger.info(
                "Window %d/%d done: %d feature bytes, %d model bytes",
                t + 1, n, self.ledger.total(FEATURES, round=t),
                self.ledger.total(MODEL, round=t))
        return self.states

    def history_frame(self):
        rows = [r for s in self.states for r in s.history]
        df = pd.DataFrame(rows)
        if df.empty:
            return df
        return df.sort_values(['window', 'cloudlet']).reset_index(drop=True)

    def final_evaluation(self, val_batch, val_events):
        return final_evaluation(self.states, self.ctx, val_batch, val_events)

####################
# Final evaluation #
####################
def eval_horizons(horizon):
    return sorted({h for h in REPORT_HORIZONS if h <= horizon} | {horizon})


def final_evaluation(states, ctx, val_batch, val_events):
    """ Each cloudlet evaluates its own model on its local nodes over
        the validation instances, using its final connectivity state.
        Aggregates are weighted by local node counts.
    """
    horizons = eval_horizons(ctx.horizon)
    cloudlets = []
    for s in states:
        model, order = _model_for(s, ctx, s.active_cross)
        batch = val_batch.select(order)
        n_local = len(s.local_nodes)
        std = ctx.standardizer.select(s.local_nodes)
        pred_raw = std.destandardize(
            fm.predict(model, s.params, batch.inputs)[:, :, :n_local])
        local = batch.select(s.local_nodes)

        per_h = {}
        for h in horizons:
            pred_h, truth_h, offset = horizon_slice(local, pred_raw, h)
            score = mm.sepa(pred_h, truth_h, val_events, ctx.sepa,
                            nodes=s.local_nodes, offset=offset)
            per_h[str(h)] = {
                **mm.regression_metrics(pred_h, truth_h),
                'sepa': score.value,
                'sepa_correct': score.correct,
                'sepa_total': score.total
            }
        pred_h, truth_h, offset = horizon_slice(local, pred_raw, ctx.horizon)
        split = mm.event_error_split(pred_h, truth_h, val_events,
                                     nodes=s.local_nodes, offset=offset)
        cloudlets.append({
            'cloudlet': s.cloudlet_id,
            'n_local': n_local,
            'n_active_cross': len(s.active_cross),
            'horizons': per_h,
            'event_split': split
            })

    weights = [c['n_local'] for c in cloudlets]
    aggregate = {}
    for h in horizons:
        key = str(h)
        aggregate[key] = {
            metric: mm.aggregate_weighted(
                [c['horizons'][key][metric] for c in cloudlets], weights)
            for metric in ('mae', 'rmse', 'wmape', 'sepa')
            }
    aggregate['event_split'] = {
        metric: mm.aggregate_weighted(
            [c['event_split'][metric] for c in cloudlets], weights)
        for metric in ('mae_all', 'mae_sudden', 'mae_non_sudden')
        }
    aggregate['event_split']['n_sudden'] = sum(
        c['event_split']['n_sudden'] for c in cloudlets)
    aggregate['event_split']['n_non_sudden'] = sum(
        c['event_split']['n_non_sudden'] for c in cloudlets)
    logger.info("Final evaluation at horizon %d: %s", ctx.horizon,
                aggregate[str(ctx.horizon)])
    return {
        'horizons': horizons,
        'headline_horizon': ctx.horizon,
        'cloudlets': cloudlets,
        'aggregate': aggregate
    }


if __name__ == "__main__":
    pass
