""" Automated tests for node scores, pruning draws and the pruning
    rate controller.

    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
from dataclasses import replace

# Third party
import numpy as np
import pytest

# Custom
from models import graphmodel as gm
from models import metricsmodel as mm
from models import pruningmodel as pm

############
# Fixtures #
############
@pytest.fixture
def cfg():
    return pm.ControllerConfig()


@pytest.fixture
def line_setup():
    """ 6 sensors on a line, cloudlets {0, 1, 2} and {3, 4, 5}, one-hop
        closure.
    """
    x = np.arange(6) * 1000.0
    positions = np.column_stack([x, np.zeros(6)])
    graph = gm.build_adjacency(gm.distances_from_positions(positions),
                               kernel_sigma=1000.0, cutoff=1500.0,
                               positions=positions)
    partition = gm.partition_by_radius(
        graph, [[500.0, 0.0], [4500.0, 0.0]], radius=2600.0)
    return graph, gm.dependency_closure(graph, partition, l_hops=1)


def feed(state, values, cfg):
    for v in values:
        state = pm.controller_update(state, v, cfg)
    return state


def settled(cfg, base=0.8, p_t=None):
    """ Controller state right after warm-up with SEPA_base = base. """
    state = pm.PruningState.start(cfg)
    state = feed(state, [base] * cfg.W_init, cfg)
    if p_t is not None:
        state = replace(state, p_t=p_t)
    return state

##############
# Unit Tests #
##############
class Test_PruneCount:
    """ Tests for the number of nodes pruned per window. """
    @pytest.mark.parametrize('p_t,n_cross,n_candidates,expected', [
        (0.10, 4, 4, 0),
        (0.25, 2, 2, 1),
        (0.30, 10, 10, 3),
        (0.70, 10, 3, 3),
        (0.50, 0, 0, 0),
    ])
    def test_rounding_and_cap(self, p_t, n_cross, n_candidates, expected):
        assert pm.prune_count(p_t, n_cross, n_candidates) == expected


class Test_SamplePrune:
    """ Tests for the score-weighted draw. """
    def test_frequencies_follow_scores(self):
        # Arrange
        rng = np.random.default_rng(0)
        scores = {1: 0.0, 2: 1.0, 3: 3.0}
        counts = {1: 0, 2: 0, 3: 0}
        draws = 10_000

        # Act
        for _ in range(draws):
            (node,) = pm.sample_prune([1, 2, 3], scores, 0.34, rng)
            counts[node] += 1

        # Assert
        assert counts[1] / draws < 0.01
        assert counts[2] / draws == pytest.approx(0.25, abs=0.02)
        assert counts[3] / draws == pytest.approx(0.75, abs=0.02)

    def test_equal_scores_are_uniform(self):
        weights = pm.prune_weights([4, 5, 6], {})
        assert np.allclose(weights, pm.WEIGHT_FLOOR)

    def test_without_replacement(self):
        rng = np.random.default_rng(1)
        pruned = pm.sample_prune(range(10), {}, 0.70, rng)
        assert len(pruned) == 7
        assert pruned <= set(range(10))

    def test_nothing_to_prune(self):
        rng = np.random.default_rng(2)
        assert pm.sample_prune([], {}, 0.5, rng) == frozenset()

    def test_count_uses_all_cross_nodes(self):
        # 10 cross nodes at 50% is 5, but only 2 are unprotected
        rng = np.random.default_rng(3)
        assert pm.sample_prune([1, 2], {}, 0.5, rng, n_cross=10) == {1, 2}


class Test_MaskHalf:
    """ Tests for the masking draw. """
    @pytest.mark.parametrize('n,expected', [(0, 0), (1, 0), (5, 2), (6, 3)])
    def test_size(self, n, expected):
        rng = np.random.default_rng(0)
        assert len(pm.mask_half(range(n), rng)) == expected

    def test_subset(self):
        rng = np.random.default_rng(1)
        assert pm.mask_half([7, 9, 11, 13], rng) <= {7, 9, 11, 13}


class Test_NodeScores:
    """ Tests for the score feedback. """
    def test_delta_sepa(self):
        assert pm.delta_sepa(0.8, 0.6) == pytest.approx(-0.2)
        assert pm.delta_sepa(None, 0.6) == 0.0
        assert pm.delta_sepa(0.8, None) == 0.0

    def test_update_only_masked(self):
        # Act
        scores = pm.update_scores({1: 0.0, 2: 0.5}, {2}, -0.25)

        # Assert
        assert scores == {1: 0.0, 2: 0.25}

    def test_important_node_is_pruned_less(self):
        # Arrange: node 2 hurt SEPA when masked, node 1 did not
        scores = pm.update_scores({1: 0.0, 2: 0.0}, {2}, -0.5)

        # Act
        weights = pm.prune_weights([1, 2], scores)

        # Assert
        assert weights[1] < weights[0]


class Test_ProtectedSet:
    """ Tests for event-driven protection. """
    def test_event_next_to_boundary(self, line_setup):
        graph, partition = line_setup
        events = [mm.EventRecord(node=2, t=40, kind=mm.SLOWDOWN,
                                 magnitude=25.0)]
        assert pm.protected_set(events, 0, partition, graph) == {3}

    def test_event_far_from_boundary(self, line_setup):
        graph, partition = line_setup
        events = [mm.EventRecord(node=0, t=40, kind=mm.SLOWDOWN,
                                 magnitude=25.0)]
        assert pm.protected_set(events, 0, partition, graph) == frozenset()

    def test_no_events(self, line_setup):
        graph, partition = line_setup
        assert pm.protected_set([], 1, partition, graph) == frozenset()


class Test_Controller:
    """ Tests for the pruning rate controller. """
    def test_warmup_holds_start(self, cfg):
        # Act
        state = feed(pm.PruningState.start(cfg), [0.8], cfg)

        # Assert
        assert not state.warmup_done
        assert state.p_t == cfg.p_start
        assert state.sepa_base is None

    def test_warmup_skips_undefined(self, cfg):
        state = feed(pm.PruningState.start(cfg), [0.6, None, None, 1.0], cfg)
        assert state.warmup_done
        assert state.sepa_base == pytest.approx(0.8)
        assert state.windows_seen == 4

    def test_ratio_above_one_raises_rate(self, cfg):
        state = feed(settled(cfg, p_t=0.30), [0.9] * cfg.E_settle, cfg)
        assert state.ratio == pytest.approx(0.9 / 0.8)
        assert state.p_t == pytest.approx(0.35)

    def test_dead_band_holds_rate(self, cfg):
        state = feed(settled(cfg, p_t=0.30), [0.79] * cfg.E_settle, cfg)
        assert state.p_t == pytest.approx(0.30)

    def test_ratio_below_band_lowers_rate(self, cfg):
        state = feed(settled(cfg, p_t=0.30), [0.7] * cfg.E_settle, cfg)
        assert state.p_t == pytest.approx(0.25)

    def test_settle_period(self, cfg):
        state = feed(settled(cfg, p_t=0.30), [0.9] * (cfg.E_settle - 1), cfg)
        assert state.p_t == pytest.approx(0.30)
        assert state.ratio is None

    @pytest.mark.parametrize('p_t,sepa,expected', [
        (0.10, 0.5, 0.10),
        (0.70, 1.0, 0.70),
    ])
    def test_clamps(self, cfg, p_t, sepa, expected):
        state = feed(settled(cfg, p_t=p_t), [sepa] * cfg.E_settle, cfg)
        assert state.p_t == pytest.approx(expected)

    def test_fifo_keeps_last_w(self, cfg):
        state = feed(settled(cfg), [0.1, 0.2, 0.3, 0.4, 0.5], cfg)
        assert state.sepa_buffer == (0.3, 0.4, 0.5)

    def test_zero_base_holds_rate(self, cfg):
        # Arrange
        state = settled(cfg, base=0.0, p_t=0.30)

        # Act
        state = feed(state, [0.5] * cfg.E_settle, cfg)

        # Assert
        assert state.ratio_undefined
        assert state.p_t == pytest.approx(0.30)

    def test_invalid_bounds(self):
        with pytest.raises(ValueError):
            pm.ControllerConfig(p_start=0.05)
