""" Automated tests of whole runs on the bundled 30-sensor synthetic
    scenario.

    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import json

# Third party
import numpy as np
import pandas as pd
import pytest

# Custom
from app_assets import configs
from models import experimentmodel as em
from models import federationmodel as fed
from models import settingsmodel as sm

#############
# Constants #
#############
SEEDS = range(5)
STRATEGIES = ['traditional_fl', 'serverfree_fl', 'gossip']

############
# Fixtures #
############
@pytest.fixture(scope='module')
def bundled_run():
    """ Runs of the bundled config, cached by their overrides. """
    cache = {}
    bundled = {'seed': 0, 'connectivity': 'adaptive',
               'federation.strategy': 'traditional_fl'}

    def run(**overrides):
        overrides = {**bundled, **overrides}
        key = tuple(sorted(overrides.items()))
        if key not in cache:
            config = sm.load_config(configs.SYNTHETIC_30, overrides)
            cache[key] = em.run_experiment(config)
        return cache[key]
    return run


def headline_sepa(result):
    return result.final['aggregate'][str(result.config.horizon)]['sepa']


def feature_curve(result):
    n_rounds = len(result.federation.ctx.windows)
    return result.federation.ledger.cumulative(fed.FEATURES, n_rounds)

##############
# Unit Tests #
##############
class Test_Connectivity:
    """ Tests that cross-cloudlet features pay off on the bundled
        scenario.
    """
    def test_full_beats_none_on_sepa(self, bundled_run):
        # Act
        full = [headline_sepa(bundled_run(seed=s, connectivity='full'))
                for s in SEEDS]
        none = [headline_sepa(bundled_run(seed=s, connectivity='none'))
                for s in SEEDS]

        # Assert
        assert np.mean(full) - np.mean(none) >= 0.05, (full, none)


class Test_Ledger:
    """ Tests of cumulative feature bytes per connectivity mode. """
    @pytest.mark.parametrize('strategy', STRATEGIES)
    def test_feature_bytes_ordering(self, bundled_run, strategy):
        # Act
        none, adaptive, full = (
            feature_curve(bundled_run(connectivity=mode,
                                      **{'federation.strategy': strategy}))
            for mode in ('none', 'adaptive', 'full'))

        # Assert
        assert set(none) == {0}
        assert 0 < adaptive[-1] < full[-1]
        for t, (a, f) in enumerate(zip(adaptive, full)):
            assert a <= f, t


class Test_Determinism:
    """ Tests that a run depends only on its config. """
    @pytest.mark.parametrize('workers', [1, 3])
    def test_rerun_is_identical(self, bundled_run, workers):
        # Arrange
        config = sm.load_config(configs.SYNTHETIC_30,
                                {'federation.workers': workers})

        # Act
        first = em.run_experiment(config)
        second = bundled_run()

        # Assert
        assert first.federation.ledger.entries == \
            second.federation.ledger.entries
        pd.testing.assert_frame_equal(first.federation.history_frame(),
                                      second.federation.history_frame())
        assert json.dumps(first.final, sort_keys=True) == \
            json.dumps(second.final, sort_keys=True)
