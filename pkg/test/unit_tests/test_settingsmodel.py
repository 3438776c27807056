""" Automated tests for run settings and config validation.

    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import json
from pathlib import Path

# Third party
import pytest

# Custom
from app_assets import configs
from models import settingsmodel as sm

############
# Fixtures #
############
@pytest.fixture
def settings():
    return sm.SettingsModel()


@pytest.fixture
def synthetic_settings(settings):
    settings.update({'synthetic.enabled': True})
    return settings


@pytest.fixture
def data_dir(tmp_path):
    """ Empty dataset files next to a run file that names them
        relatively.
    """
    for name in ('speeds.csv', 'distances.csv', 'assignment.csv'):
        (tmp_path / name).write_text('')
    run_file = tmp_path / 'run.json'
    run_file.write_text(json.dumps({
        'data': {
            'speeds': 'speeds.csv',
            'distances': 'distances.csv',
            'assignment': 'assignment.csv'
        },
        'horizon': 6
    }))
    return tmp_path

##############
# Unit Tests #
##############
class Test_SettingsModel:
    """ Tests for defaults, overrides and run files. """
    def test_defaults(self, settings):
        assert settings.get('horizon') == 12
        assert settings.get('window_size') == 140
        assert settings.get('controller.p_max') == 0.70
        assert settings.get('sepa.delta_change') == 20.0
        assert settings.get('graph.l_hops') is None

    def test_defaults_need_a_dataset(self, settings):
        with pytest.raises(sm.InvalidConfig, match="data.speeds"):
            settings.to_config()

    def test_override_coerces_strings(self, synthetic_settings):
        synthetic_settings.update({'forecaster.lr': '0.01',
                                   'dataset.per_sensor': 'true',
                                   'seed': None})
        config = synthetic_settings.to_config()
        assert config.forecaster.lr == 0.01
        assert config.dataset.per_sensor is True
        assert config.seed == 0

    def test_bad_value(self, settings):
        with pytest.raises(sm.InvalidConfig, match="horizon"):
            settings.set('horizon', 'twelve')

    def test_unknown_key(self, settings):
        with pytest.raises(sm.InvalidConfig, match="Unknown setting"):
            settings.set('forecaster.dropout', 0.1)

    def test_section_is_not_a_setting(self, settings):
        with pytest.raises(sm.InvalidConfig):
            settings.get('sepa')

    def test_relative_paths_follow_run_file(self, data_dir):
        # Act
        config = sm.load_config(data_dir / 'run.json')

        # Assert
        assert Path(config.data.speeds) == data_dir.resolve() / 'speeds.csv'
        assert config.horizon == 6

    def test_missing_data_file(self, data_dir):
        (data_dir / 'speeds.csv').unlink()
        with pytest.raises(sm.InvalidConfig, match="no such file"):
            sm.load_config(data_dir / 'run.json')

    def test_missing_run_file(self, tmp_path):
        with pytest.raises(sm.InvalidConfig):
            sm.load_config(tmp_path / 'absent.json')

    def test_save_and_reload(self, synthetic_settings, tmp_path):
        # Arrange
        synthetic_settings.update({'federation.strategy': 'gossip'})
        path = tmp_path / 'saved.json'

        # Act
        synthetic_settings.save(path)
        reloaded = sm.SettingsModel(filepath=path)

        # Assert
        assert reloaded.values() == synthetic_settings.values()

    def test_bundled_config(self):
        config = sm.load_config(configs.SYNTHETIC_30)
        assert config.synthetic.enabled
        assert config.synthetic.nodes == 30
        assert config.window_size == 70
        assert config.synthetic.lag == config.horizon
        assert config.l_hops == 3


class Test_RunConfig:
    """ Tests for the frozen run configuration. """
    def test_dict_round_trip(self, synthetic_settings):
        config = synthetic_settings.to_config()
        assert sm.RunConfig.from_dict(config.to_dict()) == config

    def test_federation_seed_is_run_seed(self, synthetic_settings):
        synthetic_settings.update({'seed': 7})
        config = synthetic_settings.to_config()
        assert config.federation.seed == 7
        assert 'seed' not in config.to_dict()['federation']

    def test_default_l_hops(self, synthetic_settings):
        synthetic_settings.update({'forecaster.K': 4})
        assert synthetic_settings.to_config().l_hops == 3

    @pytest.mark.parametrize('key,value', [
        ('horizon', 5),
        ('connectivity', 'partial'),
        ('federation.strategy', 'split_learning'),
        ('dataset.split_ratio', 1.0),
        ('controller.p_min', 0.9),
        ('synthetic.cloudlets', 0),
        ('synthetic.lag', 0),
    ])
    def test_invalid_values(self, synthetic_settings, key, value):
        synthetic_settings.update({key: value})
        with pytest.raises(sm.InvalidConfig):
            synthetic_settings.to_config()

    def test_unusual_window_size_warns(self, synthetic_settings, caplog):
        synthetic_settings.update({'window_size': 100})
        config = synthetic_settings.to_config()
        assert config.window_size == 100
        assert "Window size 100" in caplog.text

    def test_unknown_section_key(self):
        with pytest.raises(sm.InvalidConfig):
            sm.RunConfig.from_dict({'graph': {'sigma': 1.0},
                                    'synthetic': {'enabled': True}})
