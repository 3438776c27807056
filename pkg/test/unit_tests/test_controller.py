""" End-to-end tests of the command-line application on small
    synthetic scenarios.

    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import json

# Third party
import pandas as pd
import pytest

# Custom
import app_assets
import controller
from models import reportmodel as rm

############
# Fixtures #
############
SMALL_SCENARIO = {
    'seed': 4,
    'horizon': 12,
    'window_size': 70,
    'graph': {'kernel_sigma': 3000.0, 'cutoff': 5000.0},
    'forecaster': {'lr': 0.005},
    'synthetic': {
        'enabled': True,
        'nodes': 9,
        'steps': 400,
        'jam_rate': 3.0,
        'cloudlets': 3
    }
}


@pytest.fixture
def run_file(tmp_path):
    path = tmp_path / 'small.json'
    path.write_text(json.dumps(SMALL_SCENARIO))
    return path


def run(run_file, out_dir, *extra):
    return controller.main(
        ['run', '--config', str(run_file), '--out-dir', str(out_dir),
         *extra])

##############
# Unit Tests #
##############
class Test_Run:
    """ Tests for the run command. """
    def test_writes_report(self, run_file, tmp_path):
        # Act
        code = run(run_file, tmp_path / 'a')

        # Assert
        assert code == 0
        out = tmp_path / 'a'
        for name in ('report.json', 'windows.csv', 'pruning_trace.csv',
                     'ledger.csv', 'final.csv', 'params_cloudlet_0.bin'):
            assert (out / name).is_file(), name
        report = rm.load_report(out)
        assert report['config']['seed'] == 4
        assert report['final']['headline_horizon'] == 12
        assert set(report['oracles']) == {'event_blind', 'event_perfect'}
        assert len(report['cloudlets']) == 3

    def test_pruning_trace_columns(self, run_file, tmp_path):
        run(run_file, tmp_path / 'a')
        header = (tmp_path / 'a' / 'pruning_trace.csv').read_text()
        assert header.splitlines()[0] == (
            'cloudlet,window,p_t,n_protected,n_pruned,n_masked,'
            'delta_sepa,ratio')

    def test_rerun_is_byte_identical(self, run_file, tmp_path):
        run(run_file, tmp_path / 'a')
        run(run_file, tmp_path / 'b')
        first = (tmp_path / 'a' / rm.REPORT_NAME).read_bytes()
        assert first == (tmp_path / 'b' / rm.REPORT_NAME).read_bytes()

    def test_connectivity_override(self, run_file, tmp_path):
        # Act
        run(run_file, tmp_path / 'none', '--connectivity', 'none')
        run(run_file, tmp_path / 'full', '--connectivity', 'full')

        # Assert
        none = rm.load_report(tmp_path / 'none')
        full = rm.load_report(tmp_path / 'full')
        assert none['config']['connectivity'] == 'none'
        assert none['communication']['feature_bytes'] == 0
        assert full['communication']['feature_bytes'] > 0

    def test_ledger_csv_matches_report(self, run_file, tmp_path):
        run(run_file, tmp_path / 'a', '--strategy', 'gossip')
        ledger = pd.read_csv(tmp_path / 'a' / 'ledger.csv')
        report = rm.load_report(tmp_path / 'a')
        model = ledger[ledger['kind'] == 'model']['bytes'].sum()
        assert model == report['communication']['model_bytes']

    def test_invalid_config_exits_with_error(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'horizon': 5,
                                    'synthetic': {'enabled': True}}))
        assert run(path, tmp_path / 'out') == 1

    def test_missing_dataset_exits_with_error(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'data': {'speeds': 'absent.csv'}}))
        assert run(path, tmp_path / 'out') == 1


class Test_Synth:
    """ Tests for the synth command and running on its files. """
    def test_synth_then_run_from_files(self, tmp_path):
        # Arrange
        data_dir = tmp_path / 'data'
        code = controller.main(
            ['synth', '--nodes', '8', '--steps', '400', '--cloudlets', '2',
             '--seed', '1', '--out-dir', str(data_dir)])
        scenario = json.loads((data_dir / 'scenario.json').read_text())
        path = tmp_path / 'files.json'
        path.write_text(json.dumps({
            'window_size': 70,
            'data': {
                'speeds': 'data/speeds.csv',
                'distances': 'data/distances.csv',
                'positions': 'data/positions.csv',
                'centers': 'data/centers.csv'
            },
            'graph': {'kernel_sigma': 3000.0, 'cutoff': 5000.0,
                      'radius': scenario['radius']}
        }))

        # Act
        run_code = run(path, tmp_path / 'out')

        # Assert
        assert code == 0
        assert run_code == 0
        report = rm.load_report(tmp_path / 'out')
        assert report['dataset']['n_nodes'] == 8
        assert len(report['cloudlets']) == 2


class Test_Compare:
    """ Tests for the compare command. """
    def test_compare_two_runs(self, run_file, tmp_path):
        # Arrange
        run(run_file, tmp_path / 'full', '--connectivity', 'full')
        run(run_file, tmp_path / 'none', '--connectivity', 'none')

        # Act
        code = controller.main(
            ['compare', str(tmp_path / 'full'), str(tmp_path / 'none'),
             '--out-dir', str(tmp_path)])

        # Assert
        assert code == 0
        df = pd.read_csv(tmp_path / 'comparison.csv')
        assert list(df['run']) == ['full', 'none']
        assert df.loc[1, 'delta_feature_bytes'] < 0

    def test_horizon_mismatch_exits_with_error(self, run_file, tmp_path):
        run(run_file, tmp_path / 'h12')
        run(run_file, tmp_path / 'h6', '--horizon', '6')
        code = controller.main(
            ['compare', str(tmp_path / 'h12'), str(tmp_path / 'h6'),
             '--out-dir', str(tmp_path)])
        assert code == 1


class Test_Events:
    """ Tests for the events command. """
    def test_events_from_config(self, run_file, tmp_path):
        code = controller.main(
            ['events', '--config', str(run_file), '--out-dir',
             str(tmp_path)])
        df = pd.read_csv(tmp_path / 'events.csv')
        assert code == 0
        assert list(df.columns) == ['node', 't', 'kind', 'magnitude']
        assert len(df)


class Test_Plot:
    """ Tests for the plot command. """
    def test_plot_run(self, run_file, tmp_path):
        run(run_file, tmp_path / 'a')
        output = tmp_path / 'cloudlets.png'
        code = controller.main(
            ['plot', str(tmp_path / 'a'), '--output', str(output)])
        assert code == 0
        assert output.stat().st_size > 0


class Test_Readme:
    """ Tests for the help pages. """
    def test_readme_opens_browser(self, tmp_path, mocker):
        # Arrange
        target = tmp_path / 'README.html'
        mocker.patch.object(app_assets.README, 'README_HTML', target)
        browser = mocker.patch('controller.webbrowser.open')

        # Act
        code = controller.main(['readme'])

        # Assert
        assert code == 0
        assert '<h1>' in target.read_text(encoding='utf-8')
        browser.assert_called_once_with(target.resolve().as_uri())

    def test_changelog_without_browser(self, tmp_path, mocker):
        target = tmp_path / 'CHANGELOG.html'
        mocker.patch.object(app_assets.CHANGELOG, 'CHANGELOG_HTML', target)
        browser = mocker.patch('controller.webbrowser.open')
        assert controller.main(['readme', '--changelog', '--no-browser']) == 0
        assert target.is_file()
        browser.assert_not_called()
