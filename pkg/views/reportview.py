""" File output of runs: JSON report, CSV mirrors for plotting,
    params checkpoints, synthetic scenarios and event dumps.

    Created: Oct 13, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import json
import logging
from pathlib import Path

# Third party
import pandas as pd

# Custom
from models import forecastmodel as fm
from models import metricsmodel as mm
from models import reportmodel as rm

##########
# Logger #
##########
logger = logging.getLogger(__name__)

#############
# Constants #
#############
WINDOWS_CSV = 'windows.csv'
PRUNING_CSV = 'pruning_trace.csv'
LEDGER_CSV = 'ledger.csv'
FINAL_CSV = 'final.csv'
PRUNING_FIELDS = ['cloudlet', 'window', 'p_t', 'n_protected', 'n_pruned',
                  'n_masked', 'delta_sepa', 'ratio']
FINAL_FIELDS = ['cloudlet', 'horizon', 'mae', 'rmse', 'wmape', 'sepa',
                'sepa_correct', 'sepa_total']

##############
# ReportView #
##############
class ReportView:
    """ Writes everything a run produces into one directory. """

    def __init__(self, out_dir):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        logger.debug("Report directory: %s", self.out_dir)

    def _csv(self, df, name):
        path = self.out_dir / name
        df.to_csv(path, index=False, lineterminator='\n')
        logger.info("Wrote %s", path)
        return path

    def write_json(self, report, name=rm.REPORT_NAME):
        path = self.out_dir / name
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            json.dump(report, f, indent=2, sort_keys=True)
            f.write('\n')
        logger.info("Wrote %s", path)
        return path

    def write_windows(self, report):
        df = pd.DataFrame(report['windows'], columns=rm.WINDOW_FIELDS)
        return self._csv(df, WINDOWS_CSV)

    def write_pruning_trace(self, report):
        df = pd.DataFrame(report['windows'], columns=rm.WINDOW_FIELDS)
        return self._csv(df[PRUNING_FIELDS], PRUNING_CSV)

    def write_ledger(self, ledger):
        return self._csv(ledger.to_frame(), LEDGER_CSV)

    def write_final(self, report):
        rows = []
        final = report['final']
        for c in final['cloudlets']:
            for h, values in c['horizons'].items():
                rows.append({'cloudlet': c['cloudlet'], 'horizon': int(h),
                             **values})
        for h in final['horizons']:
            rows.append({'cloudlet': 'all', 'horizon': h,
                         **final['aggregate'][str(h)]})
        return self._csv(pd.DataFrame(rows, columns=FINAL_FIELDS), FINAL_CSV)

    def write_params(self, states):
        paths = []
        for s in states:
            path = self.out_dir / f'params_cloudlet_{s.cloudlet_id}.bin'
            fm.save_params(path, s.params)
            paths.append(path)
        return paths

    def write_run(self, result):
        """ report.json, the CSV mirrors and the checkpoints. """
        report = rm.build_report(result)
        self.write_json(report)
        self.write_windows(report)
        self.write_pruning_trace(report)
        self.write_ledger(result.federation.ledger)
        self.write_final(report)
        self.write_params(result.federation.states)
        return report

    def write_events(self, events, name='events.csv'):
        return self._csv(mm.events_to_frame(events), name)

    def write_synthetic(self, data):
        """ speeds, distances, positions, centers and the jam log. """
        self._csv(data.speed_frame(), 'speeds.csv')
        self._csv(data.distances, 'distances.csv')
        self._csv(data.positions, 'positions.csv')
        self._csv(data.centers, 'centers.csv')
        self._csv(data.jams, 'jams.csv')
        with open(self.out_dir / 'scenario.json', 'w', encoding='utf-8') as f:
            json.dump({'radius': data.radius,
                       'interval': data.speeds.interval}, f, indent=2)

    def write_comparison(self, df, name='comparison.csv'):
        return self._csv(df, name)


if __name__ == "__main__":
    pass
