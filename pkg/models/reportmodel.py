""" Run reports: assembly from an experiment result, loading, and
    side-by-side comparison of several runs.

    Reports carry no timestamps or host details, so the same config
    and seed always produce the same bytes.

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
from models.federationmodel import FEATURES, MODEL
from models.settingsmodel import RunConfig

##########
# Logger #
##########
logger = logging.getLogger(__name__)

##############
# Exceptions #
##############
class HorizonMismatch(ValueError):
    """ Compared reports were run at different horizons. """
    pass

#############
# Constants #
#############
REPORT_NAME = 'report.json'
WINDOW_FIELDS = ['window', 'cloudlet', 'train_loss', 'mae', 'rmse', 'wmape',
                 'sepa', 'sepa_masked', 'n_events', 'p_t', 'n_cross',
                 'n_protected', 'n_pruned', 'n_masked', 'delta_sepa',
                 'ratio', 'feature_bytes', 'model_bytes']
METRICS = ['mae', 'rmse', 'wmape', 'sepa']

############
# Assembly #
############
def _clean(value):
    """ numpy scalars to plain Python for json. """
    if hasattr(value, 'item'):
        return value.item()
    return value


def build_report(result):
    """ Report dict of one ExperimentResult. """
    fed = result.federation
    ledger = fed.ledger
    n_rounds = len(fed.ctx.windows)
    partition = result.inputs.partition

    windows = [
        {k: _clean(r.get(k)) for k in WINDOW_FIELDS}
        for s in fed.states for r in s.history
        ]
    windows.sort(key=lambda r: (r['window'], r['cloudlet']))

    cloudlets = {}
    for s in fed.states:
        cid = s.cloudlet_id
        cloudlets[str(cid)] = {
            'n_local': len(s.local_nodes),
            'n_cross': len(s.dependencies),
            'neighbours': list(partition.neighbours(cid)),
            'feature_bytes': ledger.total(FEATURES, cloudlet=cid),
            'model_bytes': ledger.total(MODEL, cloudlet=cid),
            'final_p_t': s.pruning.p_t
        }

    return {
        'config': result.config.to_dict(),
        'dataset': {
            'n_nodes': result.inputs.graph.n_nodes,
            'n_train_steps': result.n_train_steps,
            'n_val_steps': result.n_val_steps,
            'n_windows': n_rounds,
            'n_train_events': len(result.train_events),
            'n_val_events': len(result.val_events),
            'l_hops': partition.l_hops
        },
        'cloudlets': cloudlets,
        'communication': {
            'feature_bytes': ledger.total(FEATURES),
            'model_bytes': ledger.total(MODEL),
            'feature_bytes_cumulative': ledger.cumulative(FEATURES, n_rounds),
            'model_bytes_cumulative': ledger.cumulative(MODEL, n_rounds)
        },
        'windows': windows,
        'final': result.final,
        'oracles': result.oracles,
        'shape_tag': fed.states[0].shape_tag
    }

###########
# Loading #
###########
def load_report(path):
    """ Report dict from a report file or a run directory. """
    path = Path(path)
    if path.is_dir():
        path = path / REPORT_NAME
    with open(path, 'r', encoding='utf-8') as f:
        report = json.load(f)
    logger.debug("Loaded report %s", path)
    return report


def report_config(report):
    """ The echoed config as a RunConfig. """
    return RunConfig.from_dict(report['config'])

##############
# Comparison #
##############
def _row(name, report):
    cfg = report['config']
    final = report['final']
    row = {
        'run': name,
        'connectivity': cfg['connectivity'],
        'strategy': cfg['federation']['strategy'],
        'seed': cfg['seed'],
        'horizon': final['headline_horizon']
    }
    for h in final['horizons']:
        for metric in METRICS:
            row[f'{metric}_{h}'] = final['aggregate'][str(h)][metric]
    split = final['aggregate']['event_split']
    row['mae_sudden'] = split['mae_sudden']
    row['mae_non_sudden'] = split['mae_non_sudden']
    row['feature_bytes'] = report['communication']['feature_bytes']
    row['model_bytes'] = report['communication']['model_bytes']
    return row


def compare_runs(paths):
    """ One row per run, plus delta_<column> against the first run. """
    paths = [Path(p) for p in paths]
    if len(paths) < 2:
        raise ValueError("compare needs at least two reports")
    reports = [load_report(p) for p in paths]
    horizons = {r['final']['headline_horizon'] for r in reports}
    if len(horizons) != 1:
        raise HorizonMismatch(
            f"Reports use different horizons: {sorted(horizons)}")

    names = [p.parent.name if p.suffix == '.json' else p.name for p in paths]
    df = pd.DataFrame([_row(n, r) for n, r in zip(names, reports)])
    value_cols = [c for c in df.columns
                  if c not in ('run', 'connectivity', 'strategy', 'seed',
                               'horizon')]
    for col in value_cols:
        values = pd.to_numeric(df[col], errors='coerce')
        df[f'delta_{col}'] = values - values.iloc[0]
    logger.info("Compared %d runs at horizon %d", len(df), horizons.pop())
    return df


if __name__ == "__main__":
    pass
