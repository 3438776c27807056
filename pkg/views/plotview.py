""" Per-cloudlet figures over the online windows: feature traffic,
    WMAPE and SEPA, one column per cloudlet, one line per run.

    Created: Oct 14, 2026
    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
from pathlib import Path

# Third party
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import pandas as pd

# Custom
from views.reportview import WINDOWS_CSV

##########
# Logger #
##########
logger = logging.getLogger(__name__)

#############
# Constants #
#############
ROWS = [
    ('feature_mb', "Feature traffic (MB)"),
    ('wmape', "WMAPE (%)"),
    ('sepa', "SEPA"),
]
MEGABYTE = 1024 ** 2

############
# PlotView #
############
class PlotView:
    """ Reads windows.csv of each run directory and draws the
        per-cloudlet time series.
    """

    def __init__(self, run_dirs, labels=None):
        self.run_dirs = [Path(d) for d in run_dirs]
        self.labels = labels or [d.name for d in self.run_dirs]
        self.frames = [self._load(d) for d in self.run_dirs]

    @staticmethod
    def _load(run_dir):
        df = pd.read_csv(run_dir / WINDOWS_CSV)
        df['feature_mb'] = df['feature_bytes'] / MEGABYTE
        return df

    def cloudlets(self):
        ids = set()
        for df in self.frames:
            ids.update(int(c) for c in df['cloudlet'].unique())
        return sorted(ids)

    def draw(self, cloudlets=None):
        """ Figure with ROWS x cloudlets axes. Windows without a SEPA
            value are left out of the SEPA row. Dashed lines mark each
            run's mean.
        """
        cloudlets = cloudlets or self.cloudlets()
        fig, axes = plt.subplots(
            len(ROWS), len(cloudlets),
            figsize=(4 * len(cloudlets), 2.6 * len(ROWS)),
            sharex=True, squeeze=False
            )
        for col, cid in enumerate(cloudlets):
            for row, (column, ylabel) in enumerate(ROWS):
                ax = axes[row][col]
                for label, df in zip(self.labels, self.frames):
                    sub = df[df['cloudlet'] == cid].dropna(subset=[column])
                    if sub.empty:
                        continue
                    line, = ax.plot(sub['window'], sub[column], label=label)
                    ax.axhline(sub[column].mean(), linestyle='--',
                               linewidth=0.8, color=line.get_color())
                if row == 0:
                    ax.set_title(f"Cloudlet {cid}")
                if col == 0:
                    ax.set_ylabel(ylabel)
                if row == len(ROWS) - 1:
                    ax.set_xlabel("Window")
        axes[0][0].legend(fontsize='small')
        fig.tight_layout()
        return fig

    def save(self, filepath, cloudlets=None):
        fig = self.draw(cloudlets)
        fig.savefig(filepath, dpi=120)
        plt.close(fig)
        logger.info("Saved figure to %s", filepath)
        return Path(filepath)


if __name__ == "__main__":
    pass
