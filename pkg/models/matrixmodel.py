""" Classes for handling the CSV matrix files of a run.

    speeds:     one row per timestep, one column per sensor
    distances:  from,to,distance_m
    positions:  sensor_id,x_m,y_m
    centers:    cloudlet_id,x_m,y_m
    assignment: sensor_id,cloudlet_id

    Created: Oct 02, 2026
    Last edited: Oct 18, 2026
"""

###########
# Imports #
###########
# Standard library
import logging
from pathlib import Path

# Third party
import numpy as np
import pandas as pd

##########
# Logger #
##########
logger = logging.getLogger(__name__)

##############
# Exceptions #
##############
class MalformedSpeedFile(ValueError):
    """ Speed CSV is ragged, non-numeric or has missing entries. """
    pass

##############
# MatrixFile #
##############
class MatrixFile:
    """ Import a CSV table and check its header. """
    columns = None

    def __init__(self, filepath):
        self.filepath = Path(filepath)

    def import_file(self, **kwargs):
        logger.debug("Importing %s", self.filepath)
        try:
            df = pd.read_csv(self.filepath, **kwargs)
        except pd.errors.ParserError as e:
            raise MalformedSpeedFile(f"{self.filepath}: {e}") from e
        if self.columns is not None:
            missing = [c for c in self.columns if c not in df.columns]
            if missing:
                raise ValueError(
                    f"{self.filepath}: missing column(s) {missing}")
        return df

###############
# SpeedMatrix #
###############
class SpeedMatrix(MatrixFile):
    """ Speed CSV (mile/h), header of sensor ids. """

    def import_matrix_file(self):
        """ Return (sensor_ids, values). Rejects ragged rows,
            non-numeric cells and NaN with their location.
        """
        # Read as text so empty, non-numeric and NaN cells can be told apart
        df = self.import_file(dtype=str, keep_default_na=False)
        sensor_ids = tuple(str(c).strip() for c in df.columns)

        numeric = df.apply(pd.to_numeric, errors='coerce')
        bad = numeric.isna().to_numpy()
        if bad.any():
            row, col = (int(x) for x in np.argwhere(bad)[0])
            cell = df.iat[row, col]
            # +2: header line and 1-based line numbers
            where = f"line {row + 2}, column '{sensor_ids[col]}'"
            if not isinstance(cell, str) or cell == '':
                raise MalformedSpeedFile(
                    f"{self.filepath}: ragged row or empty cell at {where}")
            raise MalformedSpeedFile(
                f"{self.filepath}: non-numeric or NaN value {cell!r} "
                f"at {where}")

        values = numeric.to_numpy(dtype=float)
        logger.info("Loaded speed matrix %s: %d steps x %d sensors",
                    self.filepath.name, values.shape[0], values.shape[1])
        return sensor_ids, values

#################
# DistanceTable #
#################
def distance_matrix(df, node_ids, source='distance table'):
    """ Dense (n, n) matrix from from,to,distance_m rows, np.inf where
        no distance is listed. A pair listed in one direction only is
        mirrored.
    """
    index = {nid: i for i, nid in enumerate(node_ids)}
    unknown = sorted(
        (set(df['from']) | set(df['to'])) - set(index))
    if unknown:
        raise ValueError(f"{source}: unknown sensor id(s) {unknown[:10]}")

    n = len(node_ids)
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    rows = df['from'].map(index).to_numpy()
    cols = df['to'].map(index).to_numpy()
    d[rows, cols] = df['distance_m'].to_numpy(dtype=float)
    i, j = np.nonzero(np.isinf(d.T) & np.isfinite(d))
    d[j, i] = d[i, j]
    return d


class DistanceTable(MatrixFile):
    """ Pairwise road distances in meters. """
    columns = ['from', 'to', 'distance_m']

    def import_matrix_file(self, node_ids):
        df = self.import_file(dtype={'from': str, 'to': str})
        return distance_matrix(df, node_ids, source=str(self.filepath))

#################
# PositionTable #
#################
class PositionTable(MatrixFile):
    """ Planar sensor coordinates in meters. """
    columns = ['sensor_id', 'x_m', 'y_m']

    def import_matrix_file(self, node_ids):
        df = self.import_file(dtype={'sensor_id': str}).set_index('sensor_id')
        missing = [n for n in node_ids if n not in df.index]
        if missing:
            raise ValueError(
                f"{self.filepath}: no position for sensor(s) {missing[:10]}")
        return df.loc[list(node_ids), ['x_m', 'y_m']].to_numpy(dtype=float)


class CenterTable(MatrixFile):
    """ Cloudlet centers in meters, ordered by cloudlet id. """
    columns = ['cloudlet_id', 'x_m', 'y_m']

    def import_matrix_file(self):
        df = self.import_file().sort_values('cloudlet_id')
        expected = list(range(len(df)))
        if df['cloudlet_id'].tolist() != expected:
            raise ValueError(
                f"{self.filepath}: cloudlet ids must be 0..{len(df) - 1}")
        return df[['x_m', 'y_m']].to_numpy(dtype=float)


class AssignmentTable(MatrixFile):
    """ Explicit sensor -> cloudlet mapping, one row per sensor. """
    columns = ['sensor_id', 'cloudlet_id']

    def import_matrix_file(self):
        df = self.import_file(dtype={'sensor_id': str})
        repeated = df.loc[df['sensor_id'].duplicated(), 'sensor_id']
        if not repeated.empty:
            raise ValueError(
                f"{self.filepath}: sensor(s) assigned more than once: "
                f"{sorted(set(repeated))[:10]}")
        return dict(zip(df['sensor_id'], df['cloudlet_id'].astype(int)))


if __name__ == "__main__":
    pass
