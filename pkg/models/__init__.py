""" Imports. """

from models.graphmodel import (
    AsymmetricDistances,
    CloudletPartition,
    UncoveredNodes,
    UnknownNode,
    WeightedGraph,
    build_adjacency,
    dependency_closure,
    induced_subgraph,
    partition_by_radius,
    partition_from_assignment
)

__all__ = [
    'AsymmetricDistances',
    'CloudletPartition',
    'UncoveredNodes',
    'UnknownNode',
    'WeightedGraph',
    'build_adjacency',
    'dependency_closure',
    'induced_subgraph',
    'partition_by_radius',
    'partition_from_assignment'
]


from models.matrixmodel import (
    MalformedSpeedFile,
    SpeedMatrix
)

__all__ += [
    'MalformedSpeedFile',
    'SpeedMatrix'
]


from models.datamodel import (
    SpeedSeries,
    Standardizer,
    WindowBatch,
    ZeroVariance
)

__all__ += [
    'SpeedSeries',
    'Standardizer',
    'WindowBatch',
    'ZeroVariance'
]


from models.metricsmodel import (
    EventRecord,
    SepaConfig,
    SepaScore,
    ShapeMismatch,
    ZeroTruthSum
)

__all__ += [
    'EventRecord',
    'SepaConfig',
    'SepaScore',
    'ShapeMismatch',
    'ZeroTruthSum'
]


from models.forecastmodel import (
    DimensionMismatch,
    ForecasterConfig,
    ForecasterParams,
    IncompatibleModels
)

__all__ += [
    'DimensionMismatch',
    'ForecasterConfig',
    'ForecasterParams',
    'IncompatibleModels'
]


from models.pruningmodel import (
    ControllerConfig,
    PruningState
)

__all__ += [
    'ControllerConfig',
    'PruningState'
]


from models.federationmodel import (
    CommLedger,
    Federation,
    StrategyConfig
)

__all__ += [
    'CommLedger',
    'Federation',
    'StrategyConfig'
]


from models.settingsmodel import (
    InvalidConfig,
    RunConfig,
    SettingsModel
)

__all__ += [
    'InvalidConfig',
    'RunConfig',
    'SettingsModel'
]


from models.synthmodel import (
    generate_synthetic
)

__all__ += [
    'generate_synthetic'
]


from models.experimentmodel import (
    run_experiment
)

__all__ += [
    'run_experiment'
]


from models.reportmodel import (
    HorizonMismatch,
    compare_runs
)

__all__ += [
    'HorizonMismatch',
    'compare_runs'
]
