""" Settings variables for cloudlet traffic forecasting runs.

    Defaults reproduce the reference operating point. A run file
    (JSON) only needs the keys it changes.
"""

# Define dictionary items
fields = {
    # Run variables
    'seed': {'type': 'int', 'value': 0},
    'horizon': {'type': 'int', 'value': 12},
    'window_size': {'type': 'int', 'value': 140},
    'connectivity': {'type': 'str', 'value': 'adaptive'},

    # Dataset files
    'data': {
        'speeds': {'type': 'path', 'value': None},
        'distances': {'type': 'path', 'value': None},
        'positions': {'type': 'path', 'value': None},
        'centers': {'type': 'path', 'value': None},
        'assignment': {'type': 'path', 'value': None},
    },

    # Graph variables
    'graph': {
        'kernel_sigma': {'type': 'float', 'value': 10_000.0},
        'cutoff': {'type': 'float', 'value': 20_000.0},
        'l_hops': {'type': 'int', 'value': None},
        'radius': {'type': 'float', 'value': None},
    },

    # Dataset variables
    'dataset': {
        'split_ratio': {'type': 'float', 'value': 0.8},
        'per_sensor': {'type': 'bool', 'value': False},
        'interval': {'type': 'int', 'value': 300},
    },

    # Forecaster variables
    'forecaster': {
        'K': {'type': 'int', 'value': 3},
        'lookback': {'type': 'int', 'value': 12},
        'lr': {'type': 'float', 'value': 1e-4},
        'weight_decay': {'type': 'float', 'value': 1e-5},
        'batch_size': {'type': 'int', 'value': 32},
        'lr_decay': {'type': 'float', 'value': 0.7},
        'lr_decay_every': {'type': 'int', 'value': 5},
        'steps_per_window': {'type': 'int', 'value': 1},
        'init_noise': {'type': 'float', 'value': 0.01},
    },

    # Pruning controller variables
    'controller': {
        'p_start': {'type': 'float', 'value': 0.10},
        'p_min': {'type': 'float', 'value': 0.10},
        'p_max': {'type': 'float', 'value': 0.70},
        'W_init': {'type': 'int', 'value': 2},
        'W': {'type': 'int', 'value': 3},
        'delta_margin_up': {'type': 'float', 'value': 0.00},
        'delta_margin_down': {'type': 'float', 'value': 0.03},
        'delta_pruning_up': {'type': 'float', 'value': 0.05},
        'delta_pruning_down': {'type': 'float', 'value': 0.05},
        'E_settle': {'type': 'int', 'value': 3},
    },

    # Sudden event variables
    'sepa': {
        'H': {'type': 'int', 'value': 12},
        'delta_change': {'type': 'float', 'value': 20.0},
        'delta_tol': {'type': 'float', 'value': 10.0},
        'tau_c': {'type': 'int', 'value': 6},
    },

    # Model exchange variables
    'federation': {
        'strategy': {'type': 'str', 'value': 'traditional_fl'},
        'period': {'type': 'int', 'value': 1},
        'gossip_fanout': {'type': 'int', 'value': 1},
        'workers': {'type': 'int', 'value': 1},
    },

    # Synthetic scenario variables
    'synthetic': {
        'enabled': {'type': 'bool', 'value': False},
        'nodes': {'type': 'int', 'value': 30},
        'steps': {'type': 'int', 'value': 2000},
        'jam_rate': {'type': 'float', 'value': 1.0},
        'cloudlets': {'type': 'int', 'value': 3},
        'spacing': {'type': 'float', 'value': 2000.0},
        'lag': {'type': 'int', 'value': None},
    },
}
