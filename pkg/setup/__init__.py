""" Imports. """

from setup import (
    settings_vars
)

__all__ = [
    'settings_vars'
]


from setup import (
    logging_funcs
)

__all__ += [
    'logging_funcs'
]
