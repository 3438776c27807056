""" Imports. """

from app_assets import (
    CHANGELOG,
    README,
    configs
)

__all__ = [
    'CHANGELOG',
    'README',
    'configs'
]
