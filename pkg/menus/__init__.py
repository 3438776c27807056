""" Command-line menu imports. """

from menus.mainmenu import (
    MainMenu
)

__all__ = [
    'MainMenu'
]
