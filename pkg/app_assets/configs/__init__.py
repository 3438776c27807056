""" Bundled run files. """

###########
# Imports #
###########
# Standard library
from pathlib import Path

#############
# Constants #
#############
CONFIG_DIRECTORY = Path(__file__).parent
SYNTHETIC_30 = CONFIG_DIRECTORY / 'synthetic_30.json'
