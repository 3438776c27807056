""" Main menu (command line) for cloudlet traffic forecasting.

    Each subcommand stores the event sequence the controller binds
    a callback to.

    Last edited: Oct 19, 2026
"""

###########
# Imports #
###########
# Standard library
import argparse
import logging

# Custom
from models.federationmodel import CONNECTIVITIES, STRATEGIES
from models.settingsmodel import HORIZONS

###########
# Logging #
###########
# Create new logger
logger = logging.getLogger(__name__)

############
# MainMenu #
############
class MainMenu:
    """ Main Menu. """

    def _add_run_options(self, parser):
        """ Options shared by commands that load a run config. """
        parser.add_argument(
            '--config', type=str, default=None,
            help="JSON run file (defaults are used for missing keys)")
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument(
            '--connectivity', choices=CONNECTIVITIES, default=None)
        parser.add_argument('--strategy', choices=STRATEGIES, default=None)
        parser.add_argument(
            '--horizon', type=int, choices=HORIZONS, default=None)
        parser.add_argument('--window-size', type=int, default=None)

    def __init__(self, _app_info):
        logger.debug("Initializing MainMenu")

        # Assign variables
        self._app_info = _app_info

        self.parser = argparse.ArgumentParser(
            prog=_app_info['prog'],
            description=_app_info['name']
            )
        self.parser.add_argument(
            '-v', '--verbose', action='store_true',
            help="log debug messages")
        self.parser.add_argument(
            '--version', action='version',
            version=f"%(prog)s {_app_info['version']}")
        commands = self.parser.add_subparsers(dest='command', required=True)

        #######
        # Run #
        #######
        run = commands.add_parser(
            'run', help="run one experiment and write its report")
        self._add_run_options(run)
        run.add_argument('--out-dir', type=str, default='runs/latest')
        run.set_defaults(sequence='<<Run>>')

        #########
        # Synth #
        #########
        synth = commands.add_parser(
            'synth', help="write a synthetic corridor scenario as CSVs")
        synth.add_argument('--nodes', type=int, default=None)
        synth.add_argument('--steps', type=int, default=None)
        synth.add_argument('--jam-rate', type=float, default=None,
                           help="new jams per hour over the corridor")
        synth.add_argument('--cloudlets', type=int, default=None)
        synth.add_argument('--lag', type=int, default=None,
                           help="steps a jam takes to move one sensor")
        synth.add_argument('--seed', type=int, default=None)
        synth.add_argument('--config', type=str, default=None)
        synth.add_argument('--out-dir', type=str, default='data/synthetic')
        synth.set_defaults(sequence='<<Synth>>')

        ###########
        # Compare #
        ###########
        compare = commands.add_parser(
            'compare', help="compare two or more run reports")
        compare.add_argument('reports', nargs='+',
                             help="report.json files or run directories")
        compare.add_argument('--out-dir', type=str, default='.')
        compare.set_defaults(sequence='<<Compare>>')

        ##########
        # Events #
        ##########
        events = commands.add_parser(
            'events', help="dump detected sudden events")
        events.add_argument('--speeds', type=str, default=None,
                            help="speed CSV (defaults to the config data)")
        self._add_run_options(events)
        events.add_argument('--out-dir', type=str, default='.')
        events.set_defaults(sequence='<<Events>>')

        ########
        # Plot #
        ########
        plot = commands.add_parser(
            'plot', help="per-cloudlet traffic, WMAPE and SEPA figure")
        plot.add_argument('runs', nargs='+', help="run directories")
        plot.add_argument('--cloudlets', type=int, nargs='*', default=None)
        plot.add_argument('--output', type=str, default='cloudlets.png')
        plot.set_defaults(sequence='<<Plot>>')

        ##########
        # Readme #
        ##########
        readme = commands.add_parser(
            'readme', help="render the README (or CHANGELOG) to HTML")
        readme.add_argument('--changelog', action='store_true')
        readme.add_argument('--no-browser', action='store_true')
        readme.set_defaults(sequence='<<Readme>>')

    ##################
    # Menu Functions #
    ##################
    def parse(self, argv=None):
        args = self.parser.parse_args(argv)
        logger.debug("Parsed command line: %s", vars(args))
        return args

    def overrides(self, args):
        """ Dotted-key config overrides from run options. """
        keys = {
            'seed': 'seed',
            'connectivity': 'connectivity',
            'strategy': 'federation.strategy',
            'horizon': 'horizon',
            'window_size': 'window_size',
            'nodes': 'synthetic.nodes',
            'steps': 'synthetic.steps',
            'jam_rate': 'synthetic.jam_rate',
            'cloudlets': 'synthetic.cloudlets',
            'lag': 'synthetic.lag',
        }
        return {
            dotted: getattr(args, name)
            for name, dotted in keys.items()
            if getattr(args, name, None) is not None
            }


if __name__ == "__main__":
    pass
