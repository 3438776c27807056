""" Cloudlet Forecast.

    Deterministic simulator of online, semi-decentralized traffic
    forecasting across cloudlets: adaptive cross-cloudlet pruning,
    traditional FL, server-free FL and gossip learning, with a
    byte-accurate communication ledger and the SEPA event metric.
    Reports are written to JSON and CSV.

    Created: Oct 01, 2026
"""

###########
# Imports #
###########
# Standard library
import logging.config
import logging.handlers
import sys
import webbrowser
from pathlib import Path

# Third party
import markdown

# Custom
import app_assets
import menus
import models
import setup
import views
from models import datamodel as dm
from models import metricsmodel as mm
from models.experimentmodel import load_inputs
from models.settingsmodel import SettingsModel

##########
# Logger #
##########
logger = logging.getLogger(__name__)

#############
# Constants #
#############
# Errors that end a command with exit code 1
RUN_ERRORS = (
    models.AsymmetricDistances,
    models.UncoveredNodes,
    models.UnknownNode,
    models.MalformedSpeedFile,
    models.ZeroVariance,
    models.ShapeMismatch,
    models.ZeroTruthSum,
    models.IncompatibleModels,
    models.DimensionMismatch,
    models.InvalidConfig,
    models.HorizonMismatch,
    ValueError,
    OSError,
)

###############
# Application #
###############
class Application:
    """ Command-line application. """
    def __init__(self, argv=None):
        #############
        # Constants #
        #############
        self.NAME = 'Cloudlet Forecast'
        self.PROG = 'cloudlet_forecast'
        self.VERSION = '1.0.1'
        self.EDITED = 'Oct 19, 2026'

        # Create menu settings dictionary
        self._app_info = {
            'name': self.NAME,
            'prog': self.PROG,
            'version': self.VERSION,
            'last_edited': self.EDITED
        }
        # Load menus
        self.menu = menus.MainMenu(self._app_info)
        self.args = self.menu.parse(argv)

        # Set up custom logger as soon as the output dir is known
        log_dir = getattr(self.args, 'out_dir', None)
        if self.args.command not in ('run', 'synth'):
            log_dir = None
        config = setup.logging_funcs.setup_logging(
            self.PROG,
            level='DEBUG' if self.args.verbose else 'INFO',
            log_dir=log_dir
            )
        logging.config.dictConfig(config)
        logger.debug("Started custom logger")

        # Create callback dictionary
        self.event_callbacks = {
            '<<Run>>': self.on_run,
            '<<Synth>>': self.on_synth,
            '<<Compare>>': self.on_compare,
            '<<Events>>': self.on_events,
            '<<Plot>>': self.on_plot,
            '<<Readme>>': self._show_help,
        }
        logger.info('Application initialized successfully')

    def mainloop(self):
        """ Dispatch the parsed command; return the exit code. """
        callback = self.event_callbacks[self.args.sequence]
        try:
            callback()
        except RUN_ERRORS as e:
            logger.error("%s: %s", type(e).__name__, e)
            logger.debug("Traceback", exc_info=True)
            return 1
        return 0

    #####################
    # General Functions #
    #####################
    def _load_settings(self):
        """ Defaults, the run file, then the command-line overrides. """
        settings_model = SettingsModel(
            settings_vars=setup.settings_vars.fields,
            filepath=getattr(self.args, 'config', None)
            )
        settings_model.update(self.menu.overrides(self.args))
        return settings_model

    #####################
    # Command Functions #
    #####################
    def on_run(self):
        """ Run one experiment and write its report. """
        config = self._load_settings().to_config()
        result = models.run_experiment(config)
        view = views.ReportView(self.args.out_dir)
        report = view.write_run(result)
        aggregate = report['final']['aggregate'][str(config.horizon)]
        logger.info(
            "Final (horizon %d): MAE %.4f, RMSE %.4f, WMAPE %.2f%%, SEPA %s",
            config.horizon, aggregate['mae'], aggregate['rmse'],
            aggregate['wmape'], aggregate['sepa'])
        logger.info("Feature bytes %d, model bytes %d",
                    report['communication']['feature_bytes'],
                    report['communication']['model_bytes'])

    def on_synth(self):
        """ Write a synthetic corridor scenario. """
        settings_model = self._load_settings()
        settings_model.set('synthetic.enabled', True)
        syn = settings_model.to_config().synthetic
        data = models.generate_synthetic(
            nodes=syn.nodes,
            steps=syn.steps,
            jam_rate=syn.jam_rate,
            seed=settings_model.get('seed'),
            cloudlets=syn.cloudlets,
            spacing=syn.spacing,
            interval=settings_model.get('dataset.interval'),
            cooldown=settings_model.get('sepa.tau_c'),
            event_window=settings_model.get('sepa.H'),
            lag=syn.lag
            )
        views.ReportView(self.args.out_dir).write_synthetic(data)

    def on_compare(self):
        """ Side-by-side comparison table of several runs. """
        df = models.compare_runs(self.args.reports)
        views.ReportView(self.args.out_dir).write_comparison(df)

    def on_events(self):
        """ Dump detected sudden events of a speed file or the
            configured dataset.
        """
        if self.args.speeds is not None:
            # Only the detector settings apply to a bare speed file
            settings_model = self._load_settings()
            sepa = mm.SepaConfig(**settings_model.values()['sepa'])
            series = dm.load_speed_matrix(
                self.args.speeds, settings_model.get('dataset.interval'))
        else:
            config = self._load_settings().to_config()
            sepa = config.sepa
            series = load_inputs(config).series
        events = mm.detect_sudden_events(series.values, sepa,
                                         offset=series.offset)
        logger.info("Detected %d sudden events", len(events))
        views.ReportView(self.args.out_dir).write_events(events)

    def on_plot(self):
        """ Per-cloudlet figure for one or more runs. """
        plot = views.PlotView(self.args.runs)
        plot.save(self.args.output, cloudlets=self.args.cloudlets)

    #######################
    # Help Menu Functions #
    #######################
    def _show_help(self):
        """ Create html README (or CHANGELOG) file and display it in
            the default browser.
        """
        if self.args.changelog:
            source = app_assets.CHANGELOG.CHANGELOG_MD
            target = app_assets.CHANGELOG.CHANGELOG_HTML
        else:
            source = app_assets.README.README_MD
            target = app_assets.README.README_HTML
        logger.debug("Rendering %s", source)

        # Read markdown file and convert to html
        with open(source, 'r', encoding='utf-8') as f:
            html = markdown.markdown(f.read(), extensions=['tables'])

        # Create html file for display
        with open(target, 'w', encoding='utf-8') as f:
            f.write(html)
        logger.info("Wrote %s", target)

        # Open in default web browser
        if not self.args.no_browser:
            webbrowser.open(Path(target).resolve().as_uri())


def main(argv=None):
    app = Application(argv)
    return app.mainloop()


if __name__ == "__main__":
    sys.exit(main())
