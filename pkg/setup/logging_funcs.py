""" Logging configuration for the command-line application.

    Created: Oct 15, 2026
"""

###########
# Imports #
###########
# Standard library
from pathlib import Path

#############
# Constants #
#############
FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
CONSOLE_FORMAT = '%(levelname)s: %(message)s'
MAX_BYTES = 1024 * 1024
BACKUP_COUNT = 3

#################
# Setup logging #
#################
def setup_logging(app_name, level='INFO', log_dir=None):
    """ Return a dictConfig dictionary: console on stderr, plus a
        rotating file in log_dir when given.
    """
    handlers = {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'console',
            'level': level,
            'stream': 'ext://sys.stderr'
        }
    }
    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        handlers['file'] = {
            'class': 'logging.handlers.RotatingFileHandler',
            'formatter': 'detailed',
            'level': 'DEBUG',
            'filename': str(log_dir / f'{app_name}.log'),
            'maxBytes': MAX_BYTES,
            'backupCount': BACKUP_COUNT,
            'encoding': 'utf-8'
        }

    return {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'detailed': {'format': FORMAT},
            'console': {'format': CONSOLE_FORMAT}
        },
        'handlers': handlers,
        'root': {
            'handlers': list(handlers),
            'level': 'DEBUG' if log_dir is not None else level
        },
        'loggers': {
            'matplotlib': {'level': 'WARNING'}
        }
    }
