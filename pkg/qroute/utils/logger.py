import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from qroute import config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(name: str, level: Optional[str] = None, log_file: Optional[str] = None) -> logging.Logger:
    """Attach the rotating file handler and a stderr handler to `name`.

    Calling it again replaces the handlers installed by a previous call instead of stacking them.
    Level and file default to QROUTE_LOG_LEVEL / QROUTE_LOG_FILE.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level or config.log_level())

    for handler in list(logger.handlers):
        if getattr(handler, "_qroute_handler", False):
            logger.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter(LOG_FORMAT)

    path = log_file if log_file is not None else config.log_file()
    if path:
        file_handler = RotatingFileHandler(path, maxBytes=1024 * 1024 * 5, backupCount=5)
        file_handler.setFormatter(formatter)
        file_handler._qroute_handler = True
        logger.addHandler(file_handler)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    stream_handler.setLevel(logging.WARNING if logger.level > logging.DEBUG else logging.DEBUG)
    stream_handler._qroute_handler = True
    logger.addHandler(stream_handler)

    return logger
