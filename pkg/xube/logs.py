#--------------------------------------------------------------------------------------------------#
# logs.py                                                                                          #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# structlog configuration. Level is taken from the argument, else XUBE_LOG, else "info"            #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.19: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
import os
import sys
from typing import TextIO

import structlog

from xube.errors import ConfigError

#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
LOG_ENV = "XUBE_LOG"
LEVELS = {"debug": 10, "info": 20, "warning": 30, "error": 40, "critical": 50}


def configure(
        level: str | None = None,
        stream: TextIO | None = None
        ) -> str:
    """
    Configure structlog for the whole process

    Parameters
    ----------
    level: `str` or None
        log level name. Default is $XUBE_LOG or "info"
    stream: file-like or None
        destination. Default is stderr

    Returns
    -------
    level: `str`
        level name actually applied
    """
    level = (level or os.getenv(LOG_ENV) or "info").lower()
    if level not in LEVELS:
        raise ConfigError(f"unknown log level {level!r}; expected one of {', '.join(LEVELS)}")

    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(LEVELS[level]),
        logger_factory=structlog.PrintLoggerFactory(file=stream or sys.stderr),
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        cache_logger_on_first_use=False,
    )
    return level


def get_logger(name: str):
    return structlog.get_logger().bind(module=name)
