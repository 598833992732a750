#      Copyright (C) 2020  Jeremy Schulman
#
#      This program is free software: you can redistribute it and/or modify
#      it under the terms of the GNU General Public License as published by
#      the Free Software Foundation, either version 3 of the License, or
#      (at your option) any later version.
#
#      This program is distributed in the hope that it will be useful,
#      but WITHOUT ANY WARRANTY; without even the implied warranty of
#      MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#      GNU General Public License for more details.
#
#      You should have received a copy of the GNU General Public License
#      along with this program.  If not, see <https://www.gnu.org/licenses/>.

import logging

from hybrid_polar import PACKAGE_NAME

__all__ = ["get_logger", "setup_logging"]


def get_logger() -> logging.Logger:
    return logging.getLogger(PACKAGE_NAME)


def setup_logging(level: str = "WARNING"):
    """
    Attach a stream handler to the package logger.  Only the CLI calls this;
    library code never configures handlers.
    """
    log = get_logger()
    if not log.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
        )
        log.addHandler(handler)

    log.setLevel(level.upper())
    return log
