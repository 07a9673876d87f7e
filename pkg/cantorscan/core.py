import json
import logging
import sys
from os.path import join, exists
from os import makedirs
from typing import Optional, Union

from privex.loghelper import LogHelper
from cantorscan import settings
from cantorscan.settings import LOG_LEVEL, LOG_DIR, find_file
from cantorscan.exceptions import SpecParseError

log = logging.getLogger(__name__)

if LOG_DIR is not None and not exists(LOG_DIR):
    makedirs(LOG_DIR)


LOG_FORMATTER = logging.Formatter('[%(asctime)s]: %(name)-35s -> %(funcName)-20s : %(levelname)-8s:: %(message)s')


def clear_handlers(*loggers: Optional[str]):
    """Remove all log handlers (e.g. console, file) for a given logger name"""
    loggers = ['cantorscan'] if len(loggers) == 0 else loggers

    for lg in loggers:
        lgr = logging.getLogger(lg)
        for h in list(lgr.handlers):
            lgr.removeHandler(h)
        lgr.handlers.clear()


def set_logging_level(level: Union[int, str], *loggers: Optional[str], formatter=LOG_FORMATTER):
    lgs = []
    loggers = ['cantorscan'] if len(loggers) == 0 else loggers
    level = logging.getLevelName(str(level).upper()) if isinstance(level, str) else level

    for lg in loggers:
        l_handler = LogHelper(lg, handler_level=level, formatter=formatter)
        l_handler.add_console_handler(level=level, stream=sys.stderr)
        lgs.append(l_handler)
    return lgs


def setup_loggers(*loggers, console=True, file_dbg=True, file_err=True):
    """
    Attach the console handler (always stderr, stdout is reserved for emitted documents) and, when ``LOG_DIR`` is
    configured, the daily rotating ``debug.log`` / ``error.log`` file handlers.
    """
    loggers = ['cantorscan'] if len(loggers) == 0 else loggers
    file_dbg, file_err = file_dbg and LOG_DIR is not None, file_err and LOG_DIR is not None

    for lg in loggers:
        _lh = LogHelper(lg, formatter=LOG_FORMATTER, handler_level=LOG_LEVEL)
        con, tfh_dbg, tfh_err = None, None, None
        if console: con = _lh.add_console_handler(level=LOG_LEVEL, stream=sys.stderr)
        if file_dbg:
            tfh_dbg = _lh.add_timed_file_handler(
                join(LOG_DIR, 'debug.log'), when='D', interval=1, backups=14, level=LOG_LEVEL
            )
        if file_err:
            tfh_err = _lh.add_timed_file_handler(
                join(LOG_DIR, 'error.log'), when='D', interval=1, backups=14, level=logging.WARNING
            )
        yield con, tfh_dbg, tfh_err, lg


con_handler, tfh_dbg_handler, tfh_err_handler, _ = list(setup_loggers())[0]


def read_spec_document(file: str) -> dict:
    """
    Locate ``file`` (absolute, or relative to one of :attr:`.settings.SEARCH_PATHS`) and decode it as a JSON
    spec document. Use ``-`` to read the document from STDIN.

    :raises FileNotFoundError: when the file cannot be located
    :raises SpecParseError: when the file is not a JSON object
    """
    if file == '-':
        log.debug("Reading spec document from STDIN")
        text = sys.stdin.read()
    else:
        path = find_file(file)
        log.debug("Loading spec document from full path: %s", path)
        with open(path, 'r') as fh:
            text = fh.read()
    return decode_spec_document(text)


def decode_spec_document(text: str) -> dict:
    def _reject_float(literal):
        raise SpecParseError("numbers in spec documents must be strings (decimal or p/q)", literal=literal)

    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise SpecParseError("spec document is not valid JSON", error=str(e))
    if not isinstance(doc, dict):
        raise SpecParseError("spec document must be a JSON object", got=type(doc).__name__)
    return doc
