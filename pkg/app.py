#!/usr/bin/env python3
"""
cantorscan - certified numerics for generalized Cantor sets

Python 3.8.0 or higher is strongly recommended, however it may work on 3.7+

Run ``./app.py -h`` for the list of commands, or ``./app.py COMMAND -h`` for the options of a single command.
Equivalent to ``python -m cantorscan``.

"""
import signal
import sys

from cantorscan.cli import main

if __name__ == "__main__":
    # Make CTRL-C abort long level builds immediately
    signal.signal(signal.SIGINT, signal.default_int_handler)
    sys.exit(main())
