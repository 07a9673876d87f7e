import logging
from argparse import ArgumentParser, Namespace
from typing import List
from privex.helpers import DictObject, is_true
from cantorscan import settings
from cantorscan.core import clear_handlers, set_logging_level

log = logging.getLogger(__name__)


help_texts = DictObject(
    spec=f'Sequence spec document (JSON). Relative paths are searched in the working directory, the project root and '
         f'{settings.SPEC_DIR}. Pass "-" to read the document from STDIN.',
    precision=f'Working precision in bits (minimum {settings.MIN_PRECISION_BITS}, default: {settings.PRECISION_BITS}). '
              f'The effective precision is echoed in every emitted document.',
    horizon=f'Largest sequence index examined (default: {settings.HORIZON})',
    levels=f'Number of Cantor levels to build (default: {settings.LEVELS})',
    witness_c=f'Witness constant c in (0, 1) for the uncountability criterion, decimal or p/q '
              f'(default: {settings.WITNESS_C})',
    dilatation=f'Quasiconformal dilatation K >= 1, decimal or p/q (default: {settings.DILATATION_K})',
    output_format=f'Output format, one of {", ".join(settings.OUTPUT_FORMATS)} (default: {settings.OUTPUT_FORMAT})',
    output='Write the document to this file instead of STDOUT',
    require_verdict=f'Exit with code {settings.INCONCLUSIVE_CODE} when classify/thresholds cannot certify a result',
    verbose='Verbose logging mode', quiet='Quiet logging mode'
)


def handle_args(args: Namespace):
    """
    Apply the logging flags of a parsed namespace: ``-q`` drops console logging to CRITICAL, ``-v`` raises it to DEBUG.

        >>> parser = ArgumentParser(description="my arg parser")
        >>> add_arguments(parser, 'verbose', 'quiet')
        >>> args = parser.parse_args(['-v'])
        >>> handle_args(args)

    """
    if args.quiet:
        settings.quiet = True
        settings.verbose = False
        clear_handlers('cantorscan')
        set_logging_level(logging.CRITICAL, 'cantorscan')
    elif args.verbose:
        settings.quiet = False
        settings.verbose = True
        clear_handlers('cantorscan')
        set_logging_level(logging.DEBUG, 'cantorscan')

    if 'require_verdict' in args: settings.require_verdict = is_true(args.require_verdict)


def add_spec(parser: ArgumentParser, help_text=help_texts.spec):
    parser.add_argument('--spec', dest='spec', required=True, help=help_text)


def add_precision(parser: ArgumentParser, help_text=help_texts.precision):
    parser.add_argument('-p', '--precision', dest='precision', type=int, default=settings.PRECISION_BITS,
                        help=help_text)


def add_horizon(parser: ArgumentParser, help_text=help_texts.horizon):
    parser.add_argument('--horizon', dest='horizon', type=int, default=settings.HORIZON, help=help_text)


def add_levels(parser: ArgumentParser, help_text=help_texts.levels):
    parser.add_argument('--levels', dest='levels', type=int, default=settings.LEVELS, help=help_text)


def add_witness_c(parser: ArgumentParser, help_text=help_texts.witness_c):
    parser.add_argument('--c', dest='witness_c', default=settings.WITNESS_C, help=help_text)


def add_dilatation(parser: ArgumentParser, help_text=help_texts.dilatation):
    parser.add_argument('-K', '--dilatation', dest='dilatation', default=settings.DILATATION_K, help=help_text)


def add_output_format(parser: ArgumentParser, help_text=help_texts.output_format):
    parser.add_argument('-f', '--format', dest='output_format', choices=settings.OUTPUT_FORMATS,
                        default=settings.OUTPUT_FORMAT, help=help_text)


def add_output(parser: ArgumentParser, help_text=help_texts.output):
    parser.add_argument('-o', '--output', dest='output', default=None, help=help_text)


def add_require_verdict(parser: ArgumentParser, help_text=help_texts.require_verdict):
    parser.add_argument('--require-verdict', dest='require_verdict', action='store_true',
                        default=settings.require_verdict, help=help_text)


def add_verbose(parser: ArgumentParser, help_text=help_texts.verbose):
    parser.add_argument('-v', '--verbose', dest='verbose', action='store_true', default=settings.verbose,
                        help=help_text)


def add_quiet(parser: ArgumentParser, help_text=help_texts.quiet):
    parser.add_argument('-q', '--quiet', dest='quiet', action='store_true', default=settings.quiet, help=help_text)


ARG_MAP = DictObject(
    spec=add_spec,
    precision=add_precision,
    horizon=add_horizon,
    levels=add_levels,
    witness_c=add_witness_c,
    dilatation=add_dilatation,
    output_format=add_output_format,
    output=add_output,
    require_verdict=add_require_verdict,
    verbose=add_verbose, quiet=add_quiet
)


def add_arguments(parser: ArgumentParser, *arg_names, **arg_help) -> List[str]:
    """
    Add the named arguments from :attr:`.ARG_MAP` to ``parser``.

    Examples::

        >>> parser = ArgumentParser(description="my arg parser")
        >>> add_arguments(parser, 'verbose', 'quiet', 'spec', 'horizon')
        >>> parser = ArgumentParser(description="my arg parser")
        >>> add_arguments(parser, 'spec', 'levels', spec="The sequence spec whose Cantor levels are exported")

    :param ArgumentParser parser: A :class:`.ArgumentParser` instance
    :param str arg_names: Names of parser arguments (see :attr:`.ARG_MAP`) to add to ``parser``
    :param str arg_help: Argument names mapped to help text replacing their :attr:`.help_texts` entry
    :return List[str] added: The argument names found in :attr:`.ARG_MAP`
    """
    clean_args = []
    for a in arg_names:
        if a not in ARG_MAP:
            log.debug("Skipping argument %s - not present in ARG_MAP", a)
            continue
        clean_args.append(a)
        if a in arg_help:
            ARG_MAP[a](parser, help_text=arg_help[a])
        else:
            ARG_MAP[a](parser)
    return clean_args
