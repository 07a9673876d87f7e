"""
Command line front end::

    python -m cantorscan [-v|-q] [-p BITS] [-f json|csv|text] [-o FILE] [--require-verdict] COMMAND --spec FILE ...

Commands: ``spec-validate``, ``cantor``, ``bounds``, ``classify``, ``thresholds``, ``pants``, ``plotdata``.

Exit codes: 0 success, 2 invalid spec or arguments, 3 precision failure / log-scale-only value, 4 inconclusive
(only with ``--require-verdict``). Diagnostics go to STDERR; STDOUT carries only the emitted document.
"""
import argparse
import logging
import sys
import textwrap
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from privex.helpers import ErrHelpParser, Dictable

from cantorscan import settings, arguments
from cantorscan.cantor import build_levels
from cantorscan.classify import classify, effective_level, length_ratio_trace, short_geodesic_census, UNKNOWN
from cantorscan.exceptions import (
    CantorScanException, InvalidSpec, ConfigError, NumericsError, IndexOutOfRange, DegenerateGeometry,
    HexagonRealizationError
)
from cantorscan.hyperbolic import CurveId, curve_bounds, pants_geometry, atanh_upper, lower_bound_collar
from cantorscan.output import Document, pair, enclosure, digits_for, verdict_line
from cantorscan.numerics import make_certified
from cantorscan.seqspec import SequenceSpec, load_spec

log = logging.getLogger(__name__)

COMMANDS = ('spec-validate', 'cantor', 'bounds', 'classify', 'thresholds', 'pants', 'plotdata')


@dataclass
class RunConfig(Dictable):
    precision_bits: int = field(default_factory=lambda: settings.PRECISION_BITS)
    horizon: int = field(default_factory=lambda: settings.HORIZON)
    levels: int = field(default_factory=lambda: settings.LEVELS)
    c: str = field(default_factory=lambda: settings.WITNESS_C)
    K: str = field(default_factory=lambda: settings.DILATATION_K)
    output_format: str = field(default_factory=lambda: settings.OUTPUT_FORMAT)
    require_verdict: bool = field(default_factory=lambda: settings.require_verdict)

    def validate(self) -> 'RunConfig':
        if self.precision_bits < settings.MIN_PRECISION_BITS:
            raise ConfigError("precision too low", precision_bits=self.precision_bits,
                              minimum=settings.MIN_PRECISION_BITS)
        if self.horizon < 2:
            raise ConfigError("horizon must be >= 2", horizon=self.horizon)
        if self.levels < 1:
            raise ConfigError("levels must be >= 1", levels=self.levels)
        if self.output_format not in settings.OUTPUT_FORMATS:
            raise ConfigError("unknown output format", output_format=self.output_format)
        try:
            c, K = make_certified(self.c, self.precision_bits), make_certified(self.K, self.precision_bits)
        except InvalidSpec as e:
            raise ConfigError(f"bad numeric option: {e}", c=self.c, K=self.K)
        if not c.certainly_positive() or not c.certainly_lt(1):
            raise ConfigError("witness constant c must lie in (0, 1)", c=self.c)
        if K.lower < 1:
            raise ConfigError("dilatation K must be >= 1", K=self.K)
        return self

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        return cls(
            precision_bits=args.precision, horizon=getattr(args, 'horizon', settings.HORIZON),
            levels=getattr(args, 'levels', settings.LEVELS), c=getattr(args, 'witness_c', settings.WITNESS_C),
            K=getattr(args, 'dilatation', settings.DILATATION_K), output_format=args.output_format,
            require_verdict=args.require_verdict
        )


def _meta(spec: SequenceSpec, config: RunConfig, **extra) -> dict:
    return dict(spec_digest=spec.digest(config.precision_bits), precision_bits=config.precision_bits, **extra)


#####
# Commands: each returns the document and the exit code
#####

def cmd_spec_validate(spec: SequenceSpec, config: RunConfig) -> Tuple[Document, int]:
    digits, prec = digits_for(config.precision_bits), config.precision_bits
    rows, channels = [], []
    for n in range(1, config.horizon + 1):
        ch = spec.channels(n, prec)
        rows.append([n, *pair(ch.q, digits), *pair(ch.lam, digits), int(ch.log_scale)])
        channels.append(dict(n=n, q=enclosure(ch.q, digits), lam=enclosure(ch.lam, digits),
                             mu=enclosure(ch.mu, digits), log_scale=ch.log_scale))
    body = dict(
        valid=True, family=spec.family, spec=spec.canonical(), horizon=config.horizon, channels=channels,
        monotone_from_start=spec.monotone_from_start,
    )
    doc = Document(
        'spec-validate', _meta(spec, config), body, ['n', 'q_lo', 'q_hi', 'lambda_lo', 'lambda_hi', 'log_scale'], rows
    )
    return doc, settings.GOOD_RETURN_CODE


def cmd_cantor(spec: SequenceSpec, config: RunConfig) -> Tuple[Document, int]:
    digits = digits_for(config.precision_bits)
    tree = build_levels(spec, config.levels, config.precision_bits)
    rows = [[n, i, *pair(l, digits), *pair(r, digits)] for n, i, l, r in tree.rows()]
    levels = [
        dict(n=lvl.n, length=enclosure(lvl.length, digits), gap=enclosure(lvl.gap, digits),
             degenerate=lvl.degenerate, disjoint=tree.is_disjoint(lvl.n), nested=tree.is_nested(lvl.n))
        for lvl in tree.levels
    ]
    intervals = [dict(n=r[0], i=r[1], left=dict(lo=r[2], hi=r[3]), right=dict(lo=r[4], hi=r[5])) for r in rows]
    doc = Document(
        'cantor', _meta(spec, config, levels=config.levels), dict(level_summary=levels, intervals=intervals),
        ['n', 'i', 'left_lo', 'left_hi', 'right_lo', 'right_hi'], rows
    )
    return doc, settings.GOOD_RETURN_CODE


def _bounds_record(lb, digits: int) -> dict:
    return dict(
        n=lb.curve.n, i=lb.curve.i, lower=enclosure(lb.lower, digits), upper=enclosure(lb.upper, digits),
        upper_log=enclosure(lb.upper_log.log_value, digits, True) if lb.upper_log is not None else None,
        lower_method=lb.lower_method, upper_method=lb.upper_method, log_scale=lb.log_scale,
        candidates={k: enclosure(v, digits) for k, v in sorted(lb.candidates.items())},
    )


def cmd_bounds(spec: SequenceSpec, config: RunConfig) -> Tuple[Document, int]:
    digits, prec = digits_for(config.precision_bits), config.precision_bits
    tree = build_levels(spec, config.levels, prec)
    rows, records = [], []
    for n in range(1, config.levels + 1):
        for i in range(1, 2 ** n + 1):
            lb = curve_bounds(spec, tree, CurveId(n, i), prec)
            rows.append([n, i, *pair(lb.lower, digits), *pair(lb.upper, digits), lb.lower_method, lb.upper_method,
                         int(lb.log_scale)])
            records.append(_bounds_record(lb, digits))
    columns = ['n', 'i', 'lower_lo', 'lower_hi', 'upper_lo', 'upper_hi', 'lower_method', 'upper_method',
               'log_scale_flag']
    return Document('bounds', _meta(spec, config, levels=config.levels), dict(bounds=records), columns, rows), \
        settings.GOOD_RETURN_CODE


def cmd_classify(spec: SequenceSpec, config: RunConfig) -> Tuple[Document, int]:
    digits, prec = digits_for(config.precision_bits), config.precision_bits
    report = classify(spec, config.horizon, config.c, prec)
    census = short_geodesic_census(spec, config.horizon, config.c, prec)
    wit = report.witnesses
    witness_set = set(wit.witnesses)
    criterion_values = [
        dict(n=v.n, value=enclosure(v.value, digits), defined=v.defined, negative=v.negative)
        for v in report.criterion_values
    ]
    body = dict(
        horizon=report.horizon, verdict=report.verdict, witnesses=wit.witnesses, c=wit.c_text,
        automatic_c=wit.automatic_c, certificate=wit.certificate.canonical() if wit.certificate else None,
        short_geodesic_bound=enclosure(wit.short_geodesic_bound, digits), short_geodesics=census.count,
        criterion_values=criterion_values, increasing_from=report.criterion.increasing_from,
        divergence_certificate=report.criterion.certificate.canonical() if report.criterion.certificate else None,
        notes=report.notes,
    )
    rows = [[v.n, *pair(v.value, digits), int(v.defined), int(v.negative), int(v.n in witness_set)]
            for v in report.criterion_values]
    doc = Document(
        'classify', _meta(spec, config), body, ['n', 'value_lo', 'value_hi', 'defined', 'negative', 'witness'], rows,
        headline=verdict_line(report.verdict)
    )
    code = settings.GOOD_RETURN_CODE
    if config.require_verdict and report.verdict == UNKNOWN:
        code = settings.INCONCLUSIVE_CODE
    return doc, code


def cmd_thresholds(spec: SequenceSpec, config: RunConfig) -> Tuple[Document, int]:
    digits, prec = digits_for(config.precision_bits), config.precision_bits
    report = effective_level(spec, config.K, config.horizon, prec)
    certs = [
        dict(kind=c.kind, n=c.n, lhs=enclosure(c.lhs, digits), rhs=enclosure(c.rhs, digits), status=c.status)
        for c in report.certificates
    ]
    body = dict(
        horizon=config.horizon, thresholds=dict(K=config.K, n1=report.n1, n2=report.n2, N=report.N),
        certificates=certs
    )
    rows = [[c.kind, c.n, *pair(c.lhs, digits), *pair(c.rhs, digits), c.status] for c in report.certificates]
    doc = Document(
        'thresholds', _meta(spec, config), body, ['kind', 'n', 'lhs_lo', 'lhs_hi', 'rhs_lo', 'rhs_hi', 'status'], rows,
        headline=f"K={config.K} n1={report.n1} n2={report.n2} N={report.N}"
    )
    code = settings.GOOD_RETURN_CODE
    if config.require_verdict and report.N is None:
        code = settings.INCONCLUSIVE_CODE
    return doc, code


def cmd_pants(spec: SequenceSpec, config: RunConfig) -> Tuple[Document, int]:
    digits, prec = digits_for(config.precision_bits), config.precision_bits
    tree = build_levels(spec, config.levels, prec)
    rows, records = [], []
    for n in range(1, config.levels):
        for i in range(1, 2 ** n + 1):
            pg = pants_geometry(spec, tree, n, i, prec)
            a, b, c = pg.boundary_lengths
            rows.append([n, i, *pair(a, digits), *pair(b, digits), *pair(c, digits), *pair(pg.seam_length, digits),
                         *pair(pg.boundary_to_seam, digits)])
            records.append(dict(
                n=n, i=i, boundary_lengths=[enclosure(x, digits) for x in pg.boundary_lengths],
                seam_length=enclosure(pg.seam_length, digits), boundary_to_seam=enclosure(pg.boundary_to_seam, digits),
                within_pants=pg.within_pants,
            ))
    columns = ['n', 'i', 'a_lo', 'a_hi', 'b_lo', 'b_hi', 'c_lo', 'c_hi', 'seam_lo', 'seam_hi', 'distance_lo',
               'distance_hi']
    return Document('pants', _meta(spec, config, levels=config.levels), dict(pants=records), columns, rows), \
        settings.GOOD_RETURN_CODE


def cmd_plotdata(spec: SequenceSpec, config: RunConfig) -> Tuple[Document, int]:
    digits, prec = digits_for(config.precision_bits), config.precision_bits
    rows = []
    for n in range(1, config.horizon + 1):
        ch = spec.channels(n, prec)
        if ch.mu is not None:
            rows.append([n, *pair(ch.mu, digits), 'log_lambda'])
        value = spec.criterion(n, prec)
        if value is not None:
            rows.append([n, *pair(value, digits), 'criterion'])
        lower, _ = lower_bound_collar(ch)
        rows.append([n, *pair(lower, digits), 'collar_lower'])
        upper, upper_log = atanh_upper(ch)
        log_upper = upper_log.log_value if upper_log is not None else upper.ln()
        rows.append([n, *pair(log_upper, digits), 'atanh_upper_log'])
    for point in length_ratio_trace(spec, config.horizon, prec):
        rows.append([point.n, *pair(point.ratio, digits), 'length_ratio'])
    rows.sort(key=lambda r: (r[3], r[0]))
    series = {}
    for n, lo, hi, name in rows:
        series.setdefault(name, []).append(dict(n=n, lo=lo, hi=hi))
    doc = Document(
        'plotdata', _meta(spec, config, horizon=config.horizon), dict(series=series),
        ['n', 'value_lo', 'value_hi', 'series'], rows
    )
    return doc, settings.GOOD_RETURN_CODE


COMMAND_MAP: Dict[str, Callable[[SequenceSpec, RunConfig], Tuple[Document, int]]] = {
    'spec-validate': cmd_spec_validate,
    'cantor': cmd_cantor,
    'bounds': cmd_bounds,
    'classify': cmd_classify,
    'thresholds': cmd_thresholds,
    'pants': cmd_pants,
    'plotdata': cmd_plotdata,
}


def run(subcommand: str, config: RunConfig, spec_path: str) -> Tuple[int, str]:
    """
    Execute one command and return ``(exit_code, document)``. Errors are logged and mapped to exit codes, in which
    case the document is empty.
    """
    try:
        config.validate()
        if subcommand not in COMMAND_MAP:
            raise ConfigError("unknown command", command=subcommand, known=', '.join(COMMANDS))
        spec = load_spec(spec_path, config.precision_bits)
        doc, code = COMMAND_MAP[subcommand](spec, config)
        return code, doc.render(config.output_format)
    except (InvalidSpec, IndexOutOfRange) as e:
        log.error("Invalid input: %s", e)
        return settings.INVALID_SPEC_CODE, ''
    except FileNotFoundError as e:
        log.error("Spec file not found: %s", e)
        return settings.INVALID_SPEC_CODE, ''
    except (NumericsError, DegenerateGeometry, HexagonRealizationError) as e:
        log.error("Numerical failure (try a higher --precision): %s", e)
        return settings.PRECISION_FAILURE_CODE, ''
    except CantorScanException as e:
        log.exception("Internal consistency failure: %s", e)
        return settings.BAD_RETURN_CODE, ''


help_text = textwrap.dedent('''\

    Certified numerics for generalized Cantor sets: the hyperbolic geometry of the sphere minus E(q_1, q_2, ...).

    Commands:

        spec-validate   - parse and range-check a sequence spec, print the channels q_n, ln(1/q_n), ln ln(1/q_n)
        cantor          - endpoints of the intervals of E_1 .. E_levels
        bounds          - certified lower/upper bounds on the lengths of the curves separating each interval
        classify        - check the hypotheses of the uncountability and countability criteria
        thresholds      - effective levels n1, n2 and N = max(n1, n2) for a dilatation K
        pants           - seam lengths and boundary-to-seam distances of the pants P_n^i
        plotdata        - CSV series for plotting (log_lambda, criterion, collar_lower, atanh_upper_log, length_ratio)

    Examples:

        $ python -m cantorscan classify --spec constant_half.spec
        $ python -m cantorscan -f csv bounds --spec constant_half.spec --levels 2
        $ python -m cantorscan --require-verdict thresholds --spec iterated_exponential.spec -K 2

''')


def build_parser() -> ErrHelpParser:
    parser = ErrHelpParser(
        description="Certified numerics for generalized Cantor sets",
        formatter_class=argparse.RawDescriptionHelpFormatter, epilog=help_text
    )
    arguments.add_arguments(parser, 'verbose', 'quiet', 'precision', 'output_format', 'output', 'require_verdict')
    subparser = parser.add_subparsers(dest='command')

    per_command = {
        'spec-validate': ('spec', 'horizon'),
        'cantor': ('spec', 'levels'),
        'bounds': ('spec', 'levels'),
        'classify': ('spec', 'horizon', 'witness_c'),
        'thresholds': ('spec', 'horizon', 'dilatation'),
        'pants': ('spec', 'levels'),
        'plotdata': ('spec', 'horizon'),
    }
    for name in COMMANDS:
        p = subparser.add_parser(name, description=COMMAND_MAP[name].__name__.replace('cmd_', '').replace('_', ' '))
        arguments.add_arguments(p, *per_command[name])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    arguments.handle_args(args)
    if not getattr(args, 'command', None):
        parser.error('Too few arguments')
    code, document = run(args.command, RunConfig.from_args(args), args.spec)
    if document:
        if args.output:
            with open(args.output, 'w') as fh:
                fh.write(document)
            log.info("Wrote %s document to %s", args.command, args.output)
        else:
            sys.stdout.write(document)
            sys.stdout.flush()
    return code
