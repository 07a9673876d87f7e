"""
Finite descriptions of sequences ``q_1, q_2, ...`` in ``(0, 1)``, read from JSON spec documents, and their evaluation
through three channels::

    q_n            the value itself (absent when it underflows every usable exponent range)
    lambda_n       ln(1 / q_n)
    mu_n           ln ln(1 / q_n)

Builtin families compute whichever channel has a closed form first, so that e.g. the iterated exponential family can
report ``mu_4 ~ 792`` long after ``q_4 = exp(-e^792)`` stopped being representable.

Families:

* ``constant``                 ``{"family": "constant", "q": "1/2"}``
* ``alternating_half_power``   ``q_n = 1/2`` at odd ``n``, ``(1/2)^n`` at even ``n``
* ``iterated_exponential``     ``q_1 = q1`` (default ``1/2``), ``q_{n+1} = exp(-n^(1/q_n))``
* ``explicit_with_tail``       a finite value list continued by a nested ``tail`` spec
* ``user_closed_form``         an expression in ``n`` (see :class:`.ClosedForm`)

"""
import ast
import hashlib
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from privex.helpers import Dictable, empty

from cantorscan import settings
from cantorscan.core import decode_spec_document, read_spec_document
from cantorscan.exceptions import (
    SpecParseError, UnknownFamily, ParameterOutOfRange, TailRuleMissing, RepresentationOverflow, IndexOutOfRange,
    DomainError
)
from cantorscan.numerics import CertifiedScalar, LogScaleValue, make_certified, from_fraction, ln2, STD_FUNCTIONS, \
    pi, e

log = logging.getLogger(__name__)

FAMILIES = ('constant', 'explicit_with_tail', 'alternating_half_power', 'iterated_exponential', 'user_closed_form')

MONOTONE = 'monotone_decreasing'
RECURRENT = 'recurrent_lower_bound'
DIVERGENT = 'divergent_criterion'
PROPERTY_NAMES = (MONOTONE, RECURRENT, DIVERGENT)

# Where a property comes from. Only the first two are used as certificates.
CONSTRUCTION, VALIDATED, DECLARED = 'construction', 'validated', 'declared'


@dataclass(frozen=True)
class SpecProperty(Dictable):
    """
    A structural fact about a sequence::

        monotone_decreasing     q_{n+1} <= q_n for every n >= start
        recurrent_lower_bound   q_{start + k*period} >= value for every k >= 0
        divergent_criterion     q_n * ln ln(1/q_{n+1}) increases to infinity from start on

    """
    name: str
    start: int = 1
    value: Optional[Fraction] = None
    period: int = 1
    origin: str = CONSTRUCTION
    note: Optional[str] = None

    @property
    def certified(self) -> bool:
        return self.origin in (CONSTRUCTION, VALIDATED)

    def shifted(self, offset: int, origin: str = VALIDATED) -> 'SpecProperty':
        return SpecProperty(self.name, self.start + offset, self.value, self.period, origin, self.note)

    def canonical(self) -> dict:
        d = dict(name=self.name, start=self.start, period=self.period, origin=self.origin)
        if self.value is not None:
            d['value'] = str(self.value)
        return d


@dataclass(frozen=True)
class LogChannels(Dictable):
    """
    The three channels at index ``n``.

    ``q`` is ``None`` when ``q_n`` only exists in log scale. ``lam`` may have an infinite upper endpoint for indices
    past the representable range; ``mu`` is ``None`` when ``lam`` cannot be certified positive.
    """
    n: int
    lam: CertifiedScalar
    q: Optional[CertifiedScalar] = None
    mu: Optional[CertifiedScalar] = None

    @classmethod
    def from_q(cls, n: int, q: CertifiedScalar) -> 'LogChannels':
        return cls.from_lambda(n, -q.ln(), q=q)

    @classmethod
    def from_lambda(cls, n: int, lam: CertifiedScalar, q: CertifiedScalar = None,
                    mu: CertifiedScalar = None) -> 'LogChannels':
        if q is None and LogScaleValue(-lam).representable:
            q = LogScaleValue(-lam).to_certified()
        if mu is None and lam.certainly_positive():
            mu = lam.ln()
        return cls(n=n, lam=lam, q=q, mu=mu)

    @classmethod
    def from_mu(cls, n: int, mu: CertifiedScalar) -> 'LogChannels':
        return cls.from_lambda(n, mu.exp(), mu=mu)

    @property
    def log_scale(self) -> bool:
        return self.q is None

    @property
    def mu_nonpositive_possible(self) -> bool:
        """True when ``q_n >= 1/e`` cannot be excluded, i.e. ``ln ln(1/q_n) <= 0`` is possible."""
        return self.mu is None or not self.mu.certainly_positive()

    def q_hull(self) -> CertifiedScalar:
        """Sound enclosure of ``q_n`` even when it is log-scale only (then ``[0, exp(-lambda.lo)]``-style)."""
        return self.q if self.q is not None else (-self.lam).exp()

    def require_q(self) -> CertifiedScalar:
        if self.q is None:
            raise RepresentationOverflow(
                "q_n is only representable in log scale, use eval_log_channels", n=self.n, lam=str(self.lam)
            )
        return self.q


def _as_fraction(value, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SpecParseError(f"{what} must be a decimal or p/q string", literal=value)
    try:
        return Fraction(value.strip() if isinstance(value, str) else value)
    except ZeroDivisionError:
        raise SpecParseError(f"zero denominator in {what}", literal=value)
    except ValueError:
        raise SpecParseError(f"cannot parse {what} (expected decimal or p/q)", literal=value)


def _unit_fraction(value, what: str) -> Fraction:
    frac = _as_fraction(value, what)
    if not (0 < frac < 1):
        raise ParameterOutOfRange(f"{what} must lie in the open interval (0, 1)", value=value)
    return frac


class ClosedForm:
    """
    Restricted arithmetic expression in the index ``n``, evaluated on certified scalars.

    Grammar: ``n``, numeric literals, ``+ - * / ^ **``, unary minus, parentheses, ``exp``, ``ln``/``log``, ``sqrt`` and
    the constants ``e`` and ``pi``. Anything else raises :class:`.SpecParseError` at parse time.

        >>> f = ClosedForm('1/(n+1)^2')
        >>> f(1, 64).contains('1/4')
        True

    """
    FUNCTIONS = dict(exp='exp', ln='ln', log='ln', sqrt='sqrt')
    BINOPS = {ast.Add: '__add__', ast.Sub: '__sub__', ast.Mult: '__mul__', ast.Div: '__truediv__'}

    def __init__(self, text: str):
        if not isinstance(text, str) or empty(text):
            raise SpecParseError("closed form expression must be a non-empty string", literal=text)
        self.text = text
        self._source = text.replace('^', '**')
        try:
            tree = ast.parse(self._source, mode='eval')
        except SyntaxError as ex:
            raise SpecParseError("closed form expression does not parse", expression=text, error=ex.msg)
        self._fn = self._compile(tree.body)

    def __call__(self, n: int, precision_bits: int) -> CertifiedScalar:
        return self._fn(n, precision_bits)

    def _compile(self, node) -> Callable[[int, int], CertifiedScalar]:
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise SpecParseError("only numeric literals are allowed", expression=self.text)
            literal = Fraction(ast.get_source_segment(self._source, node))
            return lambda n, p: from_fraction(literal, p)
        if isinstance(node, ast.Name):
            if node.id == 'n':
                return lambda n, p: make_certified(n, p)
            if node.id == 'e':
                return lambda n, p: e(p)
            if node.id == 'pi':
                return lambda n, p: pi(p)
            raise SpecParseError("unknown name in closed form", expression=self.text, name=node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = self._compile(node.operand)
            if isinstance(node.op, ast.UAdd):
                return inner
            return lambda n, p: -inner(n, p)
        if isinstance(node, ast.BinOp):
            left, right = self._compile(node.left), self._compile(node.right)
            if isinstance(node.op, ast.Pow):
                return self._compile_pow(node, left, right)
            method = self.BINOPS.get(type(node.op))
            if method is None:
                raise SpecParseError("operator not allowed in closed form", expression=self.text)
            return lambda n, p: getattr(left(n, p), method)(right(n, p))
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in self.FUNCTIONS:
                raise SpecParseError("function not allowed in closed form", expression=self.text)
            if len(node.args) != 1 or node.keywords:
                raise SpecParseError("closed form functions take exactly one argument", expression=self.text)
            fn = STD_FUNCTIONS[self.FUNCTIONS[node.func.id]]
            arg = self._compile(node.args[0])
            return lambda n, p: fn(arg(n, p))
        raise SpecParseError("construct not allowed in closed form", expression=self.text, node=type(node).__name__)

    @staticmethod
    def _compile_pow(node: ast.BinOp, left, right):
        exponent = node.right
        if isinstance(exponent, ast.UnaryOp) and isinstance(exponent.op, ast.USub) \
                and isinstance(exponent.operand, ast.Constant) and isinstance(exponent.operand.value, int):
            k = -exponent.operand.value
            return lambda n, p: left(n, p) ** k
        if isinstance(exponent, ast.Constant) and isinstance(exponent.value, int) \
                and not isinstance(exponent.value, bool):
            k = exponent.value
            return lambda n, p: left(n, p) ** k
        return lambda n, p: (right(n, p) * left(n, p).ln()).exp()

    def __repr__(self):
        return f"ClosedForm({self.text!r})"


@dataclass(frozen=True)
class SequenceSpec(Dictable):
    """
    Parsed sequence spec. Build one with :func:`.parse_spec` / :func:`.load_spec` rather than directly.

    ``parameters`` holds the family parameters as exact fractions (``values`` for explicit lists) or
    :class:`.ClosedForm` objects (user closed forms).
    """
    family: str
    parameters: Dict[str, object] = field(default_factory=dict)
    tail: Optional['SequenceSpec'] = None
    certified_properties: Tuple[SpecProperty, ...] = ()

    # --- evaluation ----------------------------------------------------------------------------------------------

    def channels(self, n: int, precision_bits: int = None) -> LogChannels:
        prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
        if n < 1:
            raise IndexOutOfRange("sequence indices start at 1", n=n)
        return _FAMILY_CHANNELS[self.family](self, n, prec)

    def q(self, n: int, precision_bits: int = None) -> CertifiedScalar:
        return self.channels(n, precision_bits).require_q()

    def criterion(self, n: int, precision_bits: int = None) -> Optional[CertifiedScalar]:
        """
        Enclosure of ``a_n = q_n * ln ln(1/q_{n+1})``; ``None`` when ``mu_{n+1}`` is undefined.
        Families with a closed form for ``a_n`` use it directly.
        """
        prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
        closed = _FAMILY_CRITERION.get(self.family)
        if closed is not None:
            value = closed(self, n, prec)
            if value is not None:
                return value
        here, after = self.channels(n, prec), self.channels(n + 1, prec)
        if after.mu is None:
            return None
        if here.q is not None:
            return here.q * after.mu
        if after.mu.certainly_positive():
            # q_n is log-scale only: a_n = exp(ln mu_{n+1} - lambda_n)
            return LogScaleValue(after.mu.ln() - here.lam).to_hull()
        return here.q_hull() * after.mu

    # --- properties ----------------------------------------------------------------------------------------------

    def find_property(self, name: str, certified_only: bool = True) -> Optional[SpecProperty]:
        for prop in self.certified_properties:
            if prop.name == name and (prop.certified or not certified_only):
                return prop
        return None

    @property
    def monotone_decreasing(self) -> Optional[SpecProperty]:
        return self.find_property(MONOTONE)

    @property
    def monotone_from_start(self) -> bool:
        """Whether the monotone certificate covers the whole sequence (needed for index-uniform atanh bounds)."""
        prop = self.monotone_decreasing
        return prop is not None and prop.start <= 1

    # --- identity ------------------------------------------------------------------------------------------------

    def canonical(self) -> dict:
        doc = dict(family=self.family)
        for k, v in sorted(self.parameters.items()):
            if isinstance(v, (list, tuple)):
                doc[k] = [str(x) for x in v]
            elif isinstance(v, ClosedForm):
                doc[k] = v.text
            else:
                doc[k] = str(v)
        if self.tail is not None:
            doc['tail'] = self.tail.canonical()
        doc['properties'] = [p.canonical() for p in self.certified_properties]
        return doc

    def digest(self, precision_bits: int) -> str:
        """sha256 over the canonical spec document and the run precision."""
        payload = json.dumps(self.canonical(), sort_keys=True, separators=(',', ':'))
        payload += f"|precision_bits={precision_bits}"
        return hashlib.sha256(payload.encode('utf-8')).hexdigest()

    def __str__(self):
        return json.dumps(self.canonical(), sort_keys=True)


#####
# Family channel evaluators
#####

def _constant_channels(spec: SequenceSpec, n: int, prec: int) -> LogChannels:
    return LogChannels.from_q(n, from_fraction(spec.parameters['q'], prec))


def _alternating_channels(spec: SequenceSpec, n: int, prec: int) -> LogChannels:
    if n % 2 == 1:
        return LogChannels.from_q(n, make_certified('1/2', prec))
    # q_n = 2^-n exactly, lambda_n = n ln 2
    return LogChannels.from_lambda(n, ln2(prec) * n, q=from_fraction(Fraction(1, 2 ** n), prec))


def _iterated_steps(q1: Fraction, n: int, prec: int) -> LogChannels:
    """Run the recursion mu_{k+1} = ln(k) * exp(lambda_k), lambda = exp(mu), q = exp(-lambda) up to index n."""
    current = LogChannels.from_q(1, from_fraction(q1, prec))
    for k in range(1, n):
        ln_k = make_certified(k, prec).ln()
        mu_next = ln_k * current.lam.exp()
        current = LogChannels.from_mu(k + 1, mu_next)
    return current


def _iterated_channels(spec: SequenceSpec, n: int, prec: int) -> LogChannels:
    return _iterated_steps(spec.parameters['q1'], n, prec)


def _iterated_criterion(spec: SequenceSpec, n: int, prec: int) -> Optional[CertifiedScalar]:
    # q_n * mu_{n+1} = q_n * (1/q_n) * ln n
    return make_certified(n, prec).ln()


def _explicit_channels(spec: SequenceSpec, n: int, prec: int) -> LogChannels:
    values = spec.parameters['values']
    if n <= len(values):
        return LogChannels.from_q(n, from_fraction(values[n - 1], prec))
    inner = spec.tail.channels(n - len(values), prec)
    return LogChannels(n=n, lam=inner.lam, q=inner.q, mu=inner.mu)


def _explicit_criterion(spec: SequenceSpec, n: int, prec: int) -> Optional[CertifiedScalar]:
    size = len(spec.parameters['values'])
    if n > size and spec.tail.family in _FAMILY_CRITERION:
        return spec.tail.criterion(n - size, prec)
    return None


def _user_channels(spec: SequenceSpec, n: int, prec: int) -> LogChannels:
    q_form, lam_form = spec.parameters['q'], spec.parameters.get('log_inverse')
    try:
        q = q_form(n, prec)
        if lam_form is not None:
            return LogChannels.from_lambda(n, lam_form(n, prec), q=q if q.certainly_positive() else None)
        if q.certainly_positive():
            return LogChannels.from_q(n, q)
        # underflowed to [0, tiny]: lambda keeps a finite lower end and an infinite upper end
        return LogChannels.from_lambda(n, -q.ln())
    except DomainError as ex:
        raise ParameterOutOfRange("closed form leaves its real domain", n=n, error=str(ex))


_FAMILY_CHANNELS: Dict[str, Callable[[SequenceSpec, int, int], LogChannels]] = {
    'constant': _constant_channels,
    'alternating_half_power': _alternating_channels,
    'iterated_exponential': _iterated_channels,
    'explicit_with_tail': _explicit_channels,
    'user_closed_form': _user_channels,
}

_FAMILY_CRITERION = {
    'iterated_exponential': _iterated_criterion,
    'explicit_with_tail': _explicit_criterion,
}


#####
# Property checks
#####

def _certainly_not_increasing(a: LogChannels, b: LogChannels) -> Optional[bool]:
    """
    ``True`` if ``q_b <= q_a`` is certified, ``False`` if ``q_b > q_a`` is certified, ``None`` if the enclosures are
    too wide to tell (lambda grows when q shrinks; mu breaks ties once lambda overflows).
    """
    if b.lam.certainly_ge(a.lam):
        return True
    if b.lam.certainly_lt(a.lam):
        return False
    if a.mu is not None and b.mu is not None:
        if b.mu.certainly_ge(a.mu):
            return True
        if b.mu.certainly_lt(a.mu):
            return False
    return None


def check_monotone(spec: SequenceSpec, start: int, horizon: int, precision_bits: int) -> int:
    """
    Prefix-check ``q_{n+1} <= q_n`` for ``start <= n < horizon``. Raises :class:`.ParameterOutOfRange` on a certified
    violation and returns the number of pairs that could be certified.
    """
    checked, prev = 0, spec.channels(start, precision_bits)
    for n in range(start + 1, horizon + 1):
        cur = spec.channels(n, precision_bits)
        verdict = _certainly_not_increasing(prev, cur)
        if verdict is False:
            raise ParameterOutOfRange(
                "declared monotone_decreasing property is refuted", family=spec.family, index=n
            )
        if verdict:
            checked += 1
        prev = cur
    log.debug("monotone prefix check for %s: %d of %d pairs certified", spec.family, checked, horizon - start)
    return checked


def check_recurrent(spec: SequenceSpec, prop: SpecProperty, horizon: int, precision_bits: int) -> int:
    bound = from_fraction(prop.value, precision_bits)
    checked = 0
    for n in range(prop.start, horizon + 1, prop.period):
        q = spec.channels(n, precision_bits).q_hull()
        if q.certainly_lt(bound):
            raise ParameterOutOfRange(
                "declared recurrent_lower_bound property is refuted", family=spec.family, index=n, value=str(prop.value)
            )
        checked += 1
    return checked


def validate_range(spec: SequenceSpec, horizon: int, precision_bits: int):
    """Check ``0 < q_n < 1`` over the prefix ``n <= horizon`` as interval statements."""
    for n in range(1, horizon + 1):
        ch = spec.channels(n, precision_bits)
        if not ch.lam.certainly_positive():
            raise ParameterOutOfRange("q_n cannot be certified below 1", family=spec.family, index=n, lam=str(ch.lam))
        if not ch.lam.is_finite and ch.q is None:
            raise ParameterOutOfRange("q_n cannot be certified above 0", family=spec.family, index=n)


#####
# Parsing
#####

def _index_field(item: dict, key: str) -> int:
    value = item.get(key, 1)
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SpecParseError(f"property '{key}' must be an integer", prop=item)
    try:
        return int(value)
    except ValueError:
        raise SpecParseError(f"property '{key}' must be an integer", prop=item)


def _parse_declared(raw) -> List[SpecProperty]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise SpecParseError("'properties' must be a list")
    out = []
    for item in raw:
        if isinstance(item, str):
            item = dict(name=item)
        if not isinstance(item, dict) or item.get('name') not in PROPERTY_NAMES:
            raise SpecParseError("unknown property", prop=item, known=', '.join(PROPERTY_NAMES))
        start, period = _index_field(item, 'start'), _index_field(item, 'period')
        if start < 1 or period < 1:
            raise ParameterOutOfRange("property start and period must be >= 1", prop=item)
        value = item.get('value')
        if item['name'] == RECURRENT:
            if value is None:
                raise SpecParseError("recurrent_lower_bound needs a 'value'", prop=item)
            value = _unit_fraction(value, 'recurrent_lower_bound value')
        out.append(SpecProperty(item['name'], start, value, period, DECLARED))
    return out


def _builtin_properties(family: str, params: dict, prec: int) -> List[SpecProperty]:
    if family == 'constant':
        return [
            SpecProperty(MONOTONE, 1, note='constant sequence'),
            SpecProperty(RECURRENT, 1, params['q'], 1, note='every index'),
        ]
    if family == 'alternating_half_power':
        return [SpecProperty(RECURRENT, 1, Fraction(1, 2), 2, note='odd indices are 1/2')]
    if family == 'iterated_exponential':
        # q_2 = 1/e for every q1, so the sequence decreases from index 1 exactly when q1 > 1/e
        start = 1 if from_fraction(params['q1'], prec).certainly_gt(make_certified(-1, prec).exp()) else 2
        return [
            SpecProperty(MONOTONE, start, note='lambda_{n+1} = n^(1/q_n) increases'),
            SpecProperty(DIVERGENT, 2, note='a_n = ln n'),
        ]
    return []


def _tail_properties(values: List[Fraction], tail: SequenceSpec, prec: int) -> List[SpecProperty]:
    size = len(values)
    out = []
    for prop in tail.certified_properties:
        if not prop.certified:
            continue
        shifted = prop.shifted(size)
        if prop.name == MONOTONE and prop.start <= 1:
            prefix_ok = all(b <= a for a, b in zip(values, values[1:]))
            first_tail = tail.channels(1, prec).q_hull()
            if prefix_ok and first_tail.certainly_le(from_fraction(values[-1], prec)):
                shifted = SpecProperty(MONOTONE, 1, origin=VALIDATED, note='prefix, boundary and tail checked')
        out.append(shifted)
    return out


def _parse_family(doc: dict, prec: int) -> SequenceSpec:
    if not isinstance(doc, dict):
        raise SpecParseError("spec must be a JSON object")
    family = doc.get('family')
    if family not in FAMILIES:
        raise UnknownFamily("unknown sequence family", family=family, known=', '.join(FAMILIES))
    params, tail = {}, None

    if family == 'constant':
        if 'q' not in doc:
            raise SpecParseError("constant family needs 'q'")
        params['q'] = _unit_fraction(doc['q'], 'q')
    elif family == 'iterated_exponential':
        params['q1'] = _unit_fraction(doc.get('q1', '1/2'), 'q1')
    elif family == 'explicit_with_tail':
        values = doc.get('values')
        if not isinstance(values, list) or len(values) == 0:
            raise SpecParseError("explicit_with_tail needs a non-empty 'values' list")
        params['values'] = [_unit_fraction(v, 'explicit value') for v in values]
        if doc.get('tail') is None:
            raise TailRuleMissing("tail rule required for explicit value lists", values=len(values))
        tail = _parse_family(doc["tail"], prec)
    elif family == 'user_closed_form':
        if 'q' not in doc:
            raise SpecParseError("user_closed_form needs a 'q' expression")
        params['q'] = ClosedForm(doc['q'])
        if doc.get('log_inverse') is not None:
            params['log_inverse'] = ClosedForm(doc['log_inverse'])

    props = _builtin_properties(family, params, prec)
    if family == 'explicit_with_tail':
        props += _tail_properties(params['values'], tail, prec)
    spec = SequenceSpec(family=family, parameters=params, tail=tail, certified_properties=tuple(props))
    declared = _parse_declared(doc.get('properties'))
    if family == 'user_closed_form':
        validate_range(spec, settings.VALIDATION_HORIZON, prec)
    return _attach_declared(spec, declared, prec)


def _attach_declared(spec: SequenceSpec, declared: List[SpecProperty], prec: int) -> SequenceSpec:
    horizon = settings.VALIDATION_HORIZON
    # builtin certificates are prefix-checked once before they are trusted
    for prop in spec.certified_properties:
        if prop.name == MONOTONE and spec.family == 'iterated_exponential':
            check_monotone(spec, prop.start, horizon, prec)
    for prop in declared:
        if prop.name == MONOTONE:
            check_monotone(spec, prop.start, horizon, prec)
        elif prop.name == RECURRENT:
            check_recurrent(spec, prop, horizon, prec)
        log.debug("declared property %s on %s kept as declared-only", prop.name, spec.family)
    if not declared:
        return spec
    return SequenceSpec(
        family=spec.family, parameters=spec.parameters, tail=spec.tail,
        certified_properties=spec.certified_properties + tuple(declared)
    )


def parse_spec(text: Union[str, dict], precision_bits: int = None) -> SequenceSpec:
    """
    Parse a JSON spec document (text or already-decoded dict) into a range-checked :class:`.SequenceSpec`.

        >>> spec = parse_spec('{"family": "constant", "q": "1/2"}')
        >>> spec.q(7, 64).to_decimal_pair(3)
        ('0.5', '0.5')

    :raises UnknownFamily: family name not recognised
    :raises ParameterOutOfRange: a parameter is outside ``(0, 1)`` or a declared property is refuted
    :raises TailRuleMissing: explicit value list without a ``tail``
    :raises SpecParseError: malformed document
    """
    prec = settings.PRECISION_BITS if precision_bits is None else precision_bits
    doc = decode_spec_document(text) if isinstance(text, str) else text
    spec = _parse_family(doc, prec)
    log.debug("parsed spec %s", spec)
    return spec


def load_spec(path: str, precision_bits: int = None) -> SequenceSpec:
    return parse_spec(read_spec_document(path), precision_bits)


def eval_q(spec: SequenceSpec, n: int, precision_bits: int = None) -> CertifiedScalar:
    """Enclosure of ``q_n``. Raises :class:`.RepresentationOverflow` when ``q_n`` is log-scale only."""
    return spec.q(n, precision_bits)


def eval_log_channels(spec: SequenceSpec, n: int, precision_bits: int = None) -> LogChannels:
    return spec.channels(n, precision_bits)
