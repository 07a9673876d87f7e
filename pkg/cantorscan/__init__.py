"""

Using cantorscan within apps
----------------------------

**Sequence specs**

A generalized Cantor set ``E(q_1, q_2, ...)`` is described by a spec document. Built-in families take their
parameters as exact decimal or ``p/q`` strings::

    >>> from cantorscan import parse_spec
    >>> spec = parse_spec('{"family": "constant", "q": "1/2"}')
    >>> spec.q(3, 128).to_decimal_pair(3)
    ('0.5', '0.5')
    >>> spec.monotone_from_start
    True

Every number the library hands back is a :class:`.CertifiedScalar` - a closed interval guaranteed to contain the
true value. Values too large for a plain enclosure (``q_4`` of the iterated exponential family is roughly
``exp(-10^343)``) are carried through their logarithms instead, see :class:`.LogChannels`.

**Cantor levels and curve lengths**

    >>> from cantorscan import build_levels, curve_bounds, CurveId
    >>> tree = build_levels(spec, 2, 128)
    >>> [x.to_decimal_pair(3) for x in tree.interval(1, 2)]
    [('0.75', '0.75'), ('1', '1')]
    >>> lb = curve_bounds(spec, tree, CurveId(1, 1), 128)
    >>> lb.lower_method, lb.upper_method
    ('collar', 'two_slit')

**Classification**

    >>> from cantorscan import classify, effective_level
    >>> classify(spec, horizon=32).verdict
    'Uncountable'
    >>> it = parse_spec('{"family": "iterated_exponential", "q1": "1/2"}')
    >>> effective_level(it, K='2', horizon=6).N
    4

**Command line**

See ``python -m cantorscan -h``.

"""
from cantorscan.exceptions import *
from cantorscan.numerics import CertifiedScalar, LogScaleValue, make_certified, exact
from cantorscan.seqspec import (
    SequenceSpec, SpecProperty, LogChannels, parse_spec, load_spec, eval_q, eval_log_channels, FAMILIES
)
from cantorscan.cantor import CantorTree, CantorLevel, LevelGeometry, build_levels, level_geometry, interval, gaps
from cantorscan.conformal import (
    RingModulus, agm, elliptic_K, grotzsch_mu, round_annulus_modulus, two_slit_modulus, outer_slit_modulus,
    symmetric_gap_modulus, core_length
)
from cantorscan.hyperbolic import (
    CurveId, LengthBounds, PantsGeometry, MobiusTrans, collar_eta, upper_bound_atanh, lower_bound_collar,
    annulus_upper_bound, curve_bounds, uniform_bounds, hexagon_seam, pants_seam_distance, geodesic_distance,
    pants_geometry
)
from cantorscan.classify import (
    ClassificationReport, ThresholdReport, check_uncountable, check_countable, classify, short_geodesic_census,
    wolpert_range, dehn_twist_min_dilatation, half_twist_obstruction, crossing_contradiction, threshold_n1,
    threshold_n2, effective_level, length_ratio_trace, certified_increase,
    ratio_through_criterion
)
