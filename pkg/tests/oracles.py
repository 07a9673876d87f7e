"""
Independent floating point references computed with plain mpmath at high precision.

The slit oracle integrates the Schwarz-Christoffel map ``w(t) = int dt / sqrt((1 - t^2)(1 - k^2 t^2))``, which takes
the upper half-plane onto a rectangle whose side lengths are ``L1 = int_0^1 |w'|`` and ``L2 = int_1^{1/k} |w'|``.
The ring complementary to ``[-1, -k] u [k, 1]`` has modulus ``L1 / L2`` in the ``ln(R) / (2 pi)`` normalization.
"""
from mpmath import mp


def sc_side_lengths(k):
    k = mp.mpf(k)
    l1 = mp.quad(lambda t: 1 / mp.sqrt((1 - t ** 2) * (1 - k ** 2 * t ** 2)), [0, 1])
    l2 = mp.quad(lambda t: 1 / mp.sqrt((t ** 2 - 1) * (1 - k ** 2 * t ** 2)), [1, 1 / k])
    return l1, l2


def cross_ratio(a, b, c, d):
    a, b, c, d = (mp.mpf(x) for x in (a, b, c, d))
    return (b - a) * (d - c) / ((c - a) * (d - b))


def sc_two_slit_modulus(a, b, c, d):
    """Modulus of the sphere minus ``[a, b] u [c, d]`` through the rectangle side ratio."""
    s = mp.sqrt(cross_ratio(a, b, c, d))
    k = (1 - s) / (1 + s)
    l1, l2 = sc_side_lengths(k)
    return l1 / l2


def sc_outer_slit_modulus(a, b, c, d):
    """Modulus of the ring between ``[b, c]`` and ``[d, inf] u [-inf, a]``."""
    a, b, c, d = (mp.mpf(x) for x in (a, b, c, d))
    s = mp.sqrt((c - b) * (d - a) / ((d - b) * (c - a)))
    k = (1 - s) / (1 + s)
    l1, l2 = sc_side_lengths(k)
    return l1 / l2


def series_K(k, terms: int = 30):
    """``K(k) = pi/2 * sum_m ((2m)! / (4^m m!^2))^2 k^(2m)``."""
    k = mp.mpf(k)
    total = mp.mpf(0)
    for m in range(terms):
        coeff = mp.factorial(2 * m) / (4 ** m * mp.factorial(m) ** 2)
        total += coeff ** 2 * k ** (2 * m)
    return mp.pi / 2 * total


def atanh_upper(q):
    return mp.pi ** 2 / mp.atanh(mp.mpf(q))


def collar_lower(q):
    q = mp.mpf(q)
    x = mp.pi ** 2 / mp.log((1 + q) / (2 * q))
    return 2 * mp.asinh(1 / mp.sinh(x / 2))


def round_annulus_length(r1, r2):
    return mp.pi / (mp.log(mp.mpf(r2) / mp.mpf(r1)) / (2 * mp.pi))


def encloses(x, value, tol: float = 0.0) -> bool:
    """``value`` (anything mpmath accepts) lies in the enclosure ``x`` widened by ``tol``."""
    v = mp.mpf(value)
    return x.lower - tol <= v <= x.upper + tol
