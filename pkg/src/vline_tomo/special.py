"""Gegenbauer polynomials normalized to one at ``x = 1``.

With ``c_n = C_n^mu / C_n^mu(1)`` the classical three-term recurrence becomes

    c_0 = 1,  c_1 = x,
    c_{n+1} = (2 (n + mu) x c_n - n c_{n-1}) / (n + 2 mu),

which stays finite at ``mu = 0`` and reduces to the Chebyshev recurrence
there.  Values for ``mu = 0`` are taken from ``cos(l * arccos x)`` directly;
derivatives always come from the differentiated recurrence.
"""

import numpy as np
from scipy.special import gamma


def _check_args(degree, mu, x):
    if degree < 0 or int(degree) != degree:
        raise ValueError(f"degree must be a nonnegative integer, got {degree!r}")
    if mu < 0:
        raise ValueError(f"index mu must be nonnegative, got {mu!r}")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("Gegenbauer argument outside [-1, 1]")
    return int(degree), float(mu), x


def _recurrence(degree, mu, x, order):
    """Normalized polynomial and its first ``order`` derivatives."""
    c_prev = np.ones_like(x)
    c = x.copy()
    d_prev = np.zeros_like(x)
    d = np.ones_like(x)
    dd_prev = np.zeros_like(x)
    dd = np.zeros_like(x)
    if degree == 0:
        return c_prev, d_prev, dd_prev
    for n in range(1, degree):
        a = 2.0 * (n + mu) / (n + 2.0 * mu)
        b = n / (n + 2.0 * mu)
        c_next = a * x * c - b * c_prev
        if order >= 1:
            d_next = a * (c + x * d) - b * d_prev
            if order >= 2:
                dd_next = a * (2.0 * d + x * dd) - b * dd_prev
                dd_prev, dd = dd, dd_next
            d_prev, d = d, d_next
        c_prev, c = c, c_next
    return c, d, dd


def gegenbauer(degree, mu, x):
    """Evaluate ``C_degree^mu(x)`` normalized so that ``C(1) = 1``.

    Parameters
    ----------
    degree : int
        Polynomial degree ``l >= 0``.
    mu : float
        Index ``mu >= 0``; in ``n`` dimensions the kernels use ``mu = (n - 2) / 2``.
        ``mu = 0`` gives Chebyshev polynomials, ``mu = 1/2`` Legendre.
    x : float or array_like
        Points in ``[-1, 1]``.

    Raises
    ------
    ValueError
        If any ``|x| > 1``.
    """
    degree, mu, xa = _check_args(degree, mu, x)
    if mu == 0.0:
        out = np.cos(degree * np.arccos(xa))
    else:
        out = _recurrence(degree, mu, xa, 0)[0]
        # the recurrence drifts by a few ulps; the endpoints are known exactly
        ends = np.abs(xa) == 1.0
        if ends.any():
            out = np.where(ends, np.sign(xa) ** degree, out)
    return out if out.ndim else float(out)


def gegenbauer_deriv(degree, mu, x, order=1):
    """First or second derivative of the normalized Gegenbauer polynomial.

    Computed from the differentiated recurrence (no finite differences), so it
    is valid on the closed interval for every ``mu >= 0``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    degree, mu, xa = _check_args(degree, mu, x)
    _, d, dd = _recurrence(degree, mu, xa, order)
    out = d if order == 1 else dd
    return out if out.ndim else float(out)


def sphere_area(dim):
    """Surface area of the unit sphere ``S^dim`` in ``R^(dim+1)``.

    ``sphere_area(0) == 2`` counts the two points of ``S^0``.
    """
    k = dim + 1
    return 2.0 * np.pi ** (k / 2.0) / gamma(k / 2.0)
