"""Lambert W on the nonnegative reals and the closed-form rate functions built on it.

Every rate is per vertex and in nats. Formulas that are 0/0 at a single point
(``x = 2`` for the lower-bound rate and the occupancy right-hand side,
``d = 1`` for Shearer's rate) are evaluated there through a short Taylor
expansion inside a window of half-width ``SEAM_WINDOW``.
"""

import math

SEAM_WINDOW = 1e-4
# f' loses digits as eps / (x-2)^2 near the pole, so its expansion covers a wider window
DERIV_SEAM_WINDOW = 1e-3

_HALLEY_MAX_ITER = 50
_HALLEY_STEP_TOL = 1e-15


def lambert_w(x):
    """Principal branch of the Lambert W function for ``x >= 0``.

    Returns the unique ``w >= 0`` with ``w * exp(w) == x``, found by Halley
    iteration from ``log(1 + x)`` (small x) or ``log x - log log x`` (x >= e).
    """
    x = float(x)
    if x < 0 or math.isnan(x):
        raise ValueError(f"lambert_w is defined here only for x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x < math.e:
        w = math.log1p(x)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    for _ in range(_HALLEY_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= _HALLEY_STEP_TOL * (1.0 + abs(w)):
            break
    return w


def lambert_w_prime(y):
    """Derivative W'(y) = W(y) / (y (1 + W(y))), with W'(0) = 1."""
    if y == 0:
        return 1.0
    w = lambert_w(y)
    return w / (y * (1.0 + w))


def c_lambda(lam):
    """The constant ``W(2 lam) + W(2 lam)**2 / 2`` that cancels the pole of ``f_lambda`` at 2."""
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam!r}")
    w = lambert_w(2.0 * lam)
    return w + 0.5 * w * w


# Derivatives at x of h(x) = W(lam x) + W(lam x)^2 / 2, written in u = W(lam x).
# h' = u/x and every higher derivative is a rational function of u over x^k.

def _h_derivs(u, x):
    up1 = u + 1.0
    return (
        u / x,
        -u**2 / (x**2 * up1),
        u**3 * (2 * u + 3) / (x**3 * up1**3),
        -(u**4) * (6 * u**2 + 19 * u + 16) / (x**4 * up1**5),
        u**5 * (24 * u**3 + 118 * u**2 + 204 * u + 125) / (x**5 * up1**7),
    )


# Derivatives at x of W(lam x), again in u = W(lam x).

def _u_derivs(u, x):
    up1 = u + 1.0
    return (
        u / (x * up1),
        -u**2 * (u + 2) / (x**2 * up1**3),
        u**3 * (2 * u**2 + 8 * u + 9) / (x**3 * up1**5),
        -(u**4) * (6 * u**3 + 36 * u**2 + 79 * u + 64) / (x**4 * up1**7),
    )


def f_lambda(lam, x):
    """Lower-bound rate ``(W(lam x) + W(lam x)^2/2 - c_lam) / (x - 2)``.

    This is also the per-vertex lower bound on ``log Z_G(lam)`` for a
    triangle-free graph of average degree ``x``.
    """
    if lam < 0 or x < 0:
        raise ValueError(f"f_lambda needs lam >= 0 and x >= 0, got ({lam!r}, {x!r})")
    if lam == 0:
        return 0.0
    t = x - 2.0
    if abs(t) < SEAM_WINDOW:
        u2 = lambert_w(2.0 * lam)
        h1, h2, h3, h4, _ = _h_derivs(u2, 2.0)
        return h1 + t * (h2 / 2 + t * (h3 / 6 + t * h4 / 24))
    u = lambert_w(lam * x)
    return (u + 0.5 * u * u - c_lambda(lam)) / t


def f_lambda_prime(lam, x):
    """Closed-form derivative ``m_lam(x) / (x (x-2)^2)`` of :func:`f_lambda` in ``x``."""
    if lam == 0:
        return 0.0
    c = c_lambda(lam)
    if x == 0:
        return (c - 2.0 * lam) / 4.0
    t = x - 2.0
    if abs(t) < DERIV_SEAM_WINDOW:
        u2 = lambert_w(2.0 * lam)
        _, h2, h3, h4, h5 = _h_derivs(u2, 2.0)
        return h2 / 2 + t * (h3 / 3 + t * (h4 / 8 + t * h5 / 30))
    u = lambert_w(lam * x)
    m = c * x - 0.5 * x * u * u - 2.0 * u
    return m / (x * t * t)


def upper_rate_phi(lam, d):
    """Upper envelope from the random-graph construction.

    ``(W(lam d)^2 + 2 W(lam d)) / (2d)`` when ``log lam <= d``, otherwise
    ``1 - d/2 + log lam``.
    """
    if d <= 0:
        raise ValueError(f"upper_rate_phi needs d > 0, got {d!r}")
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam!r}")
    if lam == 0 or math.log(lam) <= d:
        w = lambert_w(lam * d)
        return (w * w + 2.0 * w) / (2.0 * d)
    return 1.0 - 0.5 * d + math.log(lam)


def shearer_rate(d):
    """Shearer's rate ``(d log d - d + 1) / (d - 1)^2`` with f(0) = 1 and f(1) = 1/2."""
    if d < 0:
        raise ValueError(f"shearer_rate needs d >= 0, got {d!r}")
    if d == 0:
        return 1.0
    t = d - 1.0
    if abs(t) < SEAM_WINDOW:
        # sum_{k>=2} (-1)^k t^(k-2) / (k (k-1))
        return 0.5 + t * (-1 / 6 + t * (1 / 12 + t * (-1 / 20 + t / 30)))
    return ((1.0 + t) * math.log1p(t) - t) / (t * t)


def shearer_rate_prime(d):
    """Derivative ``(2(d-1) - (d+1) log d) / (d-1)^3``; diverges to -inf at d = 0."""
    if d < 0:
        raise ValueError(f"shearer_rate_prime needs d >= 0, got {d!r}")
    if d == 0:
        return -math.inf
    t = d - 1.0
    if abs(t) < SEAM_WINDOW:
        return -1 / 6 + t * (1 / 6 + t * (-3 / 20 + t * (2 / 15)))
    return (2.0 * t - (2.0 + t) * math.log1p(t)) / (t * t * t)


def shearer_sharpness_eta(d):
    """Root ``2 W(e d / 2) / d`` of ``d/2 = log(e/eta)/eta``; an upper rate for alpha(G)/n."""
    if d < 2:
        raise ValueError(f"shearer_sharpness_eta needs d >= 2, got {d!r}")
    return 2.0 * lambert_w(math.e * d / 2.0) / d


def conjecture_rhs(lam, d):
    """Per-vertex right-hand side ``(W(lam d) - W(2 lam)) / (d - 2)`` of the occupancy conjecture."""
    if lam <= 0:
        raise ValueError(f"conjecture_rhs needs lam > 0, got {lam!r}")
    if d < 0:
        raise ValueError(f"conjecture_rhs needs d >= 0, got {d!r}")
    t = d - 2.0
    if abs(t) < SEAM_WINDOW:
        u1, u2, u3, u4 = _u_derivs(lambert_w(2.0 * lam), 2.0)
        return u1 + t * (u2 / 2 + t * (u3 / 6 + t * u4 / 24))
    return (lambert_w(lam * d) - lambert_w(2.0 * lam)) / t


def lower_rate_at_zero_degree(lam):
    """``f_lambda(lam, 0) = c_lam / 2``, the edgeless specialization of the lower bound."""
    return 0.5 * c_lambda(lam)
