"""Independent reference implementations used only by tests."""

import math
from fractions import Fraction

from scipy import integrate


def brute_force_index(values):
    """Scan every k in 0..n and keep the largest with >= k values >= k."""
    best = 0
    for k in range(len(values) + 1):
        if sum(1 for v in values if v >= k) >= k:
            best = k
    return best


def naive_pearson(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    vx = sum((a - mx) ** 2 for a in x)
    vy = sum((b - my) ** 2 for b in y)
    return cov / math.sqrt(vx * vy)


def exact_pearson_squared(x, y):
    """rho^2 and the sign of rho as exact rationals."""
    x = [Fraction(v) for v in x]
    y = [Fraction(v) for v in y]
    n = len(x)
    mx, my = sum(x) / n, sum(y) / n
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    vx = sum((a - mx) ** 2 for a in x)
    vy = sum((b - my) ** 2 for b in y)
    return cov * cov / (vx * vy), (cov > 0) - (cov < 0)


def t_density(x, df):
    log_c = math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    return math.exp(log_c - (df + 1) / 2 * math.log1p(x * x / df))


def integrated_two_tailed_p(t, df):
    """2 * integral of the t density from |t| to infinity, by quadrature."""
    t = abs(t)
    # split the range so quad sees the bulk of the mass
    head, _ = integrate.quad(t_density, t, t + 50, args=(df,), epsabs=1e-14, epsrel=1e-12, limit=200)
    tail, _ = integrate.quad(t_density, t + 50, math.inf, args=(df,), epsabs=1e-14, limit=200)
    return 2 * (head + tail)


def weighted_sum(counts, weights):
    return sum(Fraction(weights[k]) * n for k, n in counts.items())
