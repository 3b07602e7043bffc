"""Pearson correlation with listwise deletion and two-tailed significance marks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional, Sequence


class StatsError(ValueError):
    pass


@dataclass(frozen=True)
class VariableSeries:
    name: str
    values: tuple[Optional[float], ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class Significance:
    p_value: float
    stars: str


@dataclass(frozen=True)
class CorrelationReport:
    """Square correlation matrix; undefined cells hold ``None``."""

    labels: tuple[str, ...]
    rho: tuple[tuple[Optional[float], ...], ...]
    p_value: tuple[tuple[Optional[float], ...], ...]
    stars: tuple[tuple[str, ...], ...]
    n: int
    dropped: tuple[str, ...] = ()

    def cell(self, a: str, b: str) -> Optional[float]:
        return self.rho[self.labels.index(a)][self.labels.index(b)]

    def star(self, a: str, b: str) -> str:
        return self.stars[self.labels.index(a)][self.labels.index(b)]


def _check_lengths(series: Sequence[VariableSeries]) -> int:
    lengths = {len(s) for s in series}
    if len(lengths) > 1:
        raise StatsError("series length mismatch")
    return lengths.pop() if lengths else 0


def complete_rows(series: Sequence[VariableSeries]) -> list[int]:
    """Indices of observation rows present in every series."""
    n = _check_lengths(series)
    return [i for i in range(n) if all(s.values[i] is not None for s in series)]


def listwise_complete(series: Sequence[VariableSeries]) -> list[VariableSeries]:
    keep = complete_rows(series)
    return [VariableSeries(s.name, [s.values[i] for i in keep]) for s in series]


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    n = len(x)
    if n != len(y):
        raise StatsError("series length mismatch")
    if n < 2:
        raise StatsError("insufficient observations")
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        raise StatsError("undefined correlation (constant series)")
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _betacf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete beta continued fraction.
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) > tiny else tiny)
    h = d
    for m in range(1, 10_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise StatsError(f"incomplete beta did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise StatsError("betainc requires a, b > 0")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(log_front)
    # The fraction converges fast only below the mean; use symmetry above it.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_tailed_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with *df* degrees of freedom."""
    if df <= 0:
        raise StatsError("degrees of freedom must be positive")
    if math.isinf(t):
        return 0.0
    return betainc(df / 2.0, 0.5, df / (df + t * t))


def star_mark(p: float) -> str:
    if p <= 0.01:
        return "**"
    if p <= 0.05:
        return "*"
    return ""


def significance(rho: float, n: int) -> Significance:
    if n < 3:
        raise StatsError("insufficient observations")
    if abs(rho) >= 1.0:
        return Significance(0.0, "**")
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    p = t_two_tailed_p(t, n - 2)
    return Significance(p, star_mark(p))


def correlation_matrix(series: Sequence[VariableSeries],
                       unit_ids: Sequence[str] | None = None) -> CorrelationReport:
    """Listwise-complete Pearson matrix with per-cell significance.

    Rows missing any variable are dropped first; their *unit_ids* (or row
    indices) are recorded in ``dropped``. A variable that is constant after
    deletion gets ``None`` in its whole row and column.
    """
    if len(series) < 2:
        raise StatsError("need at least two series")
    n_rows = _check_lengths(series)
    if unit_ids is None:
        unit_ids = [str(i) for i in range(n_rows)]
    elif len(unit_ids) != n_rows:
        raise StatsError("series length mismatch")
    keep = complete_rows(series)
    kept = set(keep)
    dropped = tuple(unit_ids[i] for i in range(n_rows) if i not in kept)
    cols = [[float(s.values[i]) for i in keep] for s in series]
    n = len(keep)

    k = len(series)
    rho = [[None] * k for _ in range(k)]
    pval = [[None] * k for _ in range(k)]
    stars = [[""] * k for _ in range(k)]
    defined = [n >= 2 and len(set(c)) > 1 for c in cols]
    for i in range(k):
        for j in range(i, k):
            if not (defined[i] and defined[j]):
                continue
            r = 1.0 if i == j else pearson(cols[i], cols[j])
            rho[i][j] = rho[j][i] = r
            if i == j or n < 3:
                continue
            sig = significance(r, n)
            pval[i][j] = pval[j][i] = sig.p_value
            stars[i][j] = stars[j][i] = sig.stars
    return CorrelationReport(
        labels=tuple(s.name for s in series),
        rho=tuple(map(tuple, rho)),
        p_value=tuple(map(tuple, pval)),
        stars=tuple(map(tuple, stars)),
        n=n,
        dropped=dropped,
    )


def round_half_away(value: float, places: int = 3) -> Decimal:
    """Round to *places* decimals, ties away from zero, on the exact binary value."""
    quantum = Decimal(1).scaleb(-places)
    return Decimal(value).quantize(quantum, rounding=ROUND_HALF_UP)
