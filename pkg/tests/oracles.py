"""Reference computations that share no code with the package."""

import itertools
import math
from fractions import Fraction


def enumerate_p(values, mu0, method):
    """Exact resampling p-value over every ordered resample, in rational arithmetic."""
    xs = [Fraction(v) for v in values]
    m0 = Fraction(mu0)
    n = len(xs)
    mean = sum(xs) / n
    if method == "mirror":
        pop = xs + [2 * m0 - x for x in xs]
    elif method == "shift":
        pop = [x + (m0 - mean) for x in xs]
    else:
        raise ValueError(method)
    observed = abs(mean - m0)
    hits = sum(1 for combo in itertools.product(pop, repeat=n)
               if abs(sum(combo) / n - m0) >= observed)
    return Fraction(hits, len(pop) ** n)


def cauchy_cdf(t):
    return 0.5 + math.atan(t) / math.pi


def t2_cdf(t):
    return 0.5 * (1 + t / math.sqrt(2 + t * t))


def gh_raw_moment(k, g, h):
    """E[X^k] for g-and-h with g != 0 and k h < 1 (closed form)."""
    total = sum((-1) ** i * math.comb(k, i) * math.exp(((k - i) * g) ** 2 / (2 * (1 - k * h)))
                for i in range(k + 1))
    return total / (g ** k * math.sqrt(1 - k * h))


def gh_closed_mean(g, h):
    return (math.exp(g * g / (2 * (1 - h))) - 1) / (g * math.sqrt(1 - h))


def gh_closed_shape(g, h):
    r1, r2, r3, r4 = (gh_raw_moment(k, g, h) for k in (1, 2, 3, 4))
    m2 = r2 - r1 ** 2
    m3 = r3 - 3 * r1 * r2 + 2 * r1 ** 3
    m4 = r4 - 4 * r1 * r3 + 6 * r1 ** 2 * r2 - 3 * r1 ** 4
    return m3 / m2 ** 1.5, m4 / m2 ** 2


def batch_skew_kurt(x, batches=100):
    """Sample skewness and kurtosis with batch-means standard errors."""
    import numpy as np

    def sk(a):
        d = a - a.mean()
        m2 = np.mean(d ** 2)
        return np.mean(d ** 3) / m2 ** 1.5, np.mean(d ** 4) / m2 ** 2

    parts = np.array([sk(b) for b in np.array_split(x, batches)])
    skew, kurt = sk(x)
    se = parts.std(axis=0, ddof=1) / math.sqrt(batches)
    return skew, kurt, se[0], se[1]
