"""Straight-line reference implementations in exact rational arithmetic.

These deliberately share no code with the package: plain loops over
``Fraction`` values, textbook trapezoid sums, explicit sorting.  Results
are converted to float only at the very end, so on dyadic inputs the
package must agree bit for bit.
"""
import math
from fractions import Fraction


def _q(x):
    return Fraction(x)


def trapezoid(t, f):
    total = Fraction(0)
    for j in range(len(t) - 1):
        total += (_q(t[j + 1]) - _q(t[j])) * (_q(f[j]) + _q(f[j + 1])) / 2
    return total


def l2_squared(t, f, g):
    return trapezoid(t, [(_q(a) - _q(b)) ** 2 for a, b in zip(f, g)])


def l2(t, f, g):
    return math.sqrt(float(l2_squared(t, f, g)))


def linf(t, f, g):
    return float(max(abs(_q(a) - _q(b)) for a, b in zip(f, g)))


def fm_scores_exact(t, rows):
    n = len(rows)
    scores = []
    for i in range(n):
        z = []
        for j in range(len(t)):
            below = sum(1 for k in range(n) if rows[k][j] <= rows[i][j])
            z.append(1 - abs(Fraction(1, 2) - Fraction(below, n)))
        scores.append(trapezoid(t, z))
    return scores


def fm_scores(t, rows):
    return [float(s) for s in fm_scores_exact(t, rows)]


def radius_scores_exact(t, rows, alpha, metric="l2"):
    """Squared L2 (or exact Linf) distance to the ceil(alpha n)-th nearest other curve."""
    n = len(rows)
    k = math.ceil(Fraction(alpha).limit_denominator(10**6) * n)
    out = []
    for i in range(n):
        if metric == "l2":
            others = [l2_squared(t, rows[i], rows[j]) for j in range(n) if j != i]
        else:
            others = [max(abs(_q(a) - _q(b)) for a, b in zip(rows[i], rows[j]))
                      for j in range(n) if j != i]
        out.append(sorted(others)[k - 1])
    return out


def radius_scores(t, rows, alpha, metric="l2"):
    exact = radius_scores_exact(t, rows, alpha, metric)
    if metric == "l2":
        return [math.sqrt(float(s)) for s in exact]
    return [float(s) for s in exact]


def order_desc(scores):
    return sorted(range(len(scores)), key=lambda i: (-scores[i], i))


def order_asc(scores):
    return sorted(range(len(scores)), key=lambda i: (scores[i], i))


def pointwise_mean(rows):
    n = len(rows)
    return [float(sum(_q(r[j]) for r in rows) / n) for j in range(len(rows[0]))]


def trimmed(rows, order, gamma):
    n = len(rows)
    kept = n - math.ceil(Fraction(gamma).limit_denominator(10**6) * n)
    return pointwise_mean([rows[i] for i in sorted(order[:kept])])


def order_statistic(values, delta):
    m = len(values)
    k = math.ceil((1 - Fraction(delta).limit_denominator(10**6)) * m)
    return sorted(values)[max(k, 1) - 1]
