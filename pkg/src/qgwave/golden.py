"""Golden-section search for one-dimensional minimization."""

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_min(f, a, b, xtol=1e-12):
    """Minimize a unimodal function on [a, b].

    Returns (x, f(x)) where x locates the minimum to within xtol.  If the
    interval is already narrower than xtol the midpoint is returned.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= xtol:
        x = 0.5 * (a + b)
        return x, f(x)

    n = int(math.ceil(math.log(xtol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        h *= INV_PHI
        if yc < yd:
            b, d, yd = d, c, yc
            c = a + INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            d = a + INV_PHI * h
            yd = f(d)

    if yc < yd:
        return c, yc
    return d, yd
