"""Independent numerical oracles: kept free of the library's own algorithms.

Fixed points are located by bisection, derivatives by plain central/one-sided
differences on closed-form functions, so expected values never flow through
the code paths under test.
"""


def bisect_root(f, lo, hi, tol=1e-14, it=200):
    flo, fhi = f(lo), f(hi)
    assert flo * fhi <= 0.0, "root not bracketed"
    for _ in range(it):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo < tol:
            return mid
        if flo * fm <= 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def busy_period_by_bisection(beta, lam, omega):
    """Root in (0, 1] of pi = beta(omega + lam*(1 - pi))."""
    return bisect_root(lambda p: p - beta(omega + lam * (1.0 - p)), 1e-12, 1.0)


def derivative(f, x, h, order=1):
    """Central finite differences of a cheap closed-form function."""
    if order == 1:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)


def one_sided_first_derivative(f, h):
    """Second-order one-sided stencil at 0 using f(0), f(h), f(2h)."""
    return (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h)
