"""Hot floating-point loops: Bonnet recurrence tables, series sums and root polishing.

Every kernel exists twice.  The ``np_*`` variants are vectorised numpy; the
``nb_*`` variants are explicit loops compiled with numba.  The public names
(``legendre_table``, ``legendre_pair``, ``legendre_series``, ``polish_roots``)
point at the numba variants unless ``LEGKIT_DISABLE_NUMBA`` is set.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "legendre_table",
    "legendre_pair",
    "legendre_series",
    "polish_roots",
    "refine_roots",
    "BACKEND",
]


# ---------------------------------------------------------------- numpy path


def np_legendre_table(nmax, x):
    """Rows P_0(x) ... P_nmax(x) for a 1-d array ``x``; shape (nmax + 1, len(x))."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((nmax + 1, x.shape[0]))
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for k in range(1, nmax):
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1)
    return out


def np_legendre_pair(n, x):
    """Return (P_n(x), P_{n-1}(x)); P_{-1} is taken as 0."""
    x = np.asarray(x, dtype=np.float64)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return cur, prev


def np_legendre_series(coeffs, x):
    """Sum of coeffs[k] * P_k(x), accumulated in ascending k during one recurrence pass."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(x)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for k in range(coeffs.shape[0]):
        total += coeffs[k] * cur
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return total


def np_polish_roots(n, lo, hi, tol, step_tol, maxiter):
    """Safeguarded Newton on every bracket [lo[i], hi[i]] at once.

    Only an accepted Newton step can end the iteration, and that final step
    is always applied; a bisection step never counts as convergence.
    Returns ``(roots, iterations)``; an iteration count of -1 marks a bracket
    that did not converge within ``maxiter`` steps.
    """
    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    m = lo.shape[0]
    x = 0.5 * (lo + hi)
    sign_lo = np.sign(np_legendre_pair(n, lo)[0])
    iters = np.full(m, -1, dtype=np.int64)
    active = np.ones(m, dtype=bool)
    for it in range(maxiter):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        xa = x[idx]
        p, q = np_legendre_pair(n, xa)
        exact = p == 0.0
        same = np.sign(p) == sign_lo[idx]
        lo[idx] = np.where(same, xa, lo[idx])
        hi[idx] = np.where(same, hi[idx], xa)
        dp = n * (q - xa * p) / (1.0 - xa * xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = xa - p / dp
        newton = np.isfinite(xn) & (xn >= lo[idx]) & (xn <= hi[idx])
        xn = np.where(newton, xn, 0.5 * (lo[idx] + hi[idx]))
        xn = np.where(exact, xa, xn)
        done = exact | (newton & ((np.abs(p) <= tol) | (np.abs(xn - xa) <= step_tol)))
        x[idx] = xn
        finished = idx[done]
        iters[finished] = it + 1
        active[finished] = False
    return x, iters


_SPLITTER = 134217729.0  # 2**27 + 1


def _np_two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _np_two_prod(a, b):
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _np_dd_mul(hi, lo, b):
    p, e = _np_two_prod(hi, b)
    e = e + lo * b
    s = p + e
    return s, e - (s - p)


def _np_dd_sub(ah, al, bh, bl):
    s, e = _np_two_sum(ah, -bh)
    e = e + (al - bl)
    t = s + e
    return t, e - (t - s)


def _np_dd_div(hi, lo, b):
    q1 = hi / b
    p, e = _np_two_prod(q1, b)
    s, f = _np_two_sum(hi, -p)
    f = f - e + lo
    q2 = (s + f) / b
    t = q1 + q2
    return t, q2 - (t - q1)


def np_refine_roots(n, x, steps):
    """Newton corrections with P_n(x) evaluated in double-double arithmetic.

    Recovers the last bits lost to rounding in the plain recurrence, so the
    returned roots are (almost always) correctly rounded.
    """
    x = np.array(x, dtype=np.float64)
    for _ in range(steps):
        ph, pl = np.zeros_like(x), np.zeros_like(x)
        ch, cl = np.ones_like(x), np.zeros_like(x)
        for k in range(n):
            th, tl = _np_dd_mul(ch, cl, x)
            th, tl = _np_dd_mul(th, tl, 2.0 * k + 1.0)
            uh, ul = _np_dd_mul(ph, pl, float(k))
            th, tl = _np_dd_sub(th, tl, uh, ul)
            ph, pl = ch, cl
            ch, cl = _np_dd_div(th, tl, float(k + 1))
        dp = n * (ph - x * ch) / (1.0 - x * x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = (ch + cl) / dp
        x = np.where(np.isfinite(step), x - step, x)
    return x


# ---------------------------------------------------------------- numba path


@njit
def nb_legendre_table(nmax, x):
    # degree outermost so the inner loop over points vectorises
    m = x.shape[0]
    out = np.empty((nmax + 1, m))
    for j in range(m):
        out[0, j] = 1.0
    if nmax >= 1:
        for j in range(m):
            out[1, j] = x[j]
    for k in range(1, nmax):
        for j in range(m):
            out[k + 1, j] = ((2 * k + 1) * x[j] * out[k, j] - k * out[k - 1, j]) / (k + 1)
    return out


@njit
def _nb_pair_scalar(n, x):
    prev = 0.0
    cur = 1.0
    for k in range(n):
        nxt = ((2 * k + 1) * x * cur - k * prev) / (k + 1)
        prev = cur
        cur = nxt
    return cur, prev


@njit
def nb_legendre_pair(n, x):
    m = x.shape[0]
    p = np.empty(m)
    q = np.empty(m)
    for j in range(m):
        p[j], q[j] = _nb_pair_scalar(n, x[j])
    return p, q


@njit
def nb_legendre_series(coeffs, x):
    m = x.shape[0]
    total = np.zeros(m)
    prev = np.zeros(m)
    cur = np.ones(m)
    for k in range(coeffs.shape[0]):
        c = coeffs[k]
        for j in range(m):
            total[j] += c * cur[j]
            nxt = ((2 * k + 1) * x[j] * cur[j] - k * prev[j]) / (k + 1)
            prev[j] = cur[j]
            cur[j] = nxt
    return total


@njit
def nb_polish_roots(n, lo, hi, tol, step_tol, maxiter):
    m = lo.shape[0]
    roots = np.empty(m)
    iters = np.full(m, -1, dtype=np.int64)
    for i in range(m):
        a = lo[i]
        b = hi[i]
        pa, _ = _nb_pair_scalar(n, a)
        sa = 1.0 if pa > 0 else -1.0
        x = 0.5 * (a + b)
        for it in range(maxiter):
            p, q = _nb_pair_scalar(n, x)
            if p == 0.0:
                iters[i] = it + 1
                break
            if (p > 0) == (sa > 0):
                a = x
            else:
                b = x
            dp = n * (q - x * p) / (1.0 - x * x)
            xn = x - p / dp if dp != 0.0 else np.nan
            newton = xn >= a and xn <= b
            if not newton:
                xn = 0.5 * (a + b)
            if newton and (abs(p) <= tol or abs(xn - x) <= step_tol):
                x = xn
                iters[i] = it + 1
                break
            x = xn
        roots[i] = x
    return roots, iters


@njit
def _nb_two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit
def _nb_two_prod(a, b):
    p = a * b
    c = 134217729.0 * a
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit
def _nb_dd_mul(hi, lo, b):
    p, e = _nb_two_prod(hi, b)
    e = e + lo * b
    s = p + e
    return s, e - (s - p)


@njit
def _nb_dd_sub(ah, al, bh, bl):
    s, e = _nb_two_sum(ah, -bh)
    e = e + (al - bl)
    t = s + e
    return t, e - (t - s)


@njit
def _nb_dd_div(hi, lo, b):
    q1 = hi / b
    p, e = _nb_two_prod(q1, b)
    s, f = _nb_two_sum(hi, -p)
    f = f - e + lo
    q2 = (s + f) / b
    t = q1 + q2
    return t, q2 - (t - q1)


@njit
def nb_refine_roots(n, x, steps):
    out = x.copy()
    for i in range(out.shape[0]):
        xi = out[i]
        for _ in range(steps):
            ph, pl = 0.0, 0.0
            ch, cl = 1.0, 0.0
            for k in range(n):
                th, tl = _nb_dd_mul(ch, cl, xi)
                th, tl = _nb_dd_mul(th, tl, 2.0 * k + 1.0)
                uh, ul = _nb_dd_mul(ph, pl, float(k))
                th, tl = _nb_dd_sub(th, tl, uh, ul)
                ph, pl = ch, cl
                ch, cl = _nb_dd_div(th, tl, float(k + 1))
            dp = n * (ph - xi * ch) / (1.0 - xi * xi)
            if dp != 0.0:
                xi = xi - (ch + cl) / dp
        out[i] = xi
    return out


# ---------------------------------------------------------------- dispatch


def _as_1d(x):
    return np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel())


if USE_NUMBA:
    BACKEND = "numba"

    def legendre_table(nmax, x):
        return nb_legendre_table(int(nmax), _as_1d(x))

    def legendre_pair(n, x):
        return nb_legendre_pair(int(n), _as_1d(x))

    def legendre_series(coeffs, x):
        return nb_legendre_series(_as_1d(coeffs), _as_1d(x))

    def polish_roots(n, lo, hi, tol, step_tol, maxiter):
        return nb_polish_roots(int(n), _as_1d(lo), _as_1d(hi), float(tol), float(step_tol), int(maxiter))

    def refine_roots(n, x, steps=2):
        return nb_refine_roots(int(n), _as_1d(x), int(steps))

else:
    BACKEND = "numpy"

    def legendre_table(nmax, x):
        return np_legendre_table(int(nmax), _as_1d(x))

    def legendre_pair(n, x):
        return np_legendre_pair(int(n), _as_1d(x))

    def legendre_series(coeffs, x):
        return np_legendre_series(_as_1d(coeffs), _as_1d(x))

    def polish_roots(n, lo, hi, tol, step_tol, maxiter):
        return np_polish_roots(int(n), _as_1d(lo), _as_1d(hi), float(tol), float(step_tol), int(maxiter))

    def refine_roots(n, x, steps=2):
        return np_refine_roots(int(n), _as_1d(x), int(steps))
