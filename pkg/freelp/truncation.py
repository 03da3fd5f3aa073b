#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Lower bounds for the operator norm |X|_inf of X = sum a_I (x) lambda(w_I)
over a single free group F_N.

X is compressed to C^m (x) span{delta_u : |u| <= L} and the largest singular
value of the compression is found by power iteration on K^* K. Since the
compressions are nested, the value increases with L towards |X|_inf and never
exceeds it.

Degree-1 scalar operators whose coefficient only depends on the sign of the
letter, c_+ sum_i lambda(g_i) + c_- sum_i lambda(g_i^{-1}), leave the vectors
that are constant on sign-pattern classes of words invariant. For those the
compression is taken on that subspace (one basis vector per pattern of length
<= L) instead of the full ball, which keeps large radii tractable.
"""

import math
import warnings

import numpy as np
import scipy.sparse as sparse

import freelp.utils.tracing as tracing

from freelp.utils import default_params
from freelp.utils.datalog import dlog
from freelp.words import enumerate_ball, ball_size, _reduce_onto
from freelp.errors import CapExceededError, ConvergenceWarning, RankMismatchError


class TruncationResult:
    """ Compression lower bound for one radius. """

    def __init__(self, value, radius, size, iterations, converged, vector, method):
        self.value = value
        self.radius = radius
        self.size = size
        self.iterations = iterations
        self.converged = converged
        self.vector = vector
        self.method = method

    def __float__(self):
        return self.value

    def __repr__(self):
        return "TruncationResult(value=%g, radius=%d, size=%d, method=%s, converged=%s)" % \
            (self.value, self.radius, self.size, self.method, self.converged)


#=============================================================================
# Compressions


def _sign_coefficients(X):
    """ (c_+, c_-) if X qualifies for the sign-pattern compression, else None. """
    if X.product or X.m != 1:
        return None
    N = X.ranks[0]
    letters = {}
    for _, a, w in X.terms():
        if len(w) != 1:
            return None
        x = w.letters[0]
        letters[x] = letters.get(x, 0.) + complex(a[0, 0])

    coeffs = []
    for sign in (1, -1):
        present = [letters[sign * k] for k in range(1, N + 1) if sign * k in letters]
        if not present:
            coeffs.append(0.)
        elif len(present) == N and all(c == present[0] for c in present):
            coeffs.append(present[0])
        else:
            return None
    return tuple(coeffs)


def enumerate_patterns(N, L):
    """ Sign patterns of the reduced words of length <= L with their class sizes.

    Patterns are ordered by length, then lexicographically with + before -;
    empty classes (alternating signs when N = 1) are dropped.
    """
    patterns = [()]
    sizes = [1]
    layer = [((), 1)]
    for _ in range(L):
        next_layer = []
        for sigma, size in layer:
            for s in (1, -1):
                if not sigma:
                    new_size = size * N
                elif s == sigma[-1]:
                    new_size = size * N
                else:
                    new_size = size * (N - 1)
                if new_size > 0:
                    next_layer.append((sigma + (s, ), new_size))
        for sigma, size in next_layer:
            patterns.append(sigma)
            sizes.append(size)
        layer = next_layer
    return patterns, sizes


def pattern_compression(N, L, c_plus, c_minus):
    """ Compression onto the class-constant ball vectors, orthonormal basis. """
    patterns, sizes = enumerate_patterns(N, L)
    index = {sigma: k for k, sigma in enumerate(patterns)}
    c = {1: c_plus, -1: c_minus}

    rows, cols, vals = [], [], []

    def add(rho, sigma, weight):
        if weight == 0 or sigma not in index:
            return
        r, s = index[rho], index[sigma]
        rows.append(r)
        cols.append(s)
        vals.append(weight * math.sqrt(sizes[r] / float(sizes[s])))

    for rho in patterns:
        if rho:
            # the first letter of v cancels
            add(rho, rho[1:], c[rho[0]])
        for t in (1, -1):
            count = N - (1 if rho and t == rho[0] else 0)
            add(rho, (-t, ) + rho, c[t] * count)

    K = sparse.coo_matrix((vals, (rows, cols)), shape=(len(patterns), len(patterns)),
                          dtype=np.complex128)
    return K.tocsr()


def ball_compression(X, L, cap=None):
    """ Sparse matrix of the compression of X to C^m (x) ball(N, L). """
    if cap is None:
        cap = default_params['ball_cap']
    N = X.ranks[0]
    m = X.m
    size = ball_size(N, L)
    if size * m > cap:
        raise CapExceededError("Ball of radius %d in F_%d has %d words (x m=%d), cap is %d" %
                               (L, N, size, m, cap))
    ball = enumerate_ball(N, L)
    index = {w.letters: k for k, w in enumerate(ball)}

    rows, cols, vals = [], [], []
    rr, ss = np.meshgrid(np.arange(m), np.arange(m), indexing='ij')
    rr, ss = rr.ravel(), ss.ravel()
    for _, a, w in X.terms():
        flat = a.ravel()
        for col, u in enumerate(ball):
            v = tuple(_reduce_onto(list(w.letters), u.letters))
            row = index.get(v)
            if row is None:
                continue
            rows.extend(row * m + rr)
            cols.extend(col * m + ss)
            vals.extend(flat)

    K = sparse.coo_matrix((vals, (rows, cols)), shape=(size * m, size * m), dtype=np.complex128)
    return K.tocsr()


#=============================================================================
# Power iteration


def power_iteration(K, x0, tol, max_iter):
    """ Largest eigenvalue of K^* K by power iteration from *x0*.

    Stops when the Rayleigh quotient changes by at most tol (relative).
    Returns (quotient, unit vector, iterations, converged).
    """
    KH = K.conj().T.tocsr()
    x = np.asarray(x0, dtype=np.complex128)
    nrm = np.linalg.norm(x)
    if nrm == 0.:
        return 0., x, 0, True
    x = x / nrm

    lam_old = None
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        y = K @ x
        lam = np.vdot(y, y).real
        z = KH @ y
        znrm = np.linalg.norm(z)
        if znrm == 0.:
            return 0., x, it, True
        if lam_old is not None and abs(lam - lam_old) <= tol * lam:
            converged = True
            break
        lam_old = lam
        x = z / znrm

    y = K @ x
    return np.vdot(y, y).real, x, it, converged


@tracing.traced
def opnorm_lower_trunc(X, L, tol=None, max_iter=None, seed=None, cap=None, start=None):
    """ Lower bound for |X|_inf from the compression to the ball of radius L.

    :param X: operator over a single free group
    :type  X: :class:`freelp.operators.FreeOperator`
    :param L: ball radius
    :type  L: int
    :param start: start vector (e.g. from a smaller radius); padded with zeros
    :rtype: :class:`TruncationResult`
    :raises CapExceededError: if the ball exceeds *cap* (default: default_params['ball_cap'])
    """
    if X.product:
        raise RankMismatchError("Compression needs an operator over a single free group")
    tol = default_params['tol'] if tol is None else tol
    max_iter = default_params['max_iter'] if max_iter is None else max_iter
    seed = default_params['seed'] if seed is None else seed

    signs = _sign_coefficients(X)
    if signs is not None:
        K = pattern_compression(X.ranks[0], L, *signs)
        method = "pattern"
        if K.shape[0] > (default_params['ball_cap'] if cap is None else cap):
            raise CapExceededError("%d sign patterns exceed the cap" % K.shape[0])
    else:
        K = ball_compression(X, L, cap)
        method = "ball"

    size = K.shape[0]
    x0 = np.random.RandomState(seed).uniform(0.5, 1., size=size)
    if start is not None:
        start = np.asarray(start)
        x0 = np.zeros(size, dtype=np.complex128)
        x0[:len(start)] = start

    lam, x, it, converged = power_iteration(K, x0, tol, max_iter)
    if not converged:
        warnings.warn("Power iteration at radius %d stopped after %d iterations" % (L, it),
                      ConvergenceWarning)
    value = math.sqrt(max(lam, 0.))
    dlog.append('truncation.value', value)
    return TruncationResult(value, L, size, it, converged, x, method)


def opnorm_lower_path(X, radii, tol=None, max_iter=None, seed=None, cap=None):
    """ :func:`opnorm_lower_trunc` for increasing *radii*, warm-started.

    Each radius starts from the vector of the previous one, so the values
    are non-decreasing in L up to rounding.
    """
    results = []
    start = None
    for L in sorted(radii):
        r = opnorm_lower_trunc(X, L, tol=tol, max_iter=max_iter, seed=seed, cap=cap, start=start)
        results.append(r)
        start = r.vector
    return results
