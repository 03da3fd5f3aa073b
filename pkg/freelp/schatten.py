#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Schatten p-norms of matricizations and the two K_p norms built from them:

 * the intersection norm  max_k |A_k|_p  over the consecutive splits
   alpha = {1..k}, k = 0..d (the K_p norm for 2 <= p <= inf),
 * the sum norm  inf { sum_k |Y^(k)_k|_p : sum_k Y^(k) = A }  (the K_p norm
   for 1 <= p <= 2), returned as a certified interval.

Example::

    >>> from freelp.utils.instances import counterexample_tensor
    >>> round(intersection_norm(counterexample_tensor(3), 4).value, 6)   # 3**0.75
    2.279507
"""

import math
from collections import namedtuple

import numpy as np
import scipy.optimize
from mpi4py import MPI

import freelp.utils.tracing as tracing
import freelp.utils.parallel as parallel

from freelp.utils import accel, default_params
from freelp.utils.datalog import dlog
from freelp.errors import SchemaError
from freelp.optim import SplitObjective, Splitting
from freelp.optim.schedule import ResidualBalancing
from freelp.tensors import (CoeffTensor, PartitionSplit, reshape, matricize, tensorize,
                            consecutive_splits, enumerate_partitions)

#=============================================================================
# Exponents


class Exponent:
    """ An exponent 1 <= p <= inf; infinity is kept as an explicit flag. """
    __slots__ = ('value', )

    def __init__(self, p):
        if isinstance(p, Exponent):
            p = p.value
        elif isinstance(p, str):
            p = p.strip().lower()
            p = math.inf if p in ('inf', 'infinity', 'oo') else float(p)
        p = float(p)
        if not p >= 1.:
            raise ValueError("Exponent must satisfy p >= 1, got %s" % p)
        self.value = p

    @property
    def is_inf(self):
        return math.isinf(self.value)

    def is_even(self):
        """ True for p in {2, 4, 6, ...} """
        return not self.is_inf and self.value == int(self.value) and int(self.value) % 2 == 0

    def conjugate(self):
        return conjugate_exponent(self)

    def __float__(self):
        return self.value

    def __eq__(self, other):
        try:
            return self.value == Exponent(other).value
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return "inf" if self.is_inf else "%g" % self.value

    def __repr__(self):
        return "Exponent(%s)" % str(self)

    def to_json(self):
        if self.is_inf:
            return "inf"
        if self.value == int(self.value):
            return int(self.value)
        return self.value


def conjugate_exponent(p):
    """ p' with 1/p + 1/p' = 1 (1 <-> inf). """
    p = Exponent(p)
    if p.is_inf:
        return Exponent(1)
    if p.value == 1.:
        return Exponent(math.inf)
    return Exponent(p.value / (p.value - 1.))


#=============================================================================
# Schatten norms


def _norm_from_singular_values(s, p):
    s = np.sort(np.asarray(s, dtype=np.float64))[::-1]
    if s.size == 0 or s[0] == 0.:
        return 0.
    if p.is_inf:
        return float(s[0])
    scaled = (s / s[0]) ** p.value
    return float(s[0] * math.fsum(scaled) ** (1. / p.value))


def schatten_norm(M, p):
    """ Schatten p-norm of a complex matrix.

    (sum_i s_i^p)^{1/p} over the singular values, max s_i for p = inf. The
    singular values are summed in descending order with compensated
    summation.

    :param M: matrix
    :type  M: ndarray
    :param p: exponent
    :type  p: :class:`Exponent`, float or "inf"
    :rtype: float
    :raises ValueError: for non-finite entries
    """
    p = Exponent(p)
    M = np.asarray(M)
    if M.size == 0:
        return 0.
    if not np.all(np.isfinite(M)):
        raise ValueError("Schatten norm of a matrix with non-finite entries")
    return _norm_from_singular_values(accel.svdvals(M), p)


def pairing(A, B):
    """ <A, B> = sum_I tr(b_I^* a_I). """
    if A.shape != B.shape:
        raise SchemaError("Cannot pair tensors of shapes %s and %s" % (A.shape, B.shape))
    terms = [np.vdot(B.entries[I], a) for I, a in A.items() if I in B.entries]
    return complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))


def split_norm(t, split, p, cap=None):
    """ |A_(alpha, beta)|_p for one split. """
    return schatten_norm(reshape(t, split, cap=cap), p)


#=============================================================================
# Reports

SplitNorm = namedtuple('SplitNorm', ['split', 'norm', 'T', 'transposed', 'reduces_to'])


class NormReport:
    """ Per-split norms and the combined value of a K_p norm computation.

    Sum-norm reports carry in addition *upper*, *lower*, *gap*, *converged*
    and the *decomposition* (one tensor per consecutive split).
    """

    def __init__(self, p, splits, value, argmax=None, kind="intersection"):
        self.p = Exponent(p)
        self.splits = list(splits)
        self.value = value
        self.argmax = argmax
        self.kind = kind
        self.upper = None
        self.lower = None
        self.gap = None
        self.converged = None
        self.iterations = None
        self.decomposition = None

    @property
    def norms(self):
        return {s.split: s.norm for s in self.splits}

    @property
    def argmax_k(self):
        if self.argmax is None or not self.argmax.is_consecutive():
            return None
        return len(self.argmax.alpha)

    def norm_of(self, split):
        return self.norms[split]

    def to_json(self):
        doc = {
            "p": self.p.to_json(),
            "kind": self.kind,
            "splits": [{
                "alpha": list(s.split.alpha),
                "norm": s.norm,
                "T": s.T,
                "transposed": s.transposed,
            } for s in self.splits],
            "value": self.value,
            "argmax_k": self.argmax_k,
        }
        if self.argmax is not None:
            doc["argmax_alpha"] = list(self.argmax.alpha)
        if self.kind == "sum":
            doc.update({
                "upper": self.upper,
                "lower": self.lower,
                "gap": self.gap,
                "converged": self.converged,
                "iterations": self.iterations,
            })
        return doc

    def __repr__(self):
        return "NormReport(kind=%s, p=%s, value=%g)" % (self.kind, self.p, self.value)


def _tagged(split, norm):
    T = split.transposition_number()
    reduces_to = split.reduce_transposed() if T > 0 else ()
    return SplitNorm(split, norm, T, T > 0, reduces_to)


def _split_norms(t, splits, p, cap, comm):
    first, last = parallel.stride_data(len(splits), comm)
    my_norms = [split_norm(t, s, p, cap=cap) for s in splits[first:last]]
    return parallel.gather_ordered(my_norms, comm)


def _argmax(splits, norms):
    best = None
    for s, v in zip(splits, norms):
        if best is None or v > best[1]:
            best = (s, v)
    return best[0] if best else None


@tracing.traced
def intersection_norm(t, p, cap=None, comm=MPI.COMM_WORLD):
    """ max_k |A_k|_p over the consecutive splits alpha = {1..k}, k = 0..d.

    Ties of the argmax are broken by the smallest k.

    :param t: coefficient tensor
    :type  t: :class:`freelp.tensors.CoeffTensor`
    :param p: exponent, 1 <= p <= inf
    :rtype: :class:`NormReport`
    :raises CapExceededError: if a matricization exceeds the dense cap
    """
    p = Exponent(p)
    splits = consecutive_splits(t.d)
    norms = _split_norms(t, splits, p, cap, comm)
    return NormReport(p, [_tagged(s, v) for s, v in zip(splits, norms)], max(norms),
                      _argmax(splits, norms), kind="intersection")


@tracing.traced
def partition_spectrum(t, p, cap=None, comm=MPI.COMM_WORLD):
    """ |A_(alpha, beta)|_p for all 2^d splits, tagged with T(alpha, beta).

    Transposed splits also list the two splits with smaller transposition
    number they reduce to.

    :rtype: :class:`NormReport`
    """
    p = Exponent(p)
    splits = enumerate_partitions(t.d)
    norms = _split_norms(t, splits, p, cap, comm)
    return NormReport(p, [_tagged(s, v) for s, v in zip(splits, norms)], max(norms),
                      _argmax(splits, norms), kind="spectrum")


def split_report(t, split, p, cap=None):
    """ :class:`NormReport` of one explicitly given split. """
    p = Exponent(p)
    norm = split_norm(t, split, p, cap=cap)
    return NormReport(p, [_tagged(split, norm)], norm, split, kind="split")


def transposition_terms(t):
    """ The p = inf quantities of the degree-2 transposition argument.

    Returns a dict with

     * A = max_j |(sum_i a_ij a_ij^*)^{1/2}|_inf
     * B = max_ij |a_ij|_inf
     * C = max_i |(sum_j a_ij^* a_ij)^{1/2}|_inf
     * row = |A_0|_inf (alpha empty), column = |A_2|_inf (alpha = {1,2})

    so that B <= A <= row and B <= C <= column.
    """
    if t.d != 2:
        raise SchemaError("Transposition terms are defined for degree 2 tensors")
    dense = t.to_dense()
    A = max(schatten_norm(np.hstack([dense[i, j] for i in range(t.A)]), np.inf)
            for j in range(t.A))
    C = max(schatten_norm(np.vstack([dense[i, j] for j in range(t.A)]), np.inf)
            for i in range(t.A))
    B = max(schatten_norm(dense[i, j], np.inf) for i in range(t.A) for j in range(t.A))
    return {
        'A': A,
        'B': B,
        'C': C,
        'row': split_norm(t, PartitionSplit.consecutive(2, 0), np.inf),
        'column': split_norm(t, PartitionSplit.consecutive(2, 2), np.inf),
    }


#=============================================================================
# Sum norm


def _project_lq_ball(v, q):
    """ Euclidean projection of a nonnegative *v* with |v|_q > 1 onto the
    unit l_q ball, 2 < q < inf.

    The projection is z with z_i + mu z_i^{q-1} = v_i, mu > 0 chosen such
    that |z|_q = 1.
    """
    r = q - 1.

    def shrink(mu):
        # Newton from above on the convex increasing z + mu z^r - v
        z = np.minimum(v, (v / mu) ** (1. / r)) if mu > 0. else v.copy()
        for _ in range(100):
            step = (z + mu * z ** r - v) / (1. + mu * r * z ** (r - 1.))
            z = np.maximum(z - step, 0.)
            if np.all(np.abs(step) <= 1e-14 * z):
                break
        return z

    def excess(mu):
        return _norm_from_singular_values(shrink(mu), Exponent(q)) - 1.

    hi = 1.
    while excess(hi) > 0.:
        hi *= 2.
    mu = scipy.optimize.brentq(excess, 0., hi, xtol=1e-300, maxiter=200)
    return shrink(mu)


def prox_schatten_values(s, tau, p):
    """ Proximal map of tau |.|_p on a nonnegative vector of singular values.

    argmin_x tau |x|_p + |x - s|^2 / 2 for 1 <= p <= 2: soft thresholding
    for p = 1, radial shrinkage for p = 2, and s - tau P(s / tau) with P the
    projection onto the unit ball of the conjugate exponent otherwise.
    """
    p = Exponent(p)
    s = np.asarray(s, dtype=np.float64)
    if s.size == 0 or tau <= 0.:
        return s.copy()
    if p.value == 1.:
        return np.maximum(s - tau, 0.)
    if p.value == 2.:
        nrm = _norm_from_singular_values(s, p)
        return s * max(0., 1. - tau / nrm) if nrm > 0. else s.copy()

    q = conjugate_exponent(p)
    v = s / tau
    if _norm_from_singular_values(v, q) <= 1.:
        return np.zeros_like(s)
    return np.maximum(s - tau * _project_lq_ball(v, q.value), 0.)


class SumNormObjective(SplitObjective):
    """ f(Y) = sum_{k<=d} |R_k(Y_k)|_p over sum_k Y_k = T.

    Blocks are arrays of the shape of T; block k is matricized along the
    consecutive split alpha = {1..k}.
    """

    def __init__(self, dense, p, cap=None):
        self.target = dense
        self.p = Exponent(p)
        self.q = conjugate_exponent(self.p)
        self.d = dense.ndim - 2
        self.nblocks = self.d + 1
        self.A = dense.shape[0]
        self.m = dense.shape[-1]
        self.splits = consecutive_splits(self.d)
        self.cap = cap
        self.random_lower = 0.

    def block_norms(self, free):
        return [schatten_norm(matricize(Y, s, self.cap), self.p)
                for Y, s in zip(self.complete(free), self.splits)]

    def value(self, free):
        return math.fsum(self.block_norms(free))

    def prox(self, k, V, tau):
        split = self.splits[k]
        U, s, Vh = accel.svd(matricize(V, split, self.cap), full_matrices=False)
        s = prox_schatten_values(s, tau, self.p)
        return tensorize((U * s) @ Vh, split, self.A, self.m)

    def block_gradient(self, Y, split):
        """ Gradient of |R(Y)|_p in tensor form (a subgradient for p = 1). """
        M = matricize(Y, split, self.cap)
        U, s, Vh = accel.svd(M, full_matrices=False)
        if s.size == 0 or s[0] == 0.:
            return np.zeros_like(Y)
        if self.p.value == 1.:
            r = s > s[0] * 1e-12
            G = U[:, r] @ Vh[r]
        else:
            w = (s / _norm_from_singular_values(s, self.p)) ** (self.p.value - 1.)
            G = (U * w) @ Vh
        return tensorize(G, split, self.A, self.m)

    def intersection_dual(self, B):
        return max(schatten_norm(matricize(B, s, self.cap), self.q) for s in self.splits)

    def certificate(self, B):
        """ |<T, B>| / |B|_{cap, p'} """
        nrm = self.intersection_dual(B)
        if nrm == 0.:
            return 0.
        return abs(np.vdot(B, self.target)) / nrm

    def lower_bound(self, free):
        lower = self.random_lower
        for Y, s in zip(self.complete(free), self.splits):
            if np.any(Y != 0):
                lower = max(lower, self.certificate(self.block_gradient(Y, s)))
        return lower

    def set_random_duals(self, count, seed):
        """ Lower bound from *count* seeded complex Gaussian dual tensors. """
        rng = np.random.RandomState(seed)
        shape = self.target.shape
        for _ in range(count):
            B = rng.normal(size=shape) + 1j * rng.normal(size=shape)
            self.random_lower = max(self.random_lower, self.certificate(B))
        return self.random_lower


@tracing.traced
def sum_norm(t, p, tol=None, max_iter=None, random_duals=None, seed=None, cap=None,
             verbose=False):
    """ Certified interval for the sum norm, 1 <= p <= 2.

    Minimizes sum_k |R_k(Y^(k))|_p over decompositions sum_k Y^(k) = t with
    ADMM: every iteration applies the singular value shrinkage of each block
    and updates the dual tensor. The start puts all mass in the block of
    smallest single-term norm. The dual tensor, the normalized block
    gradients of the best decomposition and *random_duals* seeded random tensors
    give the certificates |<t, B>| / |B|_{cap, p'}.

    Defaults for tol, max_iter, random_duals and seed come from
    :data:`freelp.utils.default_params`.

    :rtype: :class:`NormReport` with kind "sum"; value == upper
    """
    p = Exponent(p)
    if p.value > 2.:
        raise ValueError("The sum norm is defined for 1 <= p <= 2, got %s" % p)
    tol = default_params['tol'] if tol is None else tol
    max_iter = default_params['max_iter'] if max_iter is None else max_iter
    random_duals = default_params['random_duals'] if random_duals is None else random_duals
    seed = default_params['seed'] if seed is None else seed

    d = t.d
    splits = consecutive_splits(d)
    dense = t.to_dense()

    def report(blocks, upper, lower, iterations, converged):
        norms = [schatten_norm(matricize(Y, s, cap), p) for Y, s in zip(blocks, splits)]
        r = NormReport(p, [_tagged(s, v) for s, v in zip(splits, norms)], upper,
                       _argmax(splits, norms), kind="sum")
        r.upper = upper
        r.lower = lower
        r.gap = upper - lower
        r.converged = converged
        r.iterations = iterations
        r.decomposition = [CoeffTensor.from_dense(Y, t.n, t.alphabet) for Y in blocks]
        return r

    if d == 0 or not np.any(dense != 0):
        value = schatten_norm(matricize(dense, splits[0], cap), p)
        return report([dense] + [np.zeros_like(dense)] * d, value, value, 0, True)

    obj = SumNormObjective(dense, p, cap)

    single = [schatten_norm(matricize(dense, s, cap), p) for s in splits]
    k0 = int(np.argmin(single))
    Y0 = np.zeros((d + 1, ) + dense.shape, dtype=np.complex128)
    Y0[k0] = dense

    lower0 = obj.set_random_duals(random_duals, seed)
    rho0 = (d + 1) / np.linalg.norm(dense)
    penalty = ResidualBalancing(max_iter, rho0=rho0)

    solver = Splitting(obj, penalty, tol=tol, name="sum_norm")
    result = solver.run(Y0, lower=lower0, verbose=verbose)

    dlog.append('sum_norm.iterations', result.iterations)
    return report(obj.complete(result.x), result.upper, result.lower, result.iterations,
                  result.converged)
