#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Canned and seeded random coefficient tensors used by the verification suites,
the tests and the ``random`` command.
"""

import itertools

import numpy as np

from freelp.errors import CapExceededError
from freelp.tensors import CoeffTensor, apply_projection_Q, alphabet_size, GENERATORS, SIGNED

#=============================================================================
# Structured tensors


def counterexample_tensor(n):
    """ The degree-2 tensor a_ij = e_ji with m = n.

    Its consecutive matricizations have norms n^{1/2+1/p}, n^{2/p},
    n^{1/2+1/p}, while the transposed split alpha={2} has norm n for every p.

    :param n: number of generators (and coefficient size)
    :type  n: int
    :rtype: :class:`freelp.tensors.CoeffTensor`
    """
    t = CoeffTensor(n, 2, n)
    for i in range(n):
        for j in range(n):
            a = np.zeros((n, n))
            a[j, i] = 1.
            t[i, j] = a
    return t


def ones_tensor(n, d, m=1, alphabet=GENERATORS):
    """ Every index carries the m x m identity. """
    t = CoeffTensor(n, d, m, alphabet)
    eye = np.eye(m)
    for I in itertools.product(range(t.A), repeat=d):
        t[I] = eye
    return t


#=============================================================================
# Random tensors


def random_tensor(n, d, m=1, alphabet=GENERATORS, seed=0, density=1., cap=None,
                  integer=False):
    """ Seeded random tensor with complex Gaussian entries.

    Real and imaginary parts are independent standard normals. Each index is
    kept with probability *density*; the keep/drop draws come before the
    coefficient draws of an index, in lexicographic index order. Signed
    tensors are passed through the projection Q.

    :param seed: seed of the numpy.random.RandomState stream
    :type  seed: int
    :param density: inclusion probability of each index, 0 < density <= 1
    :type  density: float
    :param cap: maximal number of indices A^d (default: 10^6)
    :type  cap: int
    :param integer: draw integer coefficients from {-2, ..., 2} instead
    :type  integer: bool
    :rtype: :class:`freelp.tensors.CoeffTensor`
    """
    if not 0. < density <= 1.:
        raise ValueError("density must lie in (0, 1]")
    A = alphabet_size(n, alphabet)
    if cap is None:
        cap = 10**6
    if A ** d > cap:
        raise CapExceededError("%d^%d indices exceed the cap %d" % (A, d, cap))

    rng = np.random.RandomState(seed)
    t = CoeffTensor(n, d, m, alphabet)
    for I in itertools.product(range(A), repeat=d):
        if density < 1. and rng.uniform() >= density:
            continue
        if integer:
            a = rng.randint(-2, 3, size=(m, m)) + 1j * rng.randint(-2, 3, size=(m, m))
        else:
            a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        t[I] = a

    if alphabet == SIGNED:
        t = apply_projection_Q(t)
    return t
