#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Free polynomials X = sum_I a_I (x) lambda(w_I) and their L_p norms.

The group side carries the normalized trace tau (tau(lambda(w)) = [w = e]),
the coefficient side the unnormalized matrix trace, so that

    |X|_p^p = (tr (x) tau)(|X|^p)     and     |X|_2 = sqrt(sum_I tr(a_I^* a_I))

for pairwise distinct words. Even p are computed exactly from the moments

    (tr (x) tau)((X^* X)^q) = sum over (I_1, ..., I_2q) of
        tr(a_{I_1}^* a_{I_2} ... a_{I_2q}) [w_{I_1}^{-1} w_{I_2} ... w_{I_2q} = e].
"""

import math
import itertools
from collections import namedtuple

import numpy as np
from mpi4py import MPI

import freelp.utils.tracing as tracing
import freelp.utils.parallel as parallel

from freelp.utils import default_params
from freelp.utils.datalog import dlog
from freelp.words import ReducedWord, ProductWord, multiply, inverse, _reduce_onto
from freelp.errors import (RankMismatchError, DuplicateWordError, CapExceededError,
                           BudgetExceededError, SchemaError)
from freelp.tensors import (CoeffTensor, SIGNED, word_map_plain, word_map_signed,
                            word_map_separated, enumerate_partitions, reshape)
from freelp.schatten import schatten_norm

MomentStats = namedtuple('MomentStats', ['value', 'nodes'])

#=============================================================================
# Free operators


def _components(w):
    """ Per-factor letter tuples of a word. """
    if isinstance(w, ProductWord):
        return tuple(c.letters for c in w.components)
    return (w.letters, )


class FreeOperator:
    """ sum_I a_I (x) lambda(w_I) over a free group or a product of free groups.

    *ranks* is a tuple of factor ranks; *product* tells whether words are
    :class:`ProductWord` (one component per factor) or plain
    :class:`ReducedWord` of the single factor.
    """

    def __init__(self, coeffs, words, ranks, product=False):
        ranks = tuple(int(N) for N in ranks)
        if not product and len(ranks) != 1:
            raise RankMismatchError("A single free group needs exactly one rank")
        self.coeffs = coeffs
        self.ranks = ranks
        self.product = product
        self.words = dict(words)

        for I in coeffs.entries:
            if I not in self.words:
                raise SchemaError("Index %s has a coefficient but no word" % (I, ))
        for I, w in self.words.items():
            if product:
                if not isinstance(w, ProductWord) or w.ranks != ranks:
                    raise RankMismatchError("Word %s does not live in the product %s" % (w, ranks))
            elif not isinstance(w, ReducedWord) or w.rank != ranks[0]:
                raise RankMismatchError("Word %s does not live in F_%d" % (w, ranks[0]))

    @classmethod
    def from_tensor(cls, t):
        """ sum_I a_I (x) lambda(w_I) with the tensor's own word map (F_n). """
        wmap = word_map_signed if t.alphabet == SIGNED else word_map_plain
        return cls(t, {I: wmap(I, t.n) for I in t.entries}, (t.n, ))

    @classmethod
    def from_terms(cls, terms, rank, m=1):
        """ Operator from an explicit table [(word, coefficient), ...] in F_rank. """
        t = CoeffTensor(max(len(terms), 1), 1, m)
        words = {}
        for k, (w, a) in enumerate(terms):
            if not isinstance(w, ReducedWord):
                w = ReducedWord(w, rank)
            t[(k, )] = a
            words[(k, )] = w
        return cls(t, words, (rank, ))

    @property
    def m(self):
        return self.coeffs.m

    @property
    def n_generators(self):
        """ Total number of generators over all factors. """
        return sum(self.ranks)

    def terms(self):
        """ [(I, a_I, w_I)] over the non-zero coefficients, in index order. """
        return [(I, a, self.words[I]) for I, a in self.coeffs.items() if np.any(a != 0)]

    def distinct_words(self):
        words = [w for _, _, w in self.terms()]
        return len(set(words)) == len(words)

    def __repr__(self):
        return "FreeOperator(%d terms, ranks=%s, product=%s, m=%d)" % \
            (len(self.terms()), self.ranks, self.product, self.m)


def tensor_power_operator(t):
    """ S_d(a) = sum_I a_I (x) lambda(g_{i_1}) (x) ... (x) lambda(g_{i_d}) over F_n^d. """
    if t.alphabet == SIGNED:
        raise SchemaError("The tensor-power operator needs the generators alphabet")
    ranks = (t.n, ) * t.d
    words = {I: ProductWord([ReducedWord._from_reduced((i + 1, ), t.n) for i in I])
             for I in t.entries}
    return FreeOperator(t, words, ranks, product=True)


def separated_operator(t):
    """ sum_I a_I (x) lambda(g_{1 i_1} ... g_{d i_d}) over F_{nd}. """
    if t.alphabet == SIGNED:
        raise SchemaError("The separated operator needs the generators alphabet")
    words = {I: word_map_separated(I, t.n, t.d) for I in t.entries}
    return FreeOperator(t, words, (t.n * max(t.d, 1), ))


#=============================================================================
# Fell absorption transforms


def character_twist(X, signs):
    """ Multiply a_I by the character value prod_letters signs[gen(letter)].

    *signs* holds one +-1 per generator; for products the generators of the
    factors are numbered consecutively. Inverse letters contribute the same
    sign as their generator. Words are unchanged.
    """
    signs = [int(s) for s in signs]
    if len(signs) != X.n_generators:
        raise RankMismatchError("Got %d signs for %d generators" % (len(signs), X.n_generators))
    if any(s not in (1, -1) for s in signs):
        raise ValueError("Signs must be +1 or -1")

    offsets = np.cumsum((0, ) + X.ranks[:-1])
    coeffs = X.coeffs.zeros_like()
    for I, a in X.coeffs.items():
        chi = 1
        for offset, letters in zip(offsets, _components(X.words[I])):
            for letter in letters:
                chi *= signs[offset + abs(letter) - 1]
        coeffs.entries[I] = chi * a
    return FreeOperator(coeffs, X.words, X.ranks, X.product)


def double_with_regular(X):
    """ sum_I a_I (x) lambda(w_I) (x) lambda(w_I) over G x G. """
    words = {}
    for I, w in X.words.items():
        comps = list(w.components) if X.product else [w]
        words[I] = ProductWord(comps + comps)
    return FreeOperator(X.coeffs, words, X.ranks + X.ranks, product=True)


#=============================================================================
# Moments


def _reduce_stacks(stacks, words):
    return tuple(tuple(_reduce_onto(list(s), w)) for s, w in zip(stacks, words))


def _inverse_key(stacks):
    return tuple(tuple(-a for a in reversed(s)) for s in stacks)


class _MomentKernel:
    """ Precomputed tables of one moment computation. """

    def __init__(self, X, q):
        terms = X.terms()
        self.q = q
        self.S = len(terms)
        self.m = X.m
        self.scalar = X.m == 1

        if self.scalar:
            self.coef = [complex(a[0, 0]) for _, a, _ in terms]
            self.adj = [c.conjugate() for c in self.coef]
        else:
            self.coef = [a for _, a, _ in terms]
            self.adj = [a.conj().T for a in self.coef]
        self.fwd = [_components(w) for _, _, w in terms]
        self.inv = [_components(inverse(w)) for _, _, w in terms]
        ncomp = len(X.ranks)
        self.identity = ((), ) * ncomp
        self.maxlen = [max([len(f[c]) for f in self.fwd] or [0]) for c in range(ncomp)]

        # last X^*X factor aggregated by its reduced group element
        self.table = {}
        for i in range(self.S):
            for j in range(self.S):
                key = _reduce_stacks(self.inv[i], self.fwd[j])
                self.table[key] = self.table.get(key, 0) + self.mul(self.adj[i], self.coef[j])

    def mul(self, x, y):
        if self.scalar:
            return x * y
        return x @ y

    def trace(self, x):
        if self.scalar:
            return x
        return np.trace(x)

    def pruned(self, stacks, remaining):
        for s, ml in zip(stacks, self.maxlen):
            if len(s) > remaining * ml:
                return True
        return False

    def first_position(self, i, budget):
        """ Sum of all closed tuples with I_1 = i and visited node count. """
        q = self.q
        if q == 1:
            total = 0.
            nodes = 0
            for j in range(self.S):
                if _reduce_stacks(self.inv[i], self.fwd[j]) == self.identity:
                    nodes += 1
                    total += self.trace(self.mul(self.adj[i], self.coef[j]))
            return total, nodes

        depth = 2 * q - 2
        nodes = [1]

        def dfs(k, stacks, P):
            if k == depth:
                agg = self.table.get(_inverse_key(stacks))
                if agg is None:
                    return 0.
                nodes[0] += 1
                return self.trace(self.mul(P, agg))

            words, coefs = (self.inv, self.adj) if k % 2 == 0 else (self.fwd, self.coef)
            remaining = 2 * q - k - 1
            total = 0.
            for j in range(self.S):
                child = _reduce_stacks(stacks, words[j])
                if self.pruned(child, remaining):
                    continue
                nodes[0] += 1
                if nodes[0] > budget:
                    raise BudgetExceededError("Moment enumeration exceeded %d nodes" % budget)
                total += dfs(k + 1, child, self.mul(P, coefs[j]))
            return total

        total = dfs(1, self.inv[i], self.adj[i])
        return total, nodes[0]


@tracing.traced
def moment_even(X, q, node_budget=None, return_stats=False, comm=MPI.COMM_WORLD):
    """ (tr (x) tau)((X^* X)^q) by a pruned depth-first search over word tuples.

    The search places tuple positions left to right, keeping the reduced
    prefix word (per factor) and the running coefficient product. A branch
    is abandoned when a factor's prefix is longer than the letters the
    remaining positions can cancel. The last X^* X factor is not searched:
    its contributions are aggregated by reduced group element once and
    looked up with the inverse of the prefix.

    The first tuple position is distributed over the MPI ranks; partial
    sums are reduced in index order.

    :param X: the operator
    :type  X: :class:`FreeOperator`
    :param q: half the exponent, q >= 1
    :type  q: int
    :param node_budget: maximal number of visited nodes (default: default_params['node_budget'])
    :param return_stats: return :class:`MomentStats` (value, nodes) instead of the value
    :rtype: float or :class:`MomentStats`
    :raises BudgetExceededError: when the search visits more nodes than allowed
    """
    q = int(q)
    assert q >= 1
    if node_budget is None:
        node_budget = default_params['node_budget']

    kernel = _MomentKernel(X, q)
    first, last = parallel.stride_data(kernel.S, comm)

    my_values = []
    my_nodes = 0
    exceeded = False
    for i in range(first, last):
        try:
            value, nodes = kernel.first_position(i, node_budget - my_nodes)
        except BudgetExceededError:
            exceeded = True
            break
        my_values.append(complex(value))
        my_nodes += nodes

    if comm.size > 1:
        exceeded = comm.allreduce(exceeded, op=MPI.LOR)
        nodes = comm.allreduce(my_nodes)
    else:
        nodes = my_nodes
    if exceeded or nodes > node_budget:
        raise BudgetExceededError("Moment enumeration exceeded %d nodes" % node_budget)

    value = parallel.ordered_sum(my_values, comm)
    value = max(complex(value).real, 0.)
    dlog.append('moment.nodes', nodes)

    if return_stats:
        return MomentStats(value, nodes)
    return value


@tracing.traced
def moment_even_bruteforce(X, q, cap=None, return_stats=False):
    """ The moment of :func:`moment_even` by plain enumeration of all 2q-tuples.

    Visited nodes are counted per tuple position, i.e. sum_{k=1}^{2q} S^k
    for S supported indices.

    :raises CapExceededError: if S^{2q} exceeds *cap* (default: default_params['bruteforce_cap'])
    """
    q = int(q)
    assert q >= 1
    if cap is None:
        cap = default_params['bruteforce_cap']

    terms = X.terms()
    S = len(terms)
    if S ** (2 * q) > cap:
        raise CapExceededError("%d^%d tuples exceed the brute-force cap %d" % (S, 2 * q, cap))

    m = X.m
    identity = np.eye(m, dtype=np.complex128)
    total = []
    for tup in itertools.product(range(S), repeat=2 * q):
        w = None
        P = identity
        for pos, j in enumerate(tup):
            _, a, wj = terms[j]
            if pos % 2 == 0:
                wj = inverse(wj)
                a = a.conj().T
            w = wj if w is None else multiply(w, wj)
            P = P @ a
        if w.is_identity():
            total.append(complex(np.trace(P)))

    value = max(math.fsum(z.real for z in total), 0.)
    if return_stats:
        nodes = sum(S ** k for k in range(1, 2 * q + 1))
        return MomentStats(value, nodes)
    return value


#=============================================================================
# Norms


def norm_p2(X):
    """ |X|_2 = sqrt(sum_I tr(a_I^* a_I)) for pairwise distinct words.

    :raises DuplicateWordError: if two supported indices share a word; use
        :func:`norm_even_p` with p = 2 in that case
    """
    if not X.distinct_words():
        raise DuplicateWordError("Operator has coincident words; use norm_even_p(X, 2)")
    return math.sqrt(math.fsum(np.vdot(a, a).real for _, a, _ in X.terms()))


def norm_even_p(X, p, node_budget=None, comm=MPI.COMM_WORLD):
    """ |X|_p = moment_even(X, p/2)^{1/p} for even p >= 2. """
    p = float(p)
    if p < 2 or p != int(p) or int(p) % 2:
        raise ValueError("norm_even_p needs an even integer p >= 2, got %g" % p)
    return moment_even(X, int(p) // 2, node_budget=node_budget, comm=comm) ** (1. / p)


def check_iteration_bound(t, p, node_budget=None, cap=None):
    """ |S_d(a)|_p <= 2^d max_(alpha, beta) |A_(alpha, beta)|_p for even p >= 2.

    Returns (lhs, rhs, passed).
    """
    lhs = norm_even_p(tensor_power_operator(t), p, node_budget=node_budget)
    rhs = 2 ** t.d * max(schatten_norm(reshape(t, s, cap=cap), p)
                         for s in enumerate_partitions(t.d))
    return lhs, rhs, lhs <= rhs * (1 + 1e-12) + 1e-12
