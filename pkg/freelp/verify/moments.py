#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Suites on the moment and compression kernels: Fell absorption, the
brute-force oracle and the p = inf compression path.
"""

import math
import itertools

from freelp.verify import Case, Job, register, close_rel
from freelp.utils.instances import random_tensor, ones_tensor
from freelp.operators import (FreeOperator, character_twist, double_with_regular, moment_even,
                              moment_even_bruteforce, norm_even_p, norm_p2)
from freelp.truncation import opnorm_lower_path
from freelp.schatten import intersection_norm

RTOL = 1e-10
ORACLE_CONFIGS = list(itertools.product((1, 2, 3), (1, 2), (1, 2), (1, 2)))


def _moments(X, qs=(1, 2, 3)):
    return [moment_even(X, q) for q in qs]


def _same(observed, expected, rtol=RTOL):
    return all(close_rel(o, e, rtol) or abs(o - e) <= 1e-12 for o, e in zip(observed, expected))


@register("fell")
def fell(seed, cases):
    cases = 20 if cases is None else cases

    def twists(n, d):
        m = 1 + d % 2
        X = FreeOperator.from_tensor(random_tensor(n, d, m, seed=seed + 10 * n + d))
        expected = _moments(X)
        result = []
        for signs in itertools.product((1, -1), repeat=n):
            observed = _moments(character_twist(X, signs))
            result.append(Case("twist n=%d d=%d signs=%s" % (n, d, list(signs)),
                               _same(observed, expected), observed, expected, RTOL,
                               anchor="Fell absorption principle",
                               claim="lambda (x) chi is equivalent to lambda (x) 1: moments q <= 3 "
                                     "are twist invariant"))
        return result

    def doubling(k):
        n, d, m = 2 + k % 2, 1 + k % 2, 1 + (k // 2) % 2
        X = FreeOperator.from_tensor(random_tensor(n, d, m, seed=seed + k))
        observed = _moments(double_with_regular(X))
        expected = _moments(X)
        return Case("doubling seed=%d n=%d d=%d m=%d" % (seed + k, n, d, m),
                    _same(observed, expected), observed, expected, RTOL,
                    anchor="Fell absorption principle",
                    claim="lambda (x) lambda is equivalent to lambda (x) 1: moments q <= 3 "
                          "are doubling invariant")

    jobs = [Job("twist n=%d d=%d" % (n, d), lambda n=n, d=d: twists(n, d))
            for n in (1, 2, 3) for d in (1, 2)]
    jobs += [Job("doubling seed=%d" % (seed + k), lambda k=k: doubling(k)) for k in range(cases)]
    return jobs


@register("oracle")
def oracle(seed, cases):
    cases = 50 if cases is None else cases

    def job(k):
        q, n, d, m = ORACLE_CONFIGS[k % len(ORACLE_CONFIGS)]
        X = FreeOperator.from_tensor(random_tensor(n, d, m, seed=seed + k))
        dfs = moment_even(X, q, return_stats=True)
        brute = moment_even_bruteforce(X, q, return_stats=True)
        description = "q=%d n=%d d=%d m=%d seed=%d" % (q, n, d, m, seed + k)
        result = [Case(description, _same([dfs.value], [brute.value]), dfs.value, brute.value,
                       RTOL, anchor="trace of reduced words",
                       claim="pruned enumeration equals brute force")]
        if q == 3 and len(X.terms()) >= 4:
            ratio = brute.nodes / float(dfs.nodes)
            result.append(Case(description + " nodes", ratio >= 10., [dfs.nodes, brute.nodes],
                               10., 0, anchor="trace of reduced words",
                               claim="pruned enumeration visits 10x fewer nodes"))
        return result

    def tuple_count(n):
        X = FreeOperator.from_tensor(ones_tensor(n, 1))
        value = moment_even(X, 2)
        expected = 2 * n * n - n
        return Case("tuple count n=%d" % n, value == expected, value, expected, 0,
                    anchor="trace of reduced words",
                    claim="all-ones degree-1 moment at q = 2 is 2n^2 - n")

    def p2(k):
        X = FreeOperator.from_tensor(random_tensor(2, 2, 2, seed=seed + k))
        observed, expected = norm_even_p(X, 2), norm_p2(X)
        return Case("p=2 seed=%d" % (seed + k), close_rel(observed, expected, RTOL), observed,
                    expected, RTOL, anchor="moment method at p = 2",
                    claim="|X|_2 from the moments equals the Frobenius mass")

    jobs = [Job("seed=%d" % (seed + k), lambda k=k: job(k)) for k in range(cases)]
    jobs += [Job("tuple count n=%d" % n, lambda n=n: tuple_count(n)) for n in (2, 3)]
    jobs += [Job("p=2 seed=%d" % (seed + k), lambda k=k: p2(k)) for k in range(3)]
    return jobs


@register("truncation")
def truncation(seed, cases):
    radius = 12

    def generators():
        X = FreeOperator.from_terms([((i, ), 1.) for i in range(1, 4)], 3)
        path = opnorm_lower_path(X, range(1, radius + 1), seed=seed)
        values = [r.value for r in path]
        target = 2 * math.sqrt(2)
        monotone = all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
        moments = [norm_even_p(X, p) for p in range(2, 17, 2)]
        return [
            Case("monotone in L", monotone, values, "non-decreasing", 1e-12,
                 anchor="compression to the word ball",
                 claim="nested compressions give non-decreasing lower bounds"),
            Case("L=%d" % radius, abs(values[-1] - target) <= 0.05 * target, values[-1], target,
                 0.05, anchor="norm of the free generator sum",
                 claim="|lambda(g_1) + lambda(g_2) + lambda(g_3)| = 2 sqrt(2)"),
            Case("even moments", all(v <= values[-1] + 1e-6 for v in moments), moments,
                 values[-1], 1e-6, anchor="compression to the word ball",
                 claim="|X|_p <= |X|_inf for p = 2, ..., 16"),
        ]

    def matrix(k):
        t = random_tensor(2, 1, 2, seed=seed + k)
        X = FreeOperator.from_tensor(t)
        values = [r.value for r in opnorm_lower_path(X, range(1, 5), seed=seed)]
        # reported, not asserted
        upper = math.fsum(s.norm for s in intersection_norm(t, math.inf).splits)
        return Case("matrix seed=%d" % (seed + k),
                    all(b >= a - 1e-12 for a, b in zip(values, values[1:])),
                    {"path": values, "upper": upper}, "non-decreasing", 1e-12,
                    anchor="compression to the word ball",
                    claim="nested compressions give non-decreasing lower bounds")

    jobs = [Job("generators", generators)]
    jobs += [Job("matrix seed=%d" % (seed + k), lambda k=k: matrix(k))
             for k in range(5 if cases is None else cases)]
    return jobs
