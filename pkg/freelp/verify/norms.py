#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Suites on the matricization side: the counterexample table, the terms of
the degree-2 transposition argument and the sum norm.
"""

import numpy as np

from freelp.verify import Case, Job, register, close_rel
from freelp.utils.instances import counterexample_tensor, random_tensor
from freelp.tensors import PartitionSplit, enumerate_partitions
from freelp.schatten import (Exponent, intersection_norm, partition_spectrum, split_norm,
                             transposition_terms, sum_norm)

EXPONENTS = (1., 1.5, 2., 3., 4., np.inf)
SLACK = 1e-9


def counterexample_values(n, p):
    """ Expected |A_0|, |A_1|, |A_2| and |A_{alpha={2}}| of a_ij = e_ji. """
    inv_p = 0. if np.isinf(p) else 1. / p
    outer = n ** (0.5 + inv_p)
    return [outer, n ** (2 * inv_p), outer, float(n)]


@register("counterexample")
def counterexample(seed, cases):
    def job(n, p):
        t = counterexample_tensor(n)
        report = intersection_norm(t, p)
        observed = [s.norm for s in report.splits]
        observed.append(split_norm(t, PartitionSplit(2, (2, )), p))
        expected = counterexample_values(n, p)
        passed = all(close_rel(o, e, 1e-9) for o, e in zip(observed, expected))
        return Case("n=%d p=%s" % (n, Exponent(p)), passed, observed, expected, 1e-9,
                    anchor="counterexample for transposed terms",
                    claim="a_ij = e_ji: consecutive norms n^(1/2+1/p), n^(2/p), n^(1/2+1/p); "
                          "transposed split n")

    return [Job("n=%d p=%g" % (n, p), lambda n=n, p=p: job(n, p))
            for n in (2, 3, 4) for p in EXPONENTS]


@register("transposition")
def transposition(seed, cases):
    cases = 50 if cases is None else cases

    def job(k):
        n, m = 2 + k % 2, 1 + (k // 2) % 2
        terms = transposition_terms(random_tensor(n, 2, m, seed=seed + k))
        A, B, C = terms['A'], terms['B'], terms['C']
        passed = (B <= A + SLACK and B <= C + SLACK and A <= terms['row'] + SLACK and
                  C <= terms['column'] + SLACK)
        return Case("seed=%d n=%d m=%d" % (seed + k, n, m), passed, [B, A, C],
                    [A, terms['row'], terms['column']], SLACK,
                    anchor="transposition lemma, terms A, B, C",
                    claim="B <= A <= row norm and B <= C <= column norm at p = inf")

    def reduction(d):
        spectrum = partition_spectrum(random_tensor(2, d, seed=seed), 2)
        observed, passed = [], True
        for s in spectrum.splits:
            if not s.transposed:
                continue
            smaller = [r.transposition_number() for r in s.reduces_to]
            observed.append([s.T] + smaller)
            passed = passed and all(T < s.T for T in smaller)
        passed = passed and len(spectrum.splits) == len(enumerate_partitions(d))
        return Case("reduction d=%d" % d, passed, observed, "strictly decreasing", 0.,
                    anchor="transposition number",
                    claim="transposed splits reduce to splits of smaller transposition number")

    jobs = [Job("seed=%d" % (seed + k), lambda k=k: job(k)) for k in range(cases)]
    jobs += [Job("reduction d=%d" % d, lambda d=d: reduction(d)) for d in (2, 3, 4)]
    return jobs


@register("sum-norm")
def sum_norm_suite(seed, cases):
    n_frob = 50 if cases is None else cases
    n_gap = 10 if cases is None else cases

    def frobenius(k):
        n, d, m = 2 + k % 2, 1 + k % 3, 1 + (k // 3) % 2
        t = random_tensor(n, d, m, seed=seed + k)
        report = sum_norm(t, 2)
        mass = t.frobenius_mass()
        return Case("p=2 seed=%d n=%d d=%d m=%d" % (seed + k, n, d, m),
                    close_rel(report.value, mass, 1e-8), report.value, mass, 1e-8,
                    anchor="sum norm at p = 2",
                    claim="at p = 2 every matricization is isometric, sum norm = Frobenius mass")

    def gap(k, p):
        d = 2 + k % 2
        t = random_tensor(2, d, 2, seed=seed + k)
        report = sum_norm(t, p)
        single = min(split_norm(t, s, p) for s in report.norms)
        rel = report.gap / report.upper if report.upper > 0 else 0.
        observed = {"lower": report.lower, "upper": report.upper, "single": single,
                    "relative_gap": rel, "iterations": report.iterations}
        passed = (rel <= 1e-4 and report.lower <= report.upper
                  and report.upper <= single * (1. + 1e-12))
        return Case("p=%g seed=%d d=%d m=2" % (p, seed + k, d), passed, observed, 0., 1e-4,
                    anchor="duality of sum and intersection norms",
                    claim="dual certificate closes the sum-norm interval")

    jobs = [Job("p=2 seed=%d" % (seed + k), lambda k=k: frobenius(k)) for k in range(n_frob)]
    jobs += [Job("p=%g seed=%d" % (p, seed + k), lambda k=k, p=p: gap(k, p))
             for p in (1., 1.5) for k in range(n_gap)]
    return jobs
