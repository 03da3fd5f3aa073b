#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Suites comparing the free L_p norm with the matricization norms: the lower
estimate with constant 1, the degree-1 sandwich, the converse for the
tensor-power operator and the signed alphabet.
"""

import itertools

from freelp.verify import Case, Job, register
from freelp.utils.instances import random_tensor
from freelp.tensors import (CoeffTensor, SIGNED, enumerate_partitions, reshape, mask_pair,
                            apply_projection_Q, validate_cancellation, word_map_signed)
from freelp.schatten import schatten_norm
from freelp.operators import tensor_power_operator, norm_even_p, check_iteration_bound
from freelp.khintchine import khintchine_report, signed_split_check, DEFAULT_SLACK

LOWER_CLAIM = "lower estimate with constant 1: |A_k|_p <= |X|_p for every consecutive split"


def _lower_case(description, t, p):
    report = khintchine_report(t, p)
    lower = [c for c in report.checks if c.name.startswith("lower-estimate")]
    return Case(description, all(c.passed for c in lower), [c.lhs for c in lower], report.lp,
                DEFAULT_SLACK, anchor="lower estimate with constant 1", claim=LOWER_CLAIM)


@register("lower-estimate")
def lower_estimate(seed, cases):
    cases = 50 if cases is None else cases

    def job(d, p, k):
        n, m = 2 + k % 2, 1 + (k // 2) % 2
        t = random_tensor(n, d, m, seed=seed + k)
        return _lower_case("d=%d p=%d seed=%d n=%d m=%d" % (d, p, seed + k, n, m), t, p)

    return [Job("d=%d p=%d seed=%d" % (d, p, seed + k), lambda d=d, p=p, k=k: job(d, p, k))
            for d in (1, 2, 3) for p in (2, 4) for k in range(cases)]


@register("degree1")
def degree1(seed, cases):
    cases = 100 if cases is None else cases

    def job(k):
        n, m = 1 + k % 4, 1 + (k // 4) % 3
        t = random_tensor(n, 1, m, seed=seed + k)
        result = []
        for p in (2, 4, 6):
            report = khintchine_report(t, p)
            row, col = report.norms.splits[0].norm, report.norms.splits[1].norm
            result.append(Case("p=%d seed=%d n=%d m=%d" % (p, seed + k, n, m), report.passed,
                               report.lp, [max(row, col), 2 * max(row, col)], DEFAULT_SLACK,
                               anchor="degree-1 Khintchine inequality",
                               claim="max(row, col) <= |sum a_k (x) lambda(g_k)|_p "
                                     "<= 2 max(row, col)"))
        return result

    return [Job("seed=%d" % (seed + k), lambda k=k: job(k)) for k in range(cases)]


@register("converse")
def converse(seed, cases):
    cases = 20 if cases is None else cases

    def job(d, p, k):
        n, m = 2, 1 + k % 2
        t = random_tensor(n, d, m, seed=seed + k)
        lp = norm_even_p(tensor_power_operator(t), p)
        norms = [schatten_norm(reshape(t, s), p) for s in enumerate_partitions(d)]
        description = "d=%d p=%d seed=%d" % (d, p, seed + k)
        lhs, rhs, passed = check_iteration_bound(t, p)
        return [
            Case(description, all(v <= lp + DEFAULT_SLACK for v in norms), norms, lp,
                 DEFAULT_SLACK, anchor="converse with constant 1",
                 claim="every partition norm <= |S_d(a)|_p (constant 1)"),
            Case(description + " iterated", passed, lhs, rhs, DEFAULT_SLACK,
                 anchor="iterated Khintchine inequality",
                 claim="|S_d(a)|_p <= 2^d max over partitions"),
        ]

    return [Job("d=%d p=%d seed=%d" % (d, p, seed + k), lambda d=d, p=p, k=k: job(d, p, k))
            for d in (1, 2, 3) for p in (2, 4) for k in range(cases)]


@register("cancellation")
def cancellation(seed, cases):
    cases = 10 if cases is None else cases

    def exhaustive(n, d):
        wrong = []
        for I in itertools.product(range(2 * n), repeat=d):
            if validate_cancellation(I, n) != (len(word_map_signed(I, n)) == d):
                wrong.append(list(I))
        return Case("exhaustive n=%d d=%d" % (n, d), not wrong, wrong, [], 0,
                    anchor="cancellation property",
                    claim="cancellation property iff h_{i_1}...h_{i_d} is reduced of length d")

    def projection(k):
        n, d = 2 + k % 2, 2 + k % 2
        t = CoeffTensor(n, d, 1, SIGNED, random_tensor(2 * n, d, seed=seed + k).entries)
        Qt = apply_projection_Q(t)
        masked = t
        for s in range(1, d):
            masked = mask_pair(masked, s)
        passed = apply_projection_Q(Qt).allclose(Qt) and masked.allclose(Qt)
        return Case("projection seed=%d n=%d d=%d" % (seed + k, n, d), passed, len(Qt), len(masked),
                    0, anchor="diagonal projection Q",
                    claim="Q is idempotent and equals the composition of the pair masks")

    jobs = [Job("exhaustive n=%d d=%d" % (n, d), lambda n=n, d=d: exhaustive(n, d))
            for n in (1, 2, 3) for d in (1, 2, 3)]
    jobs += [Job("projection seed=%d" % (seed + k), lambda k=k: projection(k))
             for k in range(cases)]
    return jobs


@register("signed")
def signed(seed, cases):
    n_lower = 50 if cases is None else cases
    n_split = 20 if cases is None else cases

    def lower(p, k):
        n, m = 2 + k % 2, 1 + (k // 2) % 2
        t = random_tensor(n, 2, m, SIGNED, seed=seed + k)
        return _lower_case("p=%d seed=%d n=%d m=%d" % (p, seed + k, n, m), t, p)

    def split(p, k):
        n = 2 + k % 2
        t = CoeffTensor(n, 2, 1, SIGNED, random_tensor(2 * n, 2, seed=seed + k).entries)
        check, reconstructed = signed_split_check(t, p)
        return Case("split p=%d seed=%d n=%d" % (p, seed + k, n), check.passed and reconstructed,
                    check.lhs, check.rhs, DEFAULT_SLACK,
                    anchor="transposition lemma for inverses",
                    claim="|total|_p <= |diagonal|_p + |off-diagonal|_p and diag + offdiag = total")

    jobs = [Job("p=%d seed=%d" % (p, seed + k), lambda p=p, k=k: lower(p, k))
            for p in (2, 4) for k in range(n_lower)]
    jobs += [Job("split p=%d seed=%d" % (p, seed + k), lambda p=p, k=k: split(p, k))
             for p in (2, 4) for k in range(n_split)]
    return jobs
