#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Both sides of the Khintchine-type inequalities for a coefficient tensor:
the free L_p norm of X = sum_I a_I (x) lambda(w_I) and the matricization
norms |A_k|_p, with the ratios between them and the constant-1 (and, for
d = 1, constant-2) checks.
"""

import math

from mpi4py import MPI

import freelp.utils.tracing as tracing

from freelp.utils.datalog import dlog
from freelp.errors import SchemaError
from freelp.tensors import SIGNED, GENERATORS
from freelp.schatten import Exponent, intersection_norm
from freelp.operators import FreeOperator, norm_p2, norm_even_p, separated_operator
from freelp.truncation import opnorm_lower_trunc

DEFAULT_SLACK = 1e-9
DEFAULT_DEPTH = 6


class Check:
    """ A named inequality lhs <= rhs evaluated with absolute slack. """

    def __init__(self, name, lhs, rhs, slack=DEFAULT_SLACK):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.passed = lhs <= rhs + slack
        self.slack = rhs - lhs

    def to_json(self):
        return {"name": self.name, "pass": self.passed, "slack": self.slack}

    def __repr__(self):
        return "Check(%s: %g <= %g, %s)" % (self.name, self.lhs, self.rhs,
                                           "pass" if self.passed else "FAIL")


class KhintchineReport:
    """ L_p side, matricization side, ratios and checks of one tensor. """

    def __init__(self, p, norms, lp, lp_upper=None):
        self.p = p
        self.norms = norms
        self.lp = lp
        self.lp_upper = lp_upper
        self.checks = []
        self.separated = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def ratios(self):
        """ L_p / |A_k|_p per consecutive split (None where |A_k|_p = 0). """
        return [self.lp / s.norm if s.norm > 0 else None for s in self.norms.splits]

    def to_json(self):
        doc = self.norms.to_json()
        if self.p.is_inf:
            value = {"lower": self.lp, "upper": self.lp_upper}
        else:
            value = self.lp
        doc["lp"] = {"p": self.p.to_json(), "value": value}
        doc["ratios"] = self.ratios
        doc["checks"] = [c.to_json() for c in self.checks]
        if self.separated is not None:
            doc["separated"] = {"value": self.separated,
                                "ratio": self.lp / self.separated if self.separated > 0 else None}
        return doc


def _free_norm(X, p, depth, node_budget, tol, max_iter, seed, ball_cap, comm):
    if p.is_inf:
        return opnorm_lower_trunc(X, depth, tol=tol, max_iter=max_iter, seed=seed,
                                  cap=ball_cap).value
    if p.value == 2. and X.distinct_words():
        return norm_p2(X)
    return norm_even_p(X, int(p.value), node_budget=node_budget, comm=comm)


@tracing.traced
def khintchine_report(t, p, depth=None, node_budget=None, tol=None, max_iter=None, seed=None,
                      dense_cap=None, ball_cap=None, separated=False, slack=DEFAULT_SLACK,
                      comm=MPI.COMM_WORLD):
    """ Compare the free L_p norm of *t* with its matricization norms.

    For p = inf the L_p side is the interval [compression lower bound at
    radius *depth*, sum_k |A_k|_inf]; the checks then certify
    |A_k|_inf <= lower bound.

    Checks:

     * ``lower-estimate k=...``: |A_k|_p <= |X|_p for every consecutive split
     * ``degree1-upper`` (d = 1): |X|_p <= 2 max(row, column)

    :param t: coefficient tensor
    :type  t: :class:`freelp.tensors.CoeffTensor`
    :param p: 2, an even integer or inf
    :param dense_cap: maximal rows or columns of a matricization
        (default: default_params['dense_cap'])
    :type  dense_cap: int
    :param ball_cap: maximal size of the compression ball for p = inf
        (default: default_params['ball_cap'])
    :type  ball_cap: int
    :param separated: also compute the norm of the separated-alphabet operator
    :type  separated: bool
    :rtype: :class:`KhintchineReport`
    """
    p = Exponent(p)
    if not (p.is_inf or p.is_even()):
        raise ValueError("The free L_p norm is available for p = 2, 4, 6, ... and inf, got %s" % p)
    depth = DEFAULT_DEPTH if depth is None else depth

    norms = intersection_norm(t, p, cap=dense_cap, comm=comm)
    X = FreeOperator.from_tensor(t)
    lp = _free_norm(X, p, depth, node_budget, tol, max_iter, seed, ball_cap, comm)
    lp_upper = math.fsum(s.norm for s in norms.splits) if p.is_inf else None

    report = KhintchineReport(p, norms, lp, lp_upper)
    for s in norms.splits:
        report.checks.append(Check("lower-estimate k=%d" % len(s.split.alpha), s.norm, lp, slack))
    if t.d == 1:
        row, col = norms.splits[0].norm, norms.splits[1].norm
        report.checks.append(Check("degree1-upper", lp, 2 * max(row, col), slack))

    if separated and t.alphabet == GENERATORS:
        report.separated = _free_norm(separated_operator(t), p, depth, node_budget, tol,
                                      max_iter, seed, ball_cap, comm)

    dlog.append_all({
        'khintchine.lp': lp,
        'khintchine.value': norms.value,
    })
    return report


def signed_diagonal_split(t):
    """ Split a degree-2 signed tensor into (diagonal, off-diagonal) parts.

    The diagonal part holds the indices with i = j + n (mod 2n), i.e. the
    words h_i h_j that reduce to e.
    """
    if t.alphabet != SIGNED or t.d != 2:
        raise SchemaError("The diagonal split needs a degree-2 signed tensor")
    diag = t.zeros_like()
    offdiag = t.zeros_like()
    for (i, j), a in t.items():
        if (i - j - t.n) % (2 * t.n) == 0:
            diag.entries[(i, j)] = a.copy()
        else:
            offdiag.entries[(i, j)] = a.copy()
    return diag, offdiag


def signed_split_check(t, p, node_budget=None, slack=DEFAULT_SLACK):
    """ |total|_p <= |diag|_p + |offdiag|_p for a degree-2 signed tensor.

    Returns (check, reconstructed) where *reconstructed* tells whether
    diag + offdiag equals the input.
    """
    diag, offdiag = signed_diagonal_split(t)
    norm = lambda s: norm_even_p(FreeOperator.from_tensor(s), p, node_budget=node_budget)
    total = norm(t)
    check = Check("signed-split", total, norm(diag) + norm(offdiag), slack)
    return check, (diag + offdiag).allclose(t)
