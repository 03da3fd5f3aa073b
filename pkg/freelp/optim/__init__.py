#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Splitting solver for convex problems of exchange form

    minimize  sum_k f_k(Y_k)   subject to   sum_k Y_k = target

whose blocks f_k have cheap proximal maps and whose dual comes with a
certified lower bound.

A :class:`SplitObjective` evaluates f at feasible points, the proximal maps
of the blocks and a dual certificate; :class:`Splitting` runs ADMM with a
:class:`schedule.ResidualBalancing` penalty until the certified gap closes
or the schedule runs out.
"""

import warnings
from abc import ABCMeta, abstractmethod

import numpy as np

import freelp.utils.tracing as tracing

from freelp.errors import ConvergenceWarning
from freelp.utils.datalog import dlog


#=============================================================================
# Objective base class

class SplitObjective(metaclass=ABCMeta):
    """ sum_k f_k(Y_k) over decompositions sum_k Y_k = target.

    Subclasses set *target* (ndarray) and *nblocks*. Points handed to
    :meth:`value` and :meth:`lower_bound` are the nblocks - 1 free blocks;
    the last block is target minus their sum.
    """

    target = None
    nblocks = 0

    def complete(self, free):
        """ All blocks of the feasible point given by the free blocks. """
        return list(free) + [self.target - np.sum(free, axis=0)]

    @abstractmethod
    def value(self, free):
        pass

    @abstractmethod
    def prox(self, k, V, tau):
        """ argmin_Y tau f_k(Y) + |Y - V|^2 / 2 """
        pass

    @abstractmethod
    def certificate(self, B):
        """ Lower bound on min f from the dual tensor *B* (any nonzero B is valid). """
        pass

    def lower_bound(self, free):
        """ Certified lower bound built from a point; 0 if there is none. """
        return 0.


class SplitResult:
    """ Best point found together with its certified interval. """

    def __init__(self, x, upper, lower, iterations, converged):
        self.x = x
        self.upper = upper
        self.lower = lower
        self.gap = upper - lower
        self.iterations = iterations
        self.converged = converged

    def __repr__(self):
        return "SplitResult(upper=%g, lower=%g, gap=%g, iterations=%d, converged=%s)" % \
            (self.upper, self.lower, self.gap, self.iterations, self.converged)


#=============================================================================
# ADMM driver

class Splitting:
    """ Scaled-form ADMM for the exchange problem of a :class:`SplitObjective`. """

    def __init__(self, objective, penalty, tol=1e-8, check_every=10, name="splitting"):
        """
        :param objective: the function to minimize
        :type  objective: :class:`SplitObjective` instance
        :param penalty: ADMM penalty policy, also bounds the iterations
        :type  penalty: :class:`schedule.ResidualBalancing` instance
        :param tol: stop when (upper - lower) <= tol * upper
        :type  tol: float
        :param check_every: iterations between certificate evaluations
        :type  check_every: int
        :param name: prefix of the datalog tables (name.upper, name.gap, name.rho)
        :type  name: str
        """
        self.objective = objective
        self.penalty = penalty
        self.tol = tol
        self.check_every = check_every
        self.name = name

    def _closed(self, upper, lower):
        return upper - lower <= self.tol * abs(upper)

    @tracing.traced
    def run(self, Y0, lower=0., verbose=False):
        """ Minimize starting from the blocks *Y0* (shape (nblocks, ...)).

        *lower* is a lower bound known in advance (e.g. from seeded random dual tensors);
        it is combined with the certificates of the dual iterates.

        When *verbose* is True a progress message is printed at every
        certificate check via :func:`dlog.progress(...)`.
        """
        obj = self.objective
        pen = self.penalty
        pen.reset()
        N = obj.nblocks

        Y = np.array(Y0, dtype=np.complex128)
        u = np.zeros_like(obj.target, dtype=np.complex128)
        mean_excess = (Y.sum(axis=0) - obj.target) / N

        best_x = Y[:-1].copy()
        best_f = obj.value(best_x)
        lower = min(max(lower, obj.lower_bound(best_x)), best_f)

        it = 0
        while not self._closed(best_f, lower) and not pen.finished:
            tau = 1. / pen.rho
            Y_old, excess_old = Y, mean_excess
            Y = np.array([obj.prox(k, Y[k] - mean_excess - u, tau) for k in range(N)])
            mean_excess = (Y.sum(axis=0) - obj.target) / N
            u = u + mean_excess
            it += 1

            f = obj.value(Y[:-1])
            if f < best_f:
                best_x, best_f = Y[:-1].copy(), f

            if it % self.check_every == 0:
                lower = min(max(lower, obj.certificate(pen.rho * u)), best_f)
                dlog.append_all({
                    self.name + '.upper': best_f,
                    self.name + '.gap': best_f - lower,
                    self.name + '.rho': pen.rho,
                })
                if verbose:
                    dlog.progress("%s iteration %d of %d" % (self.name, it, pen.max_iter),
                                  it / float(pen.max_iter))

            primal = np.sqrt(N) * np.linalg.norm(mean_excess)
            dual = pen.rho * np.linalg.norm((Y - Y_old) - (mean_excess - excess_old))
            u = u / pen.next(primal, dual)

        lower = max(lower, obj.certificate(pen.rho * u), obj.lower_bound(best_x))
        lower = min(lower, best_f)
        converged = self._closed(best_f, lower)
        if not converged:
            warnings.warn("%s stopped after %d iterations with gap %g" %
                          (self.name, it, best_f - lower), ConvergenceWarning)
        return SplitResult(best_x, best_f, lower, it, converged)
