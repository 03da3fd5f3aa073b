#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Penalty schedules for the splitting driver in :mod:`freelp.optim`.

A schedule holds the current ADMM penalty *rho*, is told the primal and dual
residuals of every iteration and decides whether to rescale rho and whether
the iteration is over.
"""


class ResidualBalancing:
    """ Keep the primal and dual residuals within a factor *mu* of each other.

    Every *period* iterations rho is multiplied by *factor* when the primal
    residual dominates and divided by it when the dual residual dominates.
    After *adapt_until* iterations rho stays fixed.
    """

    def __init__(self, max_iter, rho0=1., mu=10., factor=2., period=10, adapt_until=1000):
        self.max_iter = max_iter
        self.rho0 = rho0
        self.mu = mu
        self.factor = factor
        self.period = period
        self.adapt_until = adapt_until
        self.reset()

    def reset(self):
        """ Restart the schedule. """
        self.rho = self.rho0
        self.cur_pos = 0
        self.finished = self.max_iter <= 0

    def next(self, primal, dual):
        """ Advance by one iteration.

        :returns: the factor rho was multiplied by (1. if unchanged); the
            scaled dual variable has to be divided by it
        """
        self.cur_pos += 1
        if self.cur_pos >= self.max_iter:
            self.finished = True

        scale = 1.
        if self.cur_pos % self.period == 0 and self.cur_pos <= self.adapt_until:
            if primal > self.mu * dual:
                scale = self.factor
            elif dual > self.mu * primal:
                scale = 1. / self.factor
        self.rho *= scale
        return scale
