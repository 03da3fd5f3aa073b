#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Verification suites: seeded collections of checkable claims about the norms
computed by freelp.

A suite is a function ``suite(seed, cases)`` returning a list of
:class:`Job` objects; :func:`run_suite` distributes the jobs over the MPI
ranks, evaluates them and collects the resulting :class:`Case` objects in
job order.

Example::

    from freelp.verify import run_suite

    result = run_suite("counterexample")
    assert result.passed
"""

import time

from mpi4py import MPI

import freelp.utils.parallel as parallel

from freelp.utils.datalog import dlog

SUITES = {}
SUITE_ORDER = []


class Case:
    """ Outcome of one check: observed vs expected values within tolerance.

    *anchor* names the result the check comes from, *claim* states what is
    checked.
    """

    def __init__(self, description, passed, observed, expected, tol, claim="", anchor=""):
        self.description = description
        self.passed = bool(passed)
        self.observed = observed
        self.expected = expected
        self.tol = float(tol)
        self.claim = claim
        self.anchor = anchor

    def to_json(self):
        return {
            "description": self.description,
            "anchor": self.anchor,
            "claim": self.claim,
            "pass": self.passed,
            "observed": self.observed,
            "expected": self.expected,
            "tol": self.tol,
        }

    def __repr__(self):
        return "Case(%s, %s)" % (self.description, "pass" if self.passed else "FAIL")


class Job:
    """ A deferred case: *func()* returns a :class:`Case` or a list of cases. """

    def __init__(self, description, func):
        self.description = description
        self.func = func

    def __call__(self):
        result = self.func()
        if isinstance(result, Case):
            return [result]
        return list(result)


class SuiteResult:
    """ All cases of one suite run; passes iff every case passes. """

    def __init__(self, suite, cases, wall_time=0.):
        self.suite = suite
        self.cases = list(cases)
        self.wall_time = wall_time

    @property
    def passed(self):
        return all(c.passed for c in self.cases)

    @property
    def failures(self):
        return [c for c in self.cases if not c.passed]

    def to_json(self):
        return {
            "suite": self.suite,
            "pass": self.passed,
            "cases": [c.to_json() for c in self.cases],
        }

    def __repr__(self):
        return "SuiteResult(%s: %d cases, %d failed)" % (self.suite, len(self.cases),
                                                         len(self.failures))


def register(name):
    """ Decorator adding a suite function to :data:`SUITES` under *name*. """
    def decorator(func):
        SUITES[name] = func
        SUITE_ORDER.append(name)
        return func
    return decorator


def close_rel(observed, expected, rtol):
    return abs(observed - expected) <= rtol * max(abs(expected), abs(observed))


def run_jobs(name, jobs, comm=MPI.COMM_WORLD, verbose=False):
    start = time.time()
    first, last = parallel.stride_data(len(jobs), comm)
    my_cases = []
    for k in range(first, last):
        my_cases.extend(jobs[k]())
        if verbose:
            dlog.progress("%s: %s" % (name, jobs[k].description), (k + 1 - first) / float(last - first))
    cases = parallel.gather_ordered(my_cases, comm)

    if not dlog.ignored('suite.case'):
        for c in cases:
            dlog.append('suite.case', "%-5s %s: %s [%s]" % ("pass" if c.passed else "FAIL",
                                                           name, c.description, c.anchor))
    result = SuiteResult(name, cases, time.time() - start)
    dlog.append('suite.wall_time', result.wall_time)
    return result


def run_suite(name, seed=0, cases=None, comm=MPI.COMM_WORLD, verbose=False):
    """ Run one registered suite, or all of them for name "all".

    :param seed: base seed of the random instances
    :type  seed: int
    :param cases: number of seeded instances per configuration (default: suite specific)
    :type  cases: int or None
    :rtype: :class:`SuiteResult`
    """
    if name == "all":
        results = [run_suite(n, seed, cases, comm, verbose) for n in SUITE_ORDER]
        merged = SuiteResult("all", [], sum(r.wall_time for r in results))
        for r in results:
            for c in r.cases:
                c.description = "%s: %s" % (r.suite, c.description)
                merged.cases.append(c)
        return merged

    if name not in SUITES:
        raise KeyError("Unknown suite '%s'; available: %s" % (name, ", ".join(SUITE_ORDER + ["all"])))
    return run_jobs(name, SUITES[name](seed, cases), comm, verbose)


# Register the suites
from freelp.verify import norms, inequalities, moments  # noqa: E402,F401
