#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Per-rank runtime traces of the numerical kernels.

Kernels decorated with :func:`traced` write ``name:begin`` / ``name:end``
tracepoints and accumulate their call count and wall time while tracing is
active. Every rank writes its own file ``trace-<rank>.txt``; closing the
trace appends a table of the accumulated kernel times.

Usage::

    import freelp.utils.tracing as tracing

    tracing.set_tracedir("traces")

    tracing.tracepoint("suite:oracle")
    moment_even(X, 3)                  # traced kernel

    tracing.close()

Tracing is off by default, and then every call here is a no-op.
"""

import os
import time
from functools import wraps

from mpi4py import MPI

TRACE_PATTERN = "trace-%04d.txt"

trace_file = None
start_time = None
kernel_stats = {}


def tracepoint(label):
    """ Write *label* with the time since :func:`set_tracedir` (no-op if inactive). """
    if trace_file is None:
        return
    trace_file.write("[%f] [%s]\n" % (MPI.Wtime() - start_time, label))


def traced(func):
    """ Decorator recording begin/end tracepoints and the time spent in *func*.

    The end tracepoint is also written when *func* raises, e.g. on an
    exceeded node budget.
    """
    name = func.__name__

    @wraps(func)
    def wrapped(*args, **kwargs):
        if trace_file is None:
            return func(*args, **kwargs)

        tracepoint(name + ':begin')
        t0 = MPI.Wtime()
        try:
            return func(*args, **kwargs)
        finally:
            calls, seconds = kernel_stats.get(name, (0, 0.))
            kernel_stats[name] = (calls + 1, seconds + MPI.Wtime() - t0)
            tracepoint(name + ':end')

    return wrapped


def is_active():
    return trace_file is not None


def summary():
    """ {kernel name: (calls, seconds)} accumulated on this rank. """
    return dict(kernel_stats)


def set_tracedir(dirname, comm=MPI.COMM_WORLD):
    """ Start tracing into *dirname*/trace-<rank>.txt.

    A running trace is closed first. Has to be called on all ranks of *comm*.

    :param dirname: directory of the trace files, created if missing
    :type  dirname: str
    :returns: the trace file name of this rank
    """
    global trace_file
    global start_time

    close()

    if comm.rank == 0:
        os.makedirs(dirname, exist_ok=True)
    comm.Barrier()

    fname = os.path.join(dirname, TRACE_PATTERN % comm.rank)
    trace_file = open(fname, "w")
    trace_file.write("# Start time: %s\n" % time.asctime())
    trace_file.write("# Hostname: %s\n" % os.uname()[1])
    trace_file.write("# MPI size: %d rank: %d\n" % (comm.size, comm.rank))

    kernel_stats.clear()
    comm.Barrier()
    start_time = MPI.Wtime()
    return fname


def close():
    """ Append the kernel time table, close this rank's trace file and stop tracing.

    :returns: :func:`summary` of the closed trace (empty if tracing was off)
    """
    global trace_file
    global start_time

    if trace_file is None:
        return {}

    stats = summary()
    tracepoint("close")
    trace_file.write("# kernel calls seconds\n")
    for name, (calls, seconds) in sorted(stats.items(), key=lambda kv: -kv[1][1]):
        trace_file.write("# %s %d %.6f\n" % (name, calls, seconds))
    trace_file.close()

    trace_file = None
    start_time = None
    kernel_stats.clear()
    return stats
