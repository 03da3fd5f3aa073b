#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
MPI helpers: rank-0 printing, block striding of work items, and reductions
whose summation order does not depend on the number of ranks that produced
the partial results.
"""

import sys
import math
import numpy as np
from mpi4py import MPI

from freelp.utils import thread_cap

#=============================================================================
# Parallel & pretty printer


def pprint(obj="", comm=MPI.COMM_WORLD, end='\n'):
    """
    Parallel print: Make sure only one of the MPI processes
    calling this function actually prints something. All others
    (comm.rank != 0) return without doing enything.
    """
    if comm.rank != 0:
        return

    if isinstance(obj, str):
        sys.stdout.write(obj + end)
    else:
        sys.stdout.write(repr(obj))
        sys.stdout.write(end)
    sys.stdout.flush()


def active_size(comm=MPI.COMM_WORLD):
    """ Number of ranks of *comm* that take part in parallel kernels.

    Capped by the FREELP_THREADS environment variable.
    """
    return max(1, min(comm.size, thread_cap()))


def stride_data(N, comm=MPI.COMM_WORLD):
    """ Stride data

    Calculates a contiguous block (first, last) of the *N* work items for
    this rank. Ranks beyond :func:`active_size` receive an empty block.

    :param N: total number of work items to be sharded
    :type  N: int
    :returns: (first, last) The first and one-past-last item of this rank
    :rtype: (int, int)

    Example::

        first, last = parallel.stride_data(len(items))
        my_items = items[first:last]
    """
    size = active_size(comm)
    rank = comm.rank
    if rank >= size:
        return N, N

    my_N = N // size
    residue = N % size

    if rank < residue:
        first = (my_N + 1) * rank
        last = first + my_N + 1
    else:
        first = my_N * rank + residue
        last = first + my_N
    return first, last


def gather_ordered(my_items, comm=MPI.COMM_WORLD):
    """ Collect per-rank lists into one list ordered by rank.

    Since every rank holds a contiguous block from :func:`stride_data`,
    the result is ordered like the original work items.
    """
    if comm.size == 1:
        return list(my_items)
    result = []
    for part in comm.allgather(list(my_items)):
        result.extend(part)
    return result


def ordered_sum(my_terms, comm=MPI.COMM_WORLD):
    """ Sum per-item partial results in global item order.

    *my_terms* holds this rank's partial results (scalars or equally shaped
    arrays) for its block of work items. All terms are gathered and summed
    left to right, so the value is the same for any rank count.
    """
    terms = gather_ordered(my_terms, comm)
    if not terms:
        return 0.
    if np.isscalar(terms[0]):
        if all(np.isrealobj(t) for t in terms):
            return math.fsum(terms)
        return complex(math.fsum(t.real for t in terms),
                       math.fsum(t.imag for t in terms))
    total = np.zeros_like(terms[0])
    for t in terms:
        total = total + t
    return total
