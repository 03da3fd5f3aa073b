#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
    The freelp.utils packages provides configuration defaults, output
    directories and the infrastructure modules (parallel, tracing, datalog,
    autotable).
"""
import os
import sys
import time

from mpi4py import MPI

#=============================================================================
# Default caps and solver settings

default_params = {
    'dense_cap'      : 4096,         # max rows/cols of a matricization
    'ball_cap'       : 2000000,      # max words in a compression ball
    'node_budget'    : 50000000,     # max DFS nodes of the moment oracle
    'bruteforce_cap' : 5000000,      # max tuples of the brute-force oracle
    'tol'            : 1e-8,
    'max_iter'       : 5000,
    'random_duals'   : 32,           # seeded random dual tensors of the sum norm
    'seed'           : 0,
}


def load_params(fname, defaults=None):
    """ Read a parameter file and merge it into a copy of *defaults*.

    A parameter file is a small Python file with plain assignments::

        node_budget = 10**6
        tol = 1e-10

    Names are matched case-insensitively against the keys of *defaults*
    (default: :data:`default_params`); everything else in the file is
    ignored.

    :param fname: path of the parameter file
    :type  fname: str
    :rtype: dict
    """
    if defaults is None:
        defaults = default_params
    params = dict(defaults)

    namespace = {}
    with open(fname) as f:
        exec(compile(f.read(), fname, 'exec'), namespace)

    for name, value in namespace.items():
        key = name.lower()
        if key in params:
            params[key] = value
    return params


def thread_cap():
    """ Number of MPI ranks allowed to work in parallel kernels.

    Read from the FREELP_THREADS environment variable; 0, unset or a value
    larger than the communicator means all ranks.
    """
    try:
        cap = int(os.environ.get('FREELP_THREADS', '0'))
    except ValueError:
        cap = 0
    size = MPI.COMM_WORLD.size
    if cap <= 0 or cap > size:
        return size
    return cap


JOB_ID_VARIABLES = ('SLURM_JOB_ID', 'SLURM_JOBID', 'PBS_JOBID')


def job_suffix():
    """ "d<job id>" under slurm or torque/pbs, else the current date and time. """
    for var in JOB_ID_VARIABLES:
        if var in os.environ:
            return "d" + os.environ[var].split('.')[0]
    return time.strftime("%Y-%m-%d+%H:%M")


def create_output_path(basename=None, root="output", comm=MPI.COMM_WORLD):
    """ Create a fresh directory <root>/<basename>.<suffix> and return it
    with a trailing slash on all ranks of *comm*.

    *basename* defaults to the name of the running program; the suffix comes
    from :func:`job_suffix`. Existing directories are never reused: "+1",
    "+2", ... is appended until the name is free.
    """
    dirname = None
    if comm.rank == 0:
        if basename is None:
            basename = os.path.basename(sys.argv[0])
        stem = os.path.join(root, "%s.%s" % (basename, job_suffix()))
        dirname, n = stem, 0
        while True:
            try:
                os.makedirs(dirname)
                break
            except FileExistsError:
                n += 1
                dirname = "%s+%d" % (stem, n)
    return comm.bcast(dirname) + "/"
