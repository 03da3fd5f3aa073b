#
#  Lincense: Academic Free License (AFL) v3.0
#
"""

Select the singular value routines used by the norm kernels.

LAPACK's divide-and-conquer SVD through scipy is preferred; numpy's
``svd(compute_uv=False)`` is the fallback.

"""

import numpy as np

#=============================================================================
# Pull default implementations

backend = "numpy"


def svdvals(M):
    return np.linalg.svd(M, compute_uv=False)


svd = np.linalg.svd

#=============================================================================
# Try to import the scipy LAPACK wrappers
try:
    import scipy.linalg

    backend = "scipy"

    svdvals = scipy.linalg.svdvals

    def svd(M, full_matrices=True, compute_uv=True):
        return scipy.linalg.svd(M, full_matrices=full_matrices,
                                compute_uv=compute_uv, lapack_driver='gesdd')
except ImportError as e:
    pass
