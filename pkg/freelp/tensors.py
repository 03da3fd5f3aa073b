#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Coefficient tensors A = {a_I : I in [n]^d} with m x m complex matrix entries,
partition splits (alpha, beta) of the index positions {1, ..., d} and the
matricizations they induce, the word maps I -> w_I and the tensor file format.

Multi-indices are 0-based tuples internally; files and reports use 1-based
indices. Two alphabets are supported:

 * ``"generators"``: entries in [0, n), letter g_{i+1}
 * ``"signed"``: entries in [0, 2n), letter h_{i+1} (see :func:`freelp.words.h_letter`)

A matricization puts the positions of alpha (and the coefficient row) on the
rows and the positions of beta (and the coefficient column) on the columns;
multi-indices are flattened big-endian.
"""

import json
import itertools

import numpy as np

import freelp.utils.tracing as tracing

from freelp.utils import default_params
from freelp.words import ReducedWord, h_letter
from freelp.errors import SchemaError, CapExceededError

GENERATORS = "generators"
SIGNED = "signed"
ALPHABETS = (GENERATORS, SIGNED)


def alphabet_size(n, alphabet):
    """ Number of index values per position: n for generators, 2n for signed. """
    if alphabet == GENERATORS:
        return n
    if alphabet == SIGNED:
        return 2 * n
    raise SchemaError("Unknown alphabet '%s'" % alphabet)


def check_index(I, A, d):
    """ Return *I* as a tuple of ints after checking length *d* and range [0, A). """
    I = tuple(int(i) for i in I)
    if len(I) != d:
        raise SchemaError("Index %s has length %d, expected %d" % (I, len(I), d))
    for i in I:
        if not 0 <= i < A:
            raise SchemaError("Index %s out of range [0, %d)" % (I, A))
    return I


#=============================================================================
# Coefficient tensors


class CoeffTensor:
    """ Sparse family of m x m complex matrices indexed by multi-indices.

    Absent entries are zero. Arithmetic returns new tensors; use
    :meth:`copy` before mutating a tensor that is shared.
    """

    def __init__(self, n, d, m=1, alphabet=GENERATORS, entries=None):
        if n < 1 or d < 0 or m < 1:
            raise SchemaError("Invalid tensor shape n=%d d=%d m=%d" % (n, d, m))
        self.n = int(n)
        self.d = int(d)
        self.m = int(m)
        self.alphabet = alphabet
        self.A = alphabet_size(n, alphabet)
        self.entries = {}
        if entries is not None:
            for I, a in dict(entries).items():
                self[I] = a

    @property
    def shape(self):
        return (self.n, self.d, self.m, self.alphabet)

    def _matrix(self, a):
        a = np.array(a, dtype=np.complex128)
        if a.ndim == 0 and self.m == 1:
            a = a.reshape(1, 1)
        if a.shape != (self.m, self.m):
            raise SchemaError("Coefficient of shape %s, expected (%d, %d)" %
                              (a.shape, self.m, self.m))
        return a

    def __getitem__(self, I):
        I = check_index(I, self.A, self.d)
        if I in self.entries:
            return self.entries[I]
        return np.zeros((self.m, self.m), dtype=np.complex128)

    def __setitem__(self, I, a):
        I = check_index(I, self.A, self.d)
        self.entries[I] = self._matrix(a)

    def __delitem__(self, I):
        del self.entries[check_index(I, self.A, self.d)]

    def __contains__(self, I):
        return tuple(I) in self.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries))

    def items(self):
        """ (index, matrix) pairs in lexicographic index order. """
        return [(I, self.entries[I]) for I in sorted(self.entries)]

    def support(self, atol=0.):
        """ Sorted indices whose coefficient is not (numerically) zero. """
        return [I for I, a in self.items() if np.abs(a).max() > atol]

    def copy(self):
        t = CoeffTensor(self.n, self.d, self.m, self.alphabet)
        t.entries = {I: a.copy() for I, a in self.entries.items()}
        return t

    def zeros_like(self):
        return CoeffTensor(self.n, self.d, self.m, self.alphabet)

    def _check_compatible(self, other):
        if self.shape != other.shape:
            raise SchemaError("Tensor shapes %s and %s differ" % (self.shape, other.shape))

    def __add__(self, other):
        self._check_compatible(other)
        t = self.copy()
        for I, a in other.entries.items():
            t.entries[I] = t.entries[I] + a if I in t.entries else a.copy()
        return t

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, s):
        t = self.zeros_like()
        t.entries = {I: s * a for I, a in self.entries.items()}
        return t

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def allclose(self, other, rtol=1e-12, atol=1e-12):
        """ Entry-wise comparison, treating absent entries as zero. """
        if self.shape != other.shape:
            return False
        return np.allclose(self.to_dense(), other.to_dense(), rtol=rtol, atol=atol)

    def frobenius_mass(self):
        """ sqrt(sum_I tr(a_I^* a_I)) """
        return np.sqrt(sum(np.vdot(a, a).real for a in self.entries.values()))

    def to_dense(self):
        """ Dense array of shape (A,)*d + (m, m). """
        dense = np.zeros((self.A, ) * self.d + (self.m, self.m), dtype=np.complex128)
        for I, a in self.entries.items():
            dense[I] = a
        return dense

    @classmethod
    def from_dense(cls, dense, n, alphabet=GENERATORS, atol=0.):
        """ Build a tensor from a dense (A,)*d + (m, m) array, dropping zero blocks. """
        dense = np.asarray(dense, dtype=np.complex128)
        d = dense.ndim - 2
        m = dense.shape[-1]
        t = cls(n, d, m, alphabet)
        if dense.shape != (t.A, ) * d + (m, m):
            raise SchemaError("Dense array of shape %s does not fit n=%d d=%d alphabet=%s" %
                              (dense.shape, n, d, alphabet))
        for I in itertools.product(range(t.A), repeat=d):
            a = dense[I]
            if np.abs(a).max() > atol:
                t.entries[I] = a.copy()
        return t

    def __repr__(self):
        return "CoeffTensor(n=%d, d=%d, m=%d, alphabet=%s, %d entries)" % \
            (self.n, self.d, self.m, self.alphabet, len(self.entries))


#=============================================================================
# Partition splits


class PartitionSplit:
    """ An ordered pair (alpha, beta) partitioning the positions {1, ..., d}. """
    __slots__ = ('d', 'alpha', 'beta')

    def __init__(self, d, alpha):
        alpha = tuple(sorted(set(int(k) for k in alpha)))
        for k in alpha:
            if not 1 <= k <= d:
                raise SchemaError("Position %d outside 1..%d" % (k, d))
        self.d = int(d)
        self.alpha = alpha
        self.beta = tuple(k for k in range(1, d + 1) if k not in alpha)

    @classmethod
    def consecutive(cls, d, k):
        """ The split alpha = {1, ..., k}, beta = {k+1, ..., d}. """
        if not 0 <= k <= d:
            raise SchemaError("Split point %d outside 0..%d" % (k, d))
        return cls(d, range(1, k + 1))

    def is_consecutive(self):
        return self.alpha == tuple(range(1, len(self.alpha) + 1))

    def transposition_number(self):
        return transposition_number(self)

    def is_transposed(self):
        return transposition_number(self) > 0

    def reduce_transposed(self):
        """ The two splits (alpha - {a}, beta + {a}) and (alpha + {b}, beta - {b}).

        Here a = max alpha and b = min beta. Both have a strictly smaller
        transposition number; only defined for transposed splits.
        """
        assert self.is_transposed()
        b = self.beta[0]
        return (PartitionSplit(self.d, self.alpha[:-1]),
                PartitionSplit(self.d, self.alpha + (b, )))

    def __eq__(self, other):
        if not isinstance(other, PartitionSplit):
            return NotImplemented
        return self.d == other.d and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.d, self.alpha))

    def __repr__(self):
        return "PartitionSplit(d=%d, alpha=%s, beta=%s)" % (self.d, list(self.alpha), list(self.beta))


def transposition_number(split):
    """ T(alpha, beta) = max alpha - min beta.

    max of the empty alpha is 0 and min of the empty beta is d+1; the split
    is transposed iff the result is positive.
    """
    a = split.alpha[-1] if split.alpha else 0
    b = split.beta[0] if split.beta else split.d + 1
    return a - b


def enumerate_partitions(d):
    """ All 2^d splits of {1, ..., d}.

    alpha runs through the subsets in binary-counter order, bit k-1 of the
    counter standing for position k.
    """
    return [PartitionSplit(d, [k + 1 for k in range(d) if mask >> k & 1])
            for mask in range(2 ** d)]


def consecutive_splits(d):
    """ The d+1 splits alpha = {1..k}, k = 0..d. """
    return [PartitionSplit.consecutive(d, k) for k in range(d + 1)]


#=============================================================================
# Matricization


def flatten_index(I, split, n):
    """ (row, col) position of multi-index *I* in the (alpha, beta) matricization.

    :param I: 0-based multi-index of length split.d
    :type  I: tuple of int
    :param split: the partition split
    :type  split: :class:`PartitionSplit`
    :param n: alphabet size (n for generators, 2n for signed)
    :type  n: int
    :rtype: (int, int)
    """
    I = check_index(I, n, split.d)
    row = 0
    for k in split.alpha:
        row = row * n + I[k - 1]
    col = 0
    for k in split.beta:
        col = col * n + I[k - 1]
    return row, col


def unflatten_index(row, col, split, n):
    """ Inverse of :func:`flatten_index`. """
    I = [0] * split.d
    for k in reversed(split.alpha):
        row, I[k - 1] = divmod(row, n)
    for k in reversed(split.beta):
        col, I[k - 1] = divmod(col, n)
    if row or col:
        raise SchemaError("Flat position out of range")
    return tuple(I)


def _check_cap(rows, cols, cap):
    if cap is None:
        cap = default_params['dense_cap']
    if rows > cap or cols > cap:
        raise CapExceededError("Matricization of size %d x %d exceeds the dense cap %d" %
                               (rows, cols, cap))


def _axes(split, d):
    row_axes = [k - 1 for k in split.alpha] + [d]
    col_axes = [k - 1 for k in split.beta] + [d + 1]
    return row_axes, col_axes


def matricize(dense, split, cap=None):
    """ Matricization of a dense (A,)*d + (m, m) array.

    Row index = flatten_row * m + r, column index = flatten_col * m + s.
    """
    d = dense.ndim - 2
    A = dense.shape[0] if d else 1
    m = dense.shape[-1]
    rows = m * A ** len(split.alpha)
    cols = m * A ** len(split.beta)
    _check_cap(rows, cols, cap)
    row_axes, col_axes = _axes(split, d)
    return dense.transpose(row_axes + col_axes).reshape(rows, cols)


def tensorize(M, split, A, m):
    """ Inverse of :func:`matricize`: dense (A,)*d + (m, m) array from a matrix. """
    d = split.d
    row_axes, col_axes = _axes(split, d)
    perm = row_axes + col_axes
    shape = [A] * len(split.alpha) + [m] + [A] * len(split.beta) + [m]
    return np.asarray(M).reshape(shape).transpose(np.argsort(perm))


@tracing.traced
def reshape(t, split, cap=None):
    """ Block matrix sum_I a_I (x) e_{pi_alpha(I), pi_beta(I)}.

    :param t: coefficient tensor
    :type  t: :class:`CoeffTensor`
    :param split: split with split.d == t.d
    :type  split: :class:`PartitionSplit`
    :param cap: maximal number of rows or columns (default: default_params['dense_cap'])
    :rtype: ndarray of shape (m * A^|alpha|, m * A^|beta|)
    :raises CapExceededError: if the matrix would exceed *cap*
    """
    if split.d != t.d:
        raise SchemaError("Split of degree %d applied to a degree %d tensor" % (split.d, t.d))
    m, A = t.m, t.A
    rows = m * A ** len(split.alpha)
    cols = m * A ** len(split.beta)
    _check_cap(rows, cols, cap)

    M = np.zeros((rows, cols), dtype=np.complex128)
    for I, a in t.entries.items():
        r, c = flatten_index(I, split, A)
        M[r * m:(r + 1) * m, c * m:(c + 1) * m] = a
    return M


def unreshape(M, split, n, m, alphabet=GENERATORS):
    """ Coefficient tensor whose (alpha, beta) matricization is *M*. """
    A = alphabet_size(n, alphabet)
    return CoeffTensor.from_dense(tensorize(M, split, A, m), n, alphabet)


#=============================================================================
# Word maps


def word_map_plain(I, n):
    """ g_{i_1+1} ... g_{i_d+1} in F_n. """
    return ReducedWord._from_reduced(tuple(i + 1 for i in I), n)


def word_map_separated(I, n, d=None):
    """ g_{1 i_1} g_{2 i_2} ... g_{d i_d} in F_{nd}.

    Generator g_{s i} of the s-th block is the letter (s-1) n + i + 1.
    """
    if d is None:
        d = len(I)
    return ReducedWord._from_reduced(tuple(s * n + i + 1 for s, i in enumerate(I)), n * max(d, 1))


def word_map_signed(I, n):
    """ Reduced form of h_{i_1+1} ... h_{i_d+1} in F_n. """
    return ReducedWord([h_letter(i + 1, n) for i in I], n)


def validate_cancellation(I, n):
    """ True iff h_{i_1+1} ... h_{i_d+1} is reduced of length d.

    False iff some adjacent pair has i_s = n + i_{s+1} (mod 2n), with
    1-based values; the 0-based test is the same congruence.
    """
    for s in range(len(I) - 1):
        if (I[s] - I[s + 1] - n) % (2 * n) == 0:
            return False
    return True


def word_map(t):
    """ The default word map of the tensor's alphabet, as a function of the index. """
    if t.alphabet == SIGNED:
        return lambda I: word_map_signed(I, t.n)
    return lambda I: word_map_plain(I, t.n)


#=============================================================================
# Projections


def mask_pair(t, s):
    """ Zero the entries whose positions s, s+1 (1-based) violate cancellation. """
    assert t.alphabet == SIGNED
    n = t.n
    out = t.zeros_like()
    for I, a in t.entries.items():
        if (I[s - 1] - I[s] - n) % (2 * n) != 0:
            out.entries[I] = a.copy()
    return out


def apply_projection_Q(t):
    """ Restrict a signed tensor to the indices with the cancellation property.

    Equals the composition of the d-1 adjacent-pair maskings.
    """
    if t.alphabet != SIGNED:
        raise SchemaError("The projection Q acts on signed-alphabet tensors")
    out = t.zeros_like()
    for I, a in t.entries.items():
        if validate_cancellation(I, t.n):
            out.entries[I] = a.copy()
    return out


def tensor_to_words(t):
    """ Map {w_I: sum of a_I over indices with that word} for the tensor's word map. """
    wmap = word_map(t)
    f = {}
    for I, a in t.items():
        w = wmap(I)
        f[w] = f[w] + a if w in f else a.copy()
    return f


def project_to_degree(f, d, alphabet, n, m=None):
    """ Coefficient-level projection of a word function onto degree d.

    Keeps the coefficients of words in the image of the alphabet's word
    map (positive words of length d for generators, reduced words of
    length d for signed) and indexes them back; all other words are
    dropped.

    :param f: finitely supported map word -> m x m matrix
    :type  f: dict
    :rtype: :class:`CoeffTensor`
    """
    if m is None:
        m = 1
        for a in f.values():
            m = np.atleast_2d(a).shape[0]
            break
    t = CoeffTensor(n, d, m, alphabet)
    for w, a in f.items():
        letters = w.letters
        if len(letters) != d or w.rank != n:
            continue
        if alphabet == GENERATORS:
            if any(a_ < 0 for a_ in letters):
                continue
            I = tuple(a_ - 1 for a_ in letters)
        else:
            I = tuple(a_ - 1 if a_ > 0 else n - a_ - 1 for a_ in letters)
        t[I] = a
    return t


#=============================================================================
# Tensor files


def tensor_to_json(t):
    """ JSON-serializable dict with 1-based indices. """
    entries = []
    for I, a in t.items():
        entry = {
            "index": [i + 1 for i in I],
            "re": a.real.tolist(),
        }
        if np.any(a.imag != 0):
            entry["im"] = a.imag.tolist()
        entries.append(entry)
    return {
        "n": t.n,
        "d": t.d,
        "m": t.m,
        "alphabet": t.alphabet,
        "entries": entries,
    }


def tensor_from_json(doc):
    """ Inverse of :func:`tensor_to_json`, validating the layout. """
    if not isinstance(doc, dict):
        raise SchemaError("Tensor document must be an object")
    if any(isinstance(doc.get(key), bool) for key in ("n", "d", "m")):
        raise SchemaError("Tensor sizes n, d, m must be integers")
    try:
        n, d, m = int(doc["n"]), int(doc["d"]), int(doc["m"])
        alphabet = doc.get("alphabet", GENERATORS)
        entries = doc.get("entries", [])
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("Malformed tensor header: %s" % e)
    if alphabet not in ALPHABETS:
        raise SchemaError("Unknown alphabet '%s'" % alphabet)
    if not isinstance(entries, list):
        raise SchemaError("Tensor entries must be a list, got %s" % type(entries).__name__)

    t = CoeffTensor(n, d, m, alphabet)
    for entry in entries:
        try:
            index = entry["index"]
            re = np.array(entry["re"], dtype=np.float64)
            im = np.array(entry.get("im", np.zeros_like(re)), dtype=np.float64)
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError("Malformed tensor entry: %s" % e)
        if re.shape != (m, m) or im.shape != (m, m):
            raise SchemaError("Entry %s is not a %d x %d matrix" % (index, m, m))
        if not isinstance(index, list) or not all(type(i) is int for i in index):
            raise SchemaError("Index %s is not a list of integers" % (index, ))
        I = check_index([i - 1 for i in index], t.A, d)
        if I in t.entries:
            raise SchemaError("Duplicate index %s" % index)
        t.entries[I] = re + 1j * im
    return t


def save_tensor(t, fname):
    """ Write *t* as a JSON tensor file. """
    with open(fname, 'w') as f:
        json.dump(tensor_to_json(t), f, indent=1)
        f.write("\n")


def load_tensor(fname):
    """ Read a JSON tensor file.

    :raises SchemaError: for malformed files, out-of-range or duplicate indices
        and non-square matrices
    """
    try:
        with open(fname) as f:
            doc = json.load(f)
    except ValueError as e:
        raise SchemaError("%s is not valid JSON: %s" % (fname, e))
    return tensor_from_json(doc)
