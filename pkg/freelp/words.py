#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Reduced words in free groups and in direct products of free groups.

A word of the free group F_N is a tuple of non-zero signed integers: +k is the
generator g_k and -k its inverse g_k^{-1}, with 1 <= k <= N. The empty tuple
is the identity e. All values are immutable, so the functions of this module
are safe to call from any number of threads.

Example::

    >>> w = ReducedWord([1, 2, -2, 3], 3)
    >>> w.letters
    (1, 3)
    >>> str(w * ~w)
    ''
"""

from freelp.errors import InvalidLetterError, RankMismatchError


def _check_letters(letters, N):
    for a in letters:
        if a == 0 or abs(a) > N:
            raise InvalidLetterError("Letter %d outside the generators of F_%d" % (a, N))


def _reduce_onto(stack, letters):
    """ Push *letters* onto the reduced list *stack*, cancelling as we go. """
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return stack


#=============================================================================
# Words


class ReducedWord:
    """ A reduced word in the free group of rank *rank*.

    The constructor reduces its input, so every instance satisfies the
    reduced-word invariant.
    """
    __slots__ = ('letters', 'rank')

    def __init__(self, letters=(), rank=1):
        letters = [int(a) for a in letters]
        _check_letters(letters, rank)
        self.letters = tuple(_reduce_onto([], letters))
        self.rank = int(rank)

    @classmethod
    def _from_reduced(cls, letters, rank):
        w = cls.__new__(cls)
        w.letters = tuple(letters)
        w.rank = rank
        return w

    @classmethod
    def identity(cls, rank):
        return cls._from_reduced((), rank)

    @classmethod
    def parse(cls, text, rank):
        """ Parse the report format "1,-2,3" (empty string = e). """
        text = text.strip()
        if not text:
            return cls.identity(rank)
        return cls([int(a) for a in text.split(',')], rank)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self):
        return hash((self.rank, self.letters))

    def __lt__(self, other):
        return (len(self), [letter_key(a) for a in self.letters]) < \
               (len(other), [letter_key(a) for a in other.letters])

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return inverse(self)

    def __str__(self):
        return ",".join(str(a) for a in self.letters)

    def __repr__(self):
        return "ReducedWord([%s], %d)" % (str(self), self.rank)

    def is_identity(self):
        return not self.letters


class ProductWord:
    """ An element of a direct product F_{N_1} x ... x F_{N_r}.

    Each component is a :class:`ReducedWord` of its own factor; the factor
    ranks are stored explicitly, so F_n^d and F_{nd} elements are never
    confused.
    """
    __slots__ = ('components',)

    def __init__(self, components, ranks=None):
        comps = []
        for i, c in enumerate(components):
            if isinstance(c, ReducedWord):
                if ranks is not None and c.rank != ranks[i]:
                    raise RankMismatchError("Component %d has rank %d, expected %d" %
                                            (i, c.rank, ranks[i]))
                comps.append(c)
            else:
                if ranks is None:
                    raise RankMismatchError("Raw letter components need explicit ranks")
                comps.append(ReducedWord(c, ranks[i]))
        if ranks is not None and len(ranks) != len(comps):
            raise RankMismatchError("Got %d components for %d factors" % (len(comps), len(ranks)))
        self.components = tuple(comps)

    @property
    def ranks(self):
        return tuple(c.rank for c in self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        if not isinstance(other, ProductWord):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return inverse(self)

    def __str__(self):
        return "(" + ";".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return "ProductWord(%s)" % str(self)

    def is_identity(self):
        return all(c.is_identity() for c in self.components)


#=============================================================================
# Group operations


def reduce(letters, N):
    """ Reduced form of a raw list of signed letters in F_N.

    :param letters: signed generator indices, +k for g_k and -k for g_k^{-1}
    :type  letters: iterable of int
    :param N: rank of the free group
    :type  N: int
    :rtype: :class:`ReducedWord`
    :raises InvalidLetterError: for 0 or |letter| > N
    """
    return ReducedWord(letters, N)


def multiply(w1, w2):
    """ Group product w1 w2 (reduced concatenation), componentwise for products. """
    if isinstance(w1, ProductWord) and isinstance(w2, ProductWord):
        if w1.ranks != w2.ranks:
            raise RankMismatchError("Cannot multiply elements of %s and %s" % (w1.ranks, w2.ranks))
        return ProductWord([multiply(a, b) for a, b in zip(w1.components, w2.components)])
    if isinstance(w1, ReducedWord) and isinstance(w2, ReducedWord):
        if w1.rank != w2.rank:
            raise RankMismatchError("Cannot multiply words of F_%d and F_%d" % (w1.rank, w2.rank))
        return ReducedWord._from_reduced(_reduce_onto(list(w1.letters), w2.letters), w1.rank)
    raise TypeError("Cannot multiply %s and %s" % (type(w1).__name__, type(w2).__name__))


def inverse(w):
    """ Group inverse: reversed letters with flipped signs. """
    if isinstance(w, ProductWord):
        return ProductWord([inverse(c) for c in w.components])
    return ReducedWord._from_reduced(tuple(-a for a in reversed(w.letters)), w.rank)


def is_identity(w):
    """ True iff *w* (or every component of a product word) is e.

    This is the trace of the left regular representation: τ(λ(w)) is 1 for
    w = e and 0 otherwise.
    """
    return w.is_identity()


def h_letter(k, n):
    """ Signed letter of h_k in the doubled alphabet h_1, ..., h_{2n}.

    h_k = g_k for k <= n and h_k = g_{k-n}^{-1} for n < k <= 2n.

    :param k: 1-based index into the doubled alphabet
    :type  k: int
    :param n: number of generators
    :type  n: int
    :rtype: int
    """
    if not 1 <= k <= 2 * n:
        raise InvalidLetterError("h-index %d outside 1..%d" % (k, 2 * n))
    if k <= n:
        return k
    return -(k - n)


def letter_key(a):
    """ Sort key ordering letters as +1 < -1 < +2 < -2 < ... """
    return (abs(a), a < 0)


def ball_size(n, L):
    """ Number of reduced words of length <= L in F_n. """
    if L <= 0:
        return 1
    if n == 1:
        return 1 + 2 * L
    return 1 + 2 * n * ((2 * n - 1) ** L - 1) // (2 * n - 2)


def enumerate_ball(n, L):
    """ All reduced words of F_n of length <= L.

    Words are ordered by length, then lexicographically on letters with
    +1 < -1 < +2 < -2 < ...; index 0 is the identity. The order is fixed so
    compression matrices are reproducible.

    :rtype: list of :class:`ReducedWord`
    """
    alphabet = sorted([a for k in range(1, n + 1) for a in (k, -k)], key=letter_key)

    ball = [()]
    layer = [()]
    for _ in range(L):
        next_layer = []
        for w in layer:
            for a in alphabet:
                if w and w[-1] == -a:
                    continue
                next_layer.append(w + (a,))
        ball.extend(next_layer)
        layer = next_layer

    return [ReducedWord._from_reduced(w, n) for w in ball]
