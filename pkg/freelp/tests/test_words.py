"""
    Testcases for the freelp.words module
"""

import itertools
import unittest

from freelp.errors import InvalidLetterError, RankMismatchError
from freelp.words import (ReducedWord, ProductWord, reduce, multiply, inverse, is_identity,
                          h_letter, ball_size, enumerate_ball)

#=============================================================================
# Reduced words


class TestReduce(unittest.TestCase):
    def test_adjacent_cancellation(self):
        self.assertEqual(reduce([1, 2, -2, 3], 3).letters, (1, 3))

    def test_identity(self):
        self.assertEqual(reduce([1, -1], 1).letters, ())
        self.assertEqual(reduce([2, 3, -3, -2], 3).letters, ())

    def test_invalid_letters(self):
        self.assertRaises(InvalidLetterError, reduce, [0], 2)
        self.assertRaises(InvalidLetterError, reduce, [3], 2)
        self.assertRaises(InvalidLetterError, reduce, [-3], 2)

    def test_reduced_is_fixed_point(self):
        for letters in itertools.product([1, -1, 2, -2], repeat=4):
            w = reduce(letters, 2)
            self.assertEqual(reduce(w.letters, 2), w)
            for a, b in zip(w.letters, w.letters[1:]):
                self.assertNotEqual(a, -b)

    def test_parse(self):
        self.assertEqual(ReducedWord.parse("1,-2,3", 3).letters, (1, -2, 3))
        self.assertTrue(ReducedWord.parse("", 3).is_identity())
        self.assertEqual(str(ReducedWord([1, -2], 2)), "1,-2")


class TestGroupOperations(unittest.TestCase):
    def setUp(self):
        self.w = ReducedWord([1, 2, -3, 1], 3)

    def test_multiply(self):
        self.assertEqual(multiply(ReducedWord([1, 2], 2), ReducedWord([-2, 1], 2)).letters, (1, 1))
        self.assertEqual(multiply(ReducedWord([1], 1), ReducedWord([1], 1)).letters, (1, 1))
        self.assertTrue(multiply(self.w, inverse(self.w)).is_identity())
        self.assertTrue((self.w * ~self.w).is_identity())

    def test_multiply_cancels_across(self):
        w = multiply(ReducedWord([1, 2], 3), ReducedWord([-2, 3], 3))
        self.assertEqual(w.letters, (1, 3))

    def test_rank_mismatch(self):
        self.assertRaises(RankMismatchError, multiply, ReducedWord([1], 2), ReducedWord([1], 3))
        self.assertRaises(TypeError, multiply, ReducedWord([1], 2),
                          ProductWord([ReducedWord([1], 2)]))

    def test_inverse(self):
        self.assertEqual(inverse(ReducedWord([1, 2], 2)).letters, (-2, -1))
        self.assertEqual(inverse(ReducedWord([], 2)).letters, ())
        self.assertEqual(inverse(ReducedWord([-3], 3)).letters, (3, ))

    def test_associative(self):
        words = [ReducedWord(l, 2) for l in ([1, 2], [-2, -1, 2], [2], [-1])]
        for a, b, c in itertools.product(words, repeat=3):
            self.assertEqual((a * b) * c, a * (b * c))

    def test_inverse_reverses_products(self):
        words = [ReducedWord(l, 2) for l in ([1, 2], [-2, -1, 2], [2], [-1], [])]
        for a, b in itertools.product(words, repeat=2):
            self.assertEqual(inverse(a * b), inverse(b) * inverse(a))
        u = ProductWord([[1, 2], [-3]], ranks=(2, 3))
        v = ProductWord([[-2, 1], [3, 2]], ranks=(2, 3))
        self.assertEqual(inverse(u * v), inverse(v) * inverse(u))

    def test_is_identity(self):
        self.assertTrue(is_identity(ReducedWord([], 2)))
        self.assertFalse(is_identity(ReducedWord([1, -2], 2)))
        self.assertTrue(is_identity(ProductWord([[], [1, -1]], ranks=(2, 2))))


class TestProductWord(unittest.TestCase):
    def test_componentwise(self):
        u = ProductWord([[1, 2], [2]], ranks=(2, 3))
        v = ProductWord([[-2], [-2, 3]], ranks=(2, 3))
        w = u * v
        self.assertEqual(w.components[0].letters, (1, ))
        self.assertEqual(w.components[1].letters, (3, ))
        self.assertTrue((w * ~w).is_identity())

    def test_ranks(self):
        u = ProductWord([[1], [1]], ranks=(2, 2))
        v = ProductWord([[1]], ranks=(4, ))
        self.assertEqual(u.ranks, (2, 2))
        self.assertRaises(RankMismatchError, multiply, u, v)
        self.assertRaises(RankMismatchError, ProductWord, [[1]])
        self.assertRaises(RankMismatchError, ProductWord, [ReducedWord([1], 2)], (3, ))


#=============================================================================
# Signed alphabet and balls


class TestHLetter(unittest.TestCase):
    def test_values(self):
        self.assertEqual(h_letter(2, 3), 2)
        self.assertEqual(h_letter(5, 3), -2)
        self.assertEqual(h_letter(3, 3), 3)

    def test_out_of_range(self):
        self.assertRaises(InvalidLetterError, h_letter, 0, 3)
        self.assertRaises(InvalidLetterError, h_letter, 7, 3)

    def test_inverse_pairs(self):
        for n in (1, 2, 3):
            for k, k2 in itertools.product(range(1, 2 * n + 1), repeat=2):
                w = ReducedWord([h_letter(k, n), h_letter(k2, n)], n)
                self.assertEqual(w.is_identity(), abs(k - k2) == n)


class TestBall(unittest.TestCase):
    def test_sizes(self):
        self.assertEqual(len(enumerate_ball(1, 2)), 5)
        self.assertEqual(len(enumerate_ball(2, 1)), 5)
        self.assertEqual(len(enumerate_ball(2, 2)), 17)
        for n, L in itertools.product((1, 2, 3), range(7)):
            self.assertEqual(len(enumerate_ball(n, L)), ball_size(n, L))

    def test_order(self):
        ball = enumerate_ball(2, 2)
        self.assertTrue(ball[0].is_identity())
        self.assertEqual([w.letters for w in ball[1:5]], [(1, ), (-1, ), (2, ), (-2, )])
        self.assertEqual(ball, sorted(ball))

    def test_distinct_and_reduced(self):
        ball = enumerate_ball(2, 3)
        self.assertEqual(len(set(ball)), len(ball))
        for w in ball:
            self.assertEqual(ReducedWord(w.letters, 2), w)

    def test_nested(self):
        small, large = enumerate_ball(3, 2), enumerate_ball(3, 3)
        self.assertEqual(large[:len(small)], small)
