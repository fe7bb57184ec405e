"""
SplitMix64 stream used for every randomized choice, so runs replay from a seed in any language.
"""
from fractions import Fraction
from typing import Sequence

import shared.constants as constants
from logic.polyhedra.rational import Vector

MASK = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """
        Uniform-ish integer in [0, bound) by reduction modulo bound
        """
        return self.next_u64() % bound

    def integer(self, low: int, high: int) -> int:
        """
        Integer in [low, high], both ends included
        """
        return low + self.below(high - low + 1)

    def chance(self, numerator: int, denominator: int) -> bool:
        return self.below(denominator) < numerator

    def choice(self, items: Sequence):
        return items[self.below(len(items))]

    def rational(self, numerator_range: int = None, denominator_range: int = None) -> Fraction:
        """
        p/q with |p| <= numerator_range and 1 <= q <= denominator_range
        """
        numerator_range = constants.SAMPLE_NUMERATOR_RANGE if numerator_range is None else numerator_range
        denominator_range = constants.SAMPLE_DENOMINATOR_RANGE if denominator_range is None else denominator_range
        return Fraction(self.integer(-numerator_range, numerator_range), self.integer(1, denominator_range))

    def vector(self, dim: int, numerator_range: int = None, denominator_range: int = None) -> Vector:
        return tuple(self.rational(numerator_range, denominator_range) for _ in range(dim))
