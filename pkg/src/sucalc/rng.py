"""Seeded 64-bit linear congruential generator.

Test data (random unitaries, diagonals, sample points) is drawn from this
generator rather than from numpy so that runs reproduce bit-exactly given
the same seed.
"""

import math
from fractions import Fraction

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    """state <- state * MULTIPLIER + INCREMENT (mod 2**64).

    Each draw advances the state once and maps its top 53 bits to [0, 1).
    """

    def __init__(self, seed=0):
        self.state = int(seed) & _MASK

    def next_u64(self):
        self.state = (self.state * MULTIPLIER + INCREMENT) & _MASK
        return self.state

    def random(self):
        return (self.next_u64() >> 11) / 9007199254740992.0

    def uniform(self, lo, hi):
        return lo + (hi - lo) * self.random()

    def randint(self, lo, hi):
        """Integer in the closed range [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + (self.next_u64() >> 11) % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def normal(self):
        # Box-Muller; one draw per call keeps the stream simple to replicate.
        u1 = 1.0 - self.random()
        u2 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def rational(self, lo, hi, denominator=1 << 16):
        """Random rational in [lo, hi] with the given denominator."""
        num = self.randint(int(lo * denominator), int(hi * denominator))
        return Fraction(num, denominator)

    def spawn(self):
        """Independent child generator seeded from this stream."""
        return Lcg64(self.next_u64())
