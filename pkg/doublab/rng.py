"""Seedable, splittable random streams.

Replicate ``i`` of master seed ``s`` draws from ``PCG64(SeedSequence([s, i]))``,
so a run is bit-reproducible on any numpy installation and replicates can be
generated in any order or process.
"""

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence

TWO_64 = 1 << 64

_BLOCK = 4096


class RngStream:
    """A deterministic stream of uniforms, integers and exact Bernoulli draws."""

    def __init__(self, seed: int | SeedSequence | None = None):
        if isinstance(seed, SeedSequence):
            self._seq = seed
        else:
            self._seq = SeedSequence(seed)
        self._gen = Generator(PCG64(self._seq))
        self._buf = np.empty(0)
        self._pos = 0

    @classmethod
    def for_replicate(cls, master: int, index: int, *salt: int) -> "RngStream":
        """Stream for replicate ``index`` under ``master``.

        Extra ``salt`` integers separate independent experiments sharing a seed.
        """
        return cls(SeedSequence([master, index, *salt]))

    @property
    def generator(self) -> Generator:
        """Underlying numpy generator, for vectorised draws."""
        return self._gen

    def random(self) -> float:
        """Uniform float in [0, 1), 53 bits."""
        if self._pos >= len(self._buf):
            self._buf = self._gen.random(_BLOCK)
            self._pos = 0
        value = self._buf[self._pos]
        self._pos += 1
        return float(value)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), exact for arbitrarily large n."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        if n <= 1 << 62:
            return int(self._gen.integers(n))
        bits = (n - 1).bit_length()
        while True:
            value = self._bits(bits)
            if value < n:
                return value

    def _bits(self, bits: int) -> int:
        words = (bits + 63) // 64
        raw = self._gen.integers(0, TWO_64, size=words, dtype=np.uint64)
        value = 0
        for word in raw:
            value = (value << 64) | int(word)
        return value >> (words * 64 - bits)

    def dyadic(self) -> int:
        """Numerator u of a dyadic uniform U = u / 2^64 with 0 < U < 1."""
        while True:
            u = int(self._gen.integers(0, TWO_64, dtype=np.uint64))
            if u != 0:
                return u

    def bernoulli(self, num: int, den: int) -> bool:
        """Exact Bernoulli(num/den) for integer num, den."""
        if num <= 0:
            return False
        if num >= den:
            return True
        return self.below(den) < num

    def exponential(self, rate: float = 1.0) -> float:
        return float(self._gen.exponential(1.0 / rate))

    def normal(self) -> float:
        return float(self._gen.standard_normal())

    def spawn(self, count: int) -> list["RngStream"]:
        """Independent child streams."""
        return [RngStream(child) for child in self._seq.spawn(count)]
