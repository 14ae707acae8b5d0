"""
Seeded pseudo-random numbers that are bit-identical on every platform.

xorshift64* (Vigna, shifts 12/25/27, multiplier 0x2545F4914F6CDD1D),
seeded through splitmix64 (increment 0x9E3779B97F4A7C15). All arithmetic is
done on Python ints masked to 64 bits, so no numpy version or BLAS can change
a generated instance.
"""

MASK64 = (1 << 64) - 1
SPLITMIX_INCREMENT = 0x9E3779B97F4A7C15
XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D


def splitmix64(x):
    z = (x + SPLITMIX_INCREMENT) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def sub_seed(seed, index):
    """Seed for the index-th consumer of a run, independent of its neighbours."""
    return splitmix64((seed & MASK64) ^ splitmix64(index))


class XorShift64Star:
    def __init__(self, seed):
        # State must never be zero.
        self.state = splitmix64(seed & MASK64) or SPLITMIX_INCREMENT

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULTIPLIER) & MASK64

    def random(self):
        """Uniform float in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low, high):
        return low + (high - low) * self.random()

    def uniforms(self, count, low, high):
        return [self.uniform(low, high) for _ in range(count)]

    def integer(self, low, high):
        """Uniform integer in the closed range [low, high]."""
        span = high - low + 1
        assert span > 0
        return low + self.next_u64() % span

    def integers(self, count, low, high):
        return [self.integer(low, high) for _ in range(count)]
