from core.prng import MASK64, XorShift64Star, splitmix64, sub_seed


def test_splitmix64_reference_value():
    # first output of the reference splitmix64 generator seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_same_seed_same_stream():
    a = XorShift64Star(42)
    b = XorShift64Star(42)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]


def test_seed_is_taken_modulo_2_64():
    a = XorShift64Star(7)
    b = XorShift64Star(7 + (1 << 64))
    assert a.next_u64() == b.next_u64()


def test_outputs_are_64_bit():
    rng = XorShift64Star(0)
    assert all(0 <= rng.next_u64() <= MASK64 for _ in range(1000))


def test_random_and_ranges():
    rng = XorShift64Star(3)
    for _ in range(1000):
        assert 0 <= rng.random() < 1
        assert -2 <= rng.uniform(-2, 3) < 3
        assert -5 <= rng.integer(-5, 5) <= 5
    assert set(rng.integers(500, 0, 2)) == {0, 1, 2}


def test_sub_seeds_differ_by_index_and_seed():
    seeds = {sub_seed(42, index) for index in range(100)}
    assert len(seeds) == 100
    assert sub_seed(42, 0) != sub_seed(43, 0)
    assert sub_seed(42, 5) == sub_seed(42, 5)
