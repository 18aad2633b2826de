from solution import *


def test_first():
    assert first_primes(6) == [2, 3, 5, 7, 11, 13]

def test_factors():
    assert prime_factors(360) == [2, 2, 2, 3, 3, 5]
    assert prime_factors(97) == [97]
