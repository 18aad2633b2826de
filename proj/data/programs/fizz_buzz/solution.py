def fizz_buzz(n: int) -> int:
    """Count digit 7 in numbers below n divisible by 11 or 13."""
    hits = [i for i in range(n) if i % 11 == 0 or i % 13 == 0]
    return sum(str(i).count("7") for i in hits)
