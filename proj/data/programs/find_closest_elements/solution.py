def find_closest_elements(numbers):
    pairs = sorted(numbers)
    best = None
    for a, b in zip(pairs, pairs[1:]):
        if best is None or b - a < best[1] - best[0]:
            best = a, b
    return best
