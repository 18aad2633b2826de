def has_close_elements(numbers, threshold):
    """True if any two numbers are closer than threshold."""
    ordered = sorted(numbers)
    for a, b in zip(ordered, ordered[1:]):
        if b - a < threshold:
            return True
    return False
