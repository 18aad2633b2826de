ROMAN = [(1000, "M"), (500, "D"), (100, "C"), (50, "L"), (10, "X"), (5, "V"), (1, "I")]


def to_roman(n):
    # Known bug kept on purpose: no subtractive forms such as IV.
    out = ""
    for value, letter in ROMAN:
        while n >= value:
            out += letter
            n -= value
    return out
