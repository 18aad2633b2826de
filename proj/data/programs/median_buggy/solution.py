def median(values):
    # Known bug kept on purpose: even-length input returns the upper middle.
    ordered = sorted(values)
    return ordered[len(ordered) // 2]
