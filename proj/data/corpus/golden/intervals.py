def merge(intervals):
    """Merge overlapping [start, end] pairs."""
    merged = []
    for start, end in sorted(intervals):
        if merged and start <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])
    return merged


def total_length(intervals):
    return sum(end - start for start, end in merge(intervals))


def gaps(intervals, lo, hi):
    out = []
    cursor = lo
    for start, end in merge(intervals):
        if start > cursor:
            out.append([cursor, min(start, hi)])
        cursor = max(cursor, end)
        if cursor >= hi:
            break
    else:
        if cursor < hi:
            out.append([cursor, hi])
    return out


def contains(intervals, point):
    return any(start <= point < end for start, end in intervals)
