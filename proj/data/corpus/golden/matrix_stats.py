import math
import statistics


def describe(values):
    if not values:
        return {}
    ordered = sorted(values)
    n = len(ordered)
    q1, q2, q3 = statistics.quantiles(ordered, n=4) if n > 1 else (ordered[0],) * 3
    return {
        "n": n,
        "mean": statistics.fmean(ordered),
        "stdev": statistics.pstdev(ordered),
        "min": ordered[0],
        "q1": q1,
        "median": q2,
        "q3": q3,
        "max": ordered[-1]
    }


def zscores(values):
    mean = statistics.fmean(values)
    sd = statistics.pstdev(values) or 1.0
    return [(v - mean) / sd for v in values]


def correlation(xs, ys):
    if len(xs) != len(ys):
        raise ValueError("length mismatch")
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sx = math.sqrt(sum((x - mx) ** 2 for x in xs))
    sy = math.sqrt(sum((y - my) ** 2 for y in ys))
    return cov / (sx * sy) if sx and sy else 0.0


def histogram(values, bins=10, width=40):
    lo, hi = min(values), max(values)
    step = (hi - lo) / bins or 1
    counts = [0] * bins
    for v in values:
        counts[min(int((v - lo) / step), bins - 1)] += 1
    peak = max(counts)
    return [f"{lo + i * step:8.2f} | {'#' * (c * width // peak)}" for i, c in enumerate(counts)]
