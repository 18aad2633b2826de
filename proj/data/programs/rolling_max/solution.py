def rolling_max(numbers):
    out = []
    running = None
    for n in numbers:
        running = n if running is None else max(running, n)
        out.append(running)
    return out
