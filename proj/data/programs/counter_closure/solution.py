def make_counter(start=0, step=1):
    count = start

    def tick():
        nonlocal count
        count += step
        return count

    return tick


TOTAL = 0


def add_to_total(*values, **weights):
    global TOTAL
    for v in values:
        TOTAL += v * weights.get("scale", 1)
    return TOTAL
