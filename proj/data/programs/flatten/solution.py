def flatten(items):
    for item in items:
        if isinstance(item, (list, tuple)):
            yield from flatten(item)
        else:
            yield item


def chunks(seq, size):
    assert size > 0, "size must be positive"
    return [seq[i:i + size] for i in range(0, len(seq), size)]
