from itertools import groupby


def rle_encode(s):
    return "".join(f"{len(list(g))}{k}" for k, g in groupby(s))


def rle_decode(s):
    out = []
    count = ""
    for ch in s:
        if ch.isdigit():
            count += ch
        else:
            out.append(ch * int(count))
            count = ""
    return "".join(out)
