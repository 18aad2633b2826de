import os
import tempfile


def line_stats(lines):
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "data.txt")
        with open(path, "w") as out:
            out.write("\n".join(lines))
        with open(path) as src:
            lengths = [len(line.rstrip("\n")) for line in src]
    return {"count": len(lengths), "longest": max(lengths, default=0), "empty": lengths.count(0)}
