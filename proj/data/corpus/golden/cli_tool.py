#!/usr/bin/env python3
"""Count lines, words and characters like wc."""
import argparse
import sys


def count(stream):
    lines = words = chars = 0
    for line in stream:
        lines += 1
        words += len(line.split())
        chars += len(line)
    return lines, words, chars


def build_parser():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("files", nargs="*", help="files to read (default: stdin)")
    parser.add_argument("-l", "--lines", action="store_true")
    parser.add_argument("-w", "--words", action="store_true")
    parser.add_argument("-c", "--chars", action="store_true")
    return parser


def format_row(counts, selected, name=""):
    fields = [str(n) for n, keep in zip(counts, selected) if keep]
    return " ".join(fields + [name]).rstrip()


def main(argv=None):
    args = build_parser().parse_args(argv)
    selected = [args.lines, args.words, args.chars]
    if not any(selected):
        selected = [True] * 3
    totals = [0, 0, 0]
    rows = []
    if not args.files:
        rows.append(format_row(count(sys.stdin), selected))
    for name in args.files:
        try:
            with open(name, encoding="utf-8") as fh:
                counts = count(fh)
        except OSError as exc:
            print(f"wc: {name}: {exc.strerror}", file=sys.stderr)
            continue
        totals = [a + b for a, b in zip(totals, counts)]
        rows.append(format_row(counts, selected, name))
    if len(args.files) > 1:
        rows.append(format_row(totals, selected, "total"))
    print("\n".join(rows))
    return 0


if __name__ == "__main__":
    sys.exit(main())
