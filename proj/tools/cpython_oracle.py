"""Independent check of the round trip against CPython's own parser.

For every .py file under the given paths: ast.dump(ast.parse(original)) must
equal ast.dump(ast.parse(python_of(simpy_of(original)))), and the Python token
count the toolkit reports must equal CPython tokenize's. With --fuzz SEED N,
generated trees are written out first and checked the same way, which also
requires CPython to accept every generated program.
"""
import argparse
import ast
import json
import pathlib
import subprocess
import sys
import tempfile
import tokenize
import warnings


def convert(simpy, to, source):
    proc = subprocess.run([simpy, "convert", "--to", to, "-"], input=source.encode(), capture_output=True)
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr.decode(errors="replace").strip())
    return proc.stdout.decode()


def reference_dump(source):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ast.dump(ast.parse(source))


def check(simpy, path):
    source = path.read_text(encoding="utf-8")
    try:
        expected = reference_dump(source)
    except SyntaxError as e:
        return f"CPython rejects the input: {e}"
    try:
        trip = convert(simpy, "python", convert(simpy, "simpy", source))
    except RuntimeError as e:
        return f"conversion failed: {e}"
    try:
        actual = reference_dump(trip)
    except SyntaxError as e:
        return f"CPython rejects the round-tripped output: {e}"
    return None if actual == expected else "ast.dump differs"


def reference_token_count(path):
    with open(path, "rb") as fh:
        skip = (tokenize.ENCODING, tokenize.ENDMARKER)
        return sum(1 for t in tokenize.tokenize(fh.readline) if t.type not in skip)


def check_token_counts(simpy, paths):
    """Our Python token counts must equal CPython's tokenize (ENDMARKER excluded)."""
    failures = 0
    for p in paths:
        proc = subprocess.run([simpy, "roundtrip", str(p), "--format", "json"], capture_output=True, text=True)
        for line in proc.stdout.splitlines():
            row = json.loads(line)
            expected = reference_token_count(row["file_id"])
            if row["python_tokens"] != expected:
                failures += 1
                print(f"FAIL {row['file_id']}: {row['python_tokens']} tokens, CPython counts {expected}")
    return failures


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--simpy", required=True)
    ap.add_argument("--fuzz", nargs=2, type=int, metavar=("SEED", "N"))
    ap.add_argument("paths", nargs="*")
    args = ap.parse_args()

    files = []
    for p in map(pathlib.Path, args.paths):
        files += sorted(p.rglob("*.py")) if p.is_dir() else [p]
    with tempfile.TemporaryDirectory() as tmp:
        if args.fuzz:
            seed, n = args.fuzz
            subprocess.run([args.simpy, "fuzz", "--seed", str(seed), "-n", str(n), "--emit-python", tmp], check=True)
            files += sorted(pathlib.Path(tmp).glob("*.py"), key=lambda f: int(f.stem.split("_")[1]))
        failures = 0
        for f in files:
            problem = check(args.simpy, f)
            if problem:
                failures += 1
                print(f"FAIL {f.name if args.fuzz and str(f).startswith(tmp) else f}: {problem}")
    print(f"files {len(files)}, reference-AST equal {len(files) - failures}")
    token_failures = check_token_counts(args.simpy, args.paths)
    print(f"token-count mismatches against CPython tokenize: {token_failures}")
    return 0 if files and failures == 0 and token_failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
