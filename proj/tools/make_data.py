"""Regenerates data/corpus/stdlib and data/train from the local CPython stdlib.

Candidates are stdlib modules inside the supported subset (no async, walrus
or match). Corpus and code-training files are disjoint: sorted candidates
are dealt three of every five to the corpus until it holds CORPUS_FILES.
"""
import argparse
import ast
import pathlib
import re
import sys
import sysconfig

CORPUS_FILES = 220
MIN_BYTES, MAX_BYTES = 1000, 40000
CODE_TRAIN_BYTES = 1_500_000
UNSUPPORTED = (ast.AsyncFunctionDef, ast.AsyncFor, ast.AsyncWith, ast.Await, ast.NamedExpr, ast.Match)
SKIP_PARTS = {"test", "tests", "idle_test", "site-packages", "dist-packages", "__pycache__", "pydoc_data", "encodings"}


def candidates(stdlib):
    out = []
    for p in sorted(stdlib.rglob("*.py")):
        rel = p.relative_to(stdlib)
        if SKIP_PARTS & set(rel.parts) or rel.name.startswith("test_"):
            continue
        if not MIN_BYTES <= p.stat().st_size <= MAX_BYTES:
            continue
        try:
            tree = ast.parse(p.read_bytes())
        except SyntaxError:
            continue
        if any(isinstance(n, UNSUPPORTED) for n in ast.walk(tree)):
            continue
        out.append(p)
    return out


def prose_lines(text):
    # Web-extracted text: indented code examples dropped, whitespace runs
    # collapsed as HTML rendering does.
    for line in text.split("\n"):
        s = line.strip()
        if line[:1].isspace() and (s.startswith((">>>", "...")) or any(c in s for c in "=():[]{}")):
            continue
        yield re.sub(r"\s+", " ", s)


def web_text():
    from pydoc_data.topics import topics

    parts = [topics[k] for k in sorted(topics)]
    licenses = pathlib.Path("/usr/share/common-licenses")
    if licenses.is_dir():
        parts += [f.read_text(errors="replace") for f in sorted(licenses.iterdir()) if f.is_file()]
    return "\n".join(prose_lines("\n\n".join(parts)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    stdlib = pathlib.Path(sysconfig.get_paths()["stdlib"])

    corpus_dir = out / "corpus" / "stdlib"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    for old in corpus_dir.glob("*.py"):
        old.unlink()
    train_dir = out / "train"
    train_dir.mkdir(parents=True, exist_ok=True)

    corpus, code = [], []
    for i, p in enumerate(candidates(stdlib)):
        (corpus if i % 5 in (0, 2, 4) and len(corpus) < CORPUS_FILES else code).append(p)
    for p in corpus:
        name = "_".join(p.relative_to(stdlib).parts)
        (corpus_dir / name).write_bytes(p.read_bytes())

    chunks, total = [], 0
    for p in code:
        text = p.read_text(encoding="utf-8", errors="replace")
        if total + len(text) > CODE_TRAIN_BYTES:
            continue
        chunks.append(text)
        total += len(text)
    (train_dir / "code.txt").write_text("\n".join(chunks), encoding="utf-8")
    (train_dir / "web.txt").write_text(web_text(), encoding="utf-8")
    print(f"corpus {len(corpus)} files, code text {total} bytes", file=sys.stderr)


if __name__ == "__main__":
    main()
