"""Runs every program's tests against its original and its round-tripped
solution (Python -> SimPy -> Python) and compares the outcomes.

Each program lives in PROGRAMS/<name>/ with solution.py and test_solution.py.
Exit status 0 iff every program passes and fails exactly the same tests.
"""
import argparse
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

HARNESS = r"""
import json, sys, traceback
sys.path.insert(0, sys.argv[1])
import test_solution as t
results = {}
for name in sorted(n for n in dir(t) if n.startswith("test_")):
    try:
        getattr(t, name)()
        results[name] = True
    except Exception:
        results[name] = False
print(json.dumps(results))
"""


def run_tests(directory):
    proc = subprocess.run([sys.executable, "-c", HARNESS, str(directory)], capture_output=True, text=True,
                          timeout=120, cwd=directory)
    if proc.returncode != 0:
        return {"<import>": False}
    return json.loads(proc.stdout.strip().splitlines()[-1])


def convert(simpy, to, source):
    proc = subprocess.run([simpy, "convert", "--to", to, "-"], input=source, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr.strip())
    return proc.stdout


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--simpy", required=True, help="path to the simpy executable")
    ap.add_argument("programs", help="directory of programs")
    args = ap.parse_args()

    programs = sorted(p for p in pathlib.Path(args.programs).iterdir() if (p / "solution.py").is_file())
    same = 0
    passing = total = 0
    for prog in programs:
        with tempfile.TemporaryDirectory() as tmp:
            orig_dir = pathlib.Path(tmp, "orig")
            trip_dir = pathlib.Path(tmp, "trip")
            for d in orig_dir, trip_dir:
                d.mkdir()
                shutil.copy(prog / "test_solution.py", d)
            source = (prog / "solution.py").read_text()
            shutil.copy(prog / "solution.py", orig_dir)
            try:
                simpy_text = convert(args.simpy, "simpy", source)
                (trip_dir / "solution.py").write_text(convert(args.simpy, "python", simpy_text))
            except RuntimeError as e:
                print(f"DIFF {prog.name}: conversion failed: {e}")
                continue
            before = run_tests(orig_dir)
            after = run_tests(trip_dir)
        passing += sum(before.values())
        total += len(before)
        if before == after:
            same += 1
            print(f"same {prog.name}: {sum(before.values())}/{len(before)} tests pass")
        else:
            print(f"DIFF {prog.name}: original {before} round-tripped {after}")
    print(f"programs {len(programs)}, identical outcomes {same}, original tests passing {passing}/{total}")
    return 0 if programs and same == len(programs) else 1


if __name__ == "__main__":
    sys.exit(main())
