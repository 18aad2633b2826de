#!/usr/bin/env python3
"""Starts `simpy serve` with the echo stub and sends one chat request."""

import argparse
import json
import socket
import subprocess
import sys
import time
import urllib.request


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--simpy", required=True)
    args = ap.parse_args()

    port = free_port()
    base = f"http://127.0.0.1:{port}"
    proc = subprocess.Popen([args.simpy, "serve", "--listen", f"127.0.0.1:{port}", "--stub-mode", "echo"])
    try:
        for _ in range(100):
            try:
                urllib.request.urlopen(base + "/health", timeout=1).read()
                break
            except OSError:
                time.sleep(0.05)
        else:
            print("server did not come up")
            return 1

        content = "Fix:\n```python\ndef f(a):\n    return a >= 1\n```\nthanks\n"
        body = json.dumps({"model": "stub", "messages": [{"role": "user", "content": content}]}).encode()
        req = urllib.request.Request(base + "/v1/chat/completions", body, {"Content-Type": "application/json"})
        reply = json.load(urllib.request.urlopen(req, timeout=5))
        got = reply["choices"][0]["message"]["content"]
        metrics = json.load(urllib.request.urlopen(base + "/metrics", timeout=5))
        print("reply:", json.dumps(got))
        print("metrics:", json.dumps(metrics))
        if got != content or metrics.get("requests") != 1:
            print("unexpected reply")
            return 1
        return 0
    finally:
        proc.terminate()
        proc.wait(timeout=5)


if __name__ == "__main__":
    sys.exit(main())
