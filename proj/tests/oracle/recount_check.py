#!/usr/bin/env python3
"""Re-run the brute-force recount and diff it against the frozen golden copy."""

import json
import subprocess
import sys
import tempfile


def main():
    script, golden = sys.argv[1], sys.argv[2]
    with tempfile.NamedTemporaryFile(suffix=".json", mode="r") as tmp:
        subprocess.run([sys.executable, script, "--out", tmp.name], check=True)
        fresh = json.load(open(tmp.name))
    frozen = json.load(open(golden))
    if fresh != frozen:
        print("recount disagrees with frozen golden file", file=sys.stderr)
        for key in frozen:
            if fresh.get(key) != frozen[key]:
                print(f"  section {key!r} differs", file=sys.stderr)
        sys.exit(1)
    print("recount matches golden")


if __name__ == "__main__":
    main()
