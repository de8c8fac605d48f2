#!/usr/bin/env python3
"""End-to-end CLI tests: exit codes, file formats, determinism."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = Path(sys.argv[1])
FAILED = []


def run(*args, rc=0, cwd=None):
    p = subprocess.run([str(CLI), *map(str, args)], capture_output=True, text=True, cwd=cwd)
    if p.returncode != rc:
        FAILED.append(f"{' '.join(map(str, args))}: rc={p.returncode}, want {rc}\n"
                      f"  stdout: {p.stdout.strip()[:200]}\n  stderr: {p.stderr.strip()[:200]}")
    return p


def check(cond, label):
    if not cond:
        FAILED.append(label)


def strip_wall(text):
    return "".join(l for l in text.splitlines(keepends=True) if "wall_time_ms" not in l)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="hyperlines-cli-"))

    # construction counts and canonical outputs
    p = run("construct", "--family", "symplectic", "-d", 4, "-q", 3, "--hyperbolic",
            "--out", tmp / "sp43-hyp.pls")
    check(p.stdout.strip() == "n=40 m=90", f"sp43 hyp counts: {p.stdout!r}")
    run("construct", "--family", "symplectic", "-d", 4, "-q", 3, "--polar",
        "--out", tmp / "sp43-pol.pls")
    run("construct", "--family", "symplectic", "-d", 4, "-q", 2, "--hyperbolic",
        "--out", tmp / "sp42-hyp.pls")
    p = run("construct", "--family", "hermitian", "-d", 4, "-q", 4, "--polar",
            "--out", tmp / "h34-pol.pls")
    check(p.stdout.strip() == "n=45 m=27", f"h34 polar counts: {p.stdout!r}")
    run("construct", "--family", "hermitian", "-d", 4, "-q", 4, "--hyperbolic",
        "--out", tmp / "h34-hyp.pls")
    p = run("construct", "--family", "parabolic", "-d", 5, "-q", 2, "--polar",
            "--out", tmp / "o52-pol.pls")
    check(p.stdout.strip() == "n=15 m=15", f"o52 counts: {p.stdout!r}")
    header = (tmp / "sp43-hyp.pls").read_text().splitlines()[0]
    check(header == "pls 40 90", f"canonical header: {header!r}")

    # parameter validation: 2 = bad input, 3 = size guard
    run("construct", "--family", "symplectic", "-d", 3, "-q", 3, "--polar",
        "--out", tmp / "x.pls", rc=2)
    run("construct", "--family", "symplectic", "-d", 4, "-q", 6, "--polar",
        "--out", tmp / "x.pls", rc=2)
    run("construct", "--family", "hermitian", "-d", 4, "-q", 3, "--polar",
        "--out", tmp / "x.pls", rc=2)  # no involution on a prime field
    run("construct", "--family", "symplectic", "-d", 6, "-q", 32, "--polar",
        "--out", tmp / "x.pls", rc=3)
    run("construct", "--family", "symplectic", "-d", 4, "-q", 3, "--polar", rc=2)  # no --out
    run("construct", "--family", "symplectic", "-d", 4, "-q", 3, "--polar", "--hyperbolic",
        "--out", tmp / "x.pls", rc=2)
    run("construct", "--family", "klein", "-d", 4, "-q", 3, "--polar",
        "--out", tmp / "x.pls", rc=2)
    run("explode", rc=2)
    run(rc=2)
    run("--help", rc=0)

    # check: pass and fail verdicts, report shape, witness caps
    p = run("check", tmp / "sp43-hyp.pls", "--suite", "main")
    rep = json.loads(p.stdout)
    check(rep["overall"] == "pass" and rep["tool"] == "hyperlines", "sp43 main overall")
    check(list(rep) == ["tool", "version", "instance", "checks", "overall", "wall_time_ms"],
          f"top-level key order: {list(rep)}")
    check(list(rep["checks"][0]) == ["id", "verdict", "violations", "witnesses", "stats",
                                     "truncated"], "check entry key order")
    dstats = [c["stats"] for c in rep["checks"] if c["id"] == "1.1(d)"][0]
    check(dstats["full_plane_outcomes"] == 40, f"flagged whole-plane count: {dstats}")

    p = run("check", tmp / "sp42-hyp.pls", "--suite", "main", "--out", tmp / "sp42-main.json",
            rc=1)
    rep = json.loads((tmp / "sp42-main.json").read_text())
    fails = [c["id"] for c in rep["checks"] if c["verdict"] == "fail"]
    check(fails == ["1.1(a)"], f"sp42 failing ids: {fails}")
    wit = [c for c in rep["checks"] if c["id"] == "1.1(a)"][0]
    check(wit["witnesses"][0][1] == 3 and wit["violations"] == 20 and wit["truncated"],
          "sp42 line-size witness")

    p = run("check", tmp / "sp42-hyp.pls", "--suite", "main", "--witness-cap", 3, rc=1)
    wit = [c for c in json.loads(p.stdout)["checks"] if c["id"] == "1.1(a)"][0]
    check(len(wit["witnesses"]) == 3 and wit["violations"] == 20, "witness cap 3")
    p = run("check", tmp / "sp42-hyp.pls", "--suite", "main", "--witness-cap", 0, rc=1)
    wit = [c for c in json.loads(p.stdout)["checks"] if c["id"] == "1.1(a)"][0]
    check(wit["witnesses"] == [] and wit["truncated"], "witness cap 0")

    run("check", tmp / "sp43-hyp.pls", "--suite", "setting31")
    run("check", tmp / "sp43-hyp.pls", "--suite", "planethm")
    p = run("check", tmp / "h34-hyp.pls", "--suite", "planethm", rc=1)
    fails = [c["id"] for c in json.loads(p.stdout)["checks"] if c["verdict"] == "fail"]
    check(fails == ["1.2(d)"], f"h34 planethm failing ids: {fails}")
    run("check", tmp / "sp42-hyp.pls", "--suite", "fischer")
    run("check", tmp / "sp43-pol.pls", "--suite", "polar-axioms")
    run("check", tmp / "sp43-hyp.pls", "--suite", "lemmas")
    run("check", tmp / "sp43-hyp.pls", "--suite", "nonsense", rc=2)
    (tmp / "mixed.pls").write_text("pls 5 2\n0 1 2\n3 4\n")
    run("check", tmp / "mixed.pls", "--suite", "fischer", rc=2)

    # reconstruct: round trip, refusal, override
    p = run("reconstruct", tmp / "sp43-hyp.pls", "--out", tmp / "sp43-recon.pls")
    check((tmp / "sp43-recon.pls").read_bytes() == (tmp / "sp43-pol.pls").read_bytes(),
          "sp43 reconstruction byte-identical")
    check((tmp / "sp43-recon.pls.report.json").exists(), "reconstruct report written")
    run("reconstruct", tmp / "h34-hyp.pls", "--out", tmp / "h34-recon.pls", rc=1)
    check(not (tmp / "h34-recon.pls").exists(), "refusal writes no geometry")
    run("reconstruct", tmp / "h34-hyp.pls", "--out", tmp / "h34-recon.pls",
        "--override-hypotheses")
    check((tmp / "h34-recon.pls").read_bytes() == (tmp / "h34-pol.pls").read_bytes(),
          "h34 reconstruction byte-identical under override")
    rep = json.loads((tmp / "h34-recon.pls.report.json").read_text())
    rk = [c for c in rep["checks"] if c["id"] == "recon(rank>=2)"][0]
    check(rk["stats"]["gq_s"] == 4 and rk["stats"]["gq_t"] == 2, f"h34 GQ order: {rk['stats']}")

    # quotient: identity on classical input, twin collapse, canonicalization
    p = run("quotient", tmp / "sp43-hyp.pls", "--out", tmp / "sp43-quot.pls")
    check(p.stdout.strip() == "n=40 m=90 classes=40", f"quotient counts: {p.stdout!r}")
    check((tmp / "sp43-quot.pls").read_bytes() == (tmp / "sp43-hyp.pls").read_bytes(),
          "quotient identity bytes")
    cm = (tmp / "sp43-quot.pls.classmap").read_text().splitlines()
    check(cm[0] == "classmap 40 40" and all(l == f"{i} {i}" for i, l in enumerate(cm[1:])),
          "identity class map")
    (tmp / "twins.pls").write_text("pls 6 6\n0 2\n0 3\n1 2\n1 3\n2 3\n4 5\n")
    p = run("quotient", tmp / "twins.pls", "--out", tmp / "twins-q.pls")
    check((tmp / "twins-q.pls").read_text() == "pls 5 4\n0 1\n0 2\n1 2\n3 4\n", "twin quotient")
    check((tmp / "twins-q.pls.classmap").read_text() ==
          "classmap 6 5\n0 0\n1 0\n2 1\n3 2\n4 3\n5 4\n", "twin class map")
    (tmp / "invert.pls").write_text("pls 4 2\n2 3\n0 1\n")
    run("quotient", tmp / "invert.pls", "--out", tmp / "invert-q.pls")
    check((tmp / "invert-q.pls").read_text() == "pls 4 2\n0 1\n2 3\n",
          "quotient canonicalizes record order")

    # malformed inputs: parse errors report the line, validation is an input error
    (tmp / "empty.pls").write_text("pls 4 0\n")
    run("quotient", tmp / "empty.pls", "--out", tmp / "x.pls", rc=2)
    run("check", tmp / "empty.pls", "--suite", "main", rc=2)
    cases = {
        "bad-header.pls": ("plz 3 1\n0 1\n", "line 1"),
        "bad-id.pls": ("pls 3 1\n0 7\n", "line 2"),
        "bad-order.pls": ("pls 3 1\n1 0\n", "line 2"),
        "bad-extra.pls": ("pls 3 1\n0 1\n1 2\n", "line 3"),
        "bad-token.pls": ("pls 3 1\n0 x\n", "line 2"),
    }
    for name, (text, where) in cases.items():
        (tmp / name).write_text(text)
        p = run("check", tmp / name, "--suite", "main", rc=2)
        check(where in p.stderr, f"{name}: expected '{where}' in {p.stderr!r}")
    run("check", tmp / "does-not-exist.pls", "--suite", "main", rc=2)
    (tmp / "collision.pls").write_text("pls 4 2\n0 1 2\n0 1 3\n")
    run("check", tmp / "collision.pls", "--suite", "main", rc=2)

    # fischer constructions through the CLI
    p = run("construct", "--fischer", "symplectic_f2", "-d", 4, "--out", tmp / "fsp42.pls")
    check((tmp / "fsp42.pls").read_bytes() == (tmp / "sp42-hyp.pls").read_bytes(),
          "symplectic_f2(4) equals the sp42 hyperbolic file")
    p = run("construct", "--fischer", "orthogonal_f3", "--family", "parabolic", "-d", 5,
            "--out", tmp / "o53.pls")
    check(p.stdout.splitlines()[0] == "n=81 m=360 components=2", f"o53: {p.stdout!r}")
    for comp in ("o53.comp0.pls", "o53.comp1.pls"):
        run("check", tmp / comp, "--suite", "fischer")
    run("construct", "--fischer", "orthogonal_f3", "--family", "symplectic", "-d", 5,
        "--out", tmp / "x.pls", rc=2)
    run("construct", "--fischer", "orthogonal_f3", "--family", "parabolic", "-d", 7,
        "--out", tmp / "x.pls", rc=3)
    run("construct", "--fischer", "symplectic_f2", "-d", 3, "--out", tmp / "x.pls", rc=2)

    # determinism: identical flags give identical bytes, seeds change nothing
    for n in (1, 2):
        d = tmp / f"run{n}"
        d.mkdir()
        run("construct", "--family", "symplectic", "-d", 4, "-q", 3, "--hyperbolic",
            "--out", d / "hyp.pls", "--seed", n)
        run("check", d / "hyp.pls", "--suite", "main", "--out", d / "main.json")
        run("reconstruct", d / "hyp.pls", "--out", d / "recon.pls")
        run("quotient", d / "hyp.pls", "--out", d / "quot.pls")
    for name in ("hyp.pls", "recon.pls", "quot.pls", "quot.pls.classmap"):
        check((tmp / "run1" / name).read_bytes() == (tmp / "run2" / name).read_bytes(),
              f"determinism: {name}")
    for name in ("main.json", "recon.pls.report.json"):
        check(strip_wall((tmp / "run1" / name).read_text()) ==
              strip_wall((tmp / "run2" / name).read_text()), f"determinism: {name}")

    if FAILED:
        print(f"{len(FAILED)} cli test(s) failed:")
        for f in FAILED:
            print(" -", f)
        return 1
    print("all cli tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
