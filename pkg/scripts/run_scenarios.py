#!/usr/bin/env python3
"""Run `swbranch check` on every scenario document and compare with the stored reports.

    python3 scripts/run_scenarios.py            # compare, exit 1 on any difference
    python3 scripts/run_scenarios.py --update   # rewrite scenarios/expected/*.txt
"""
import argparse
import contextlib
import io
import sys
from pathlib import Path

from swbranch.cli import main

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"
EXPECTED = SCENARIOS / "expected"


def render(path: Path) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["check", "--scenario", str(path)])
    return buf.getvalue() + f"exit status: {code}\n"


def main_script(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--update", action="store_true")
    args = ap.parse_args(argv)
    EXPECTED.mkdir(exist_ok=True)
    bad = 0
    for path in sorted(SCENARIOS.glob("*.json")):
        out = render(path)
        golden = EXPECTED / (path.stem + ".txt")
        if args.update:
            golden.write_text(out)
            print(f"wrote {golden.relative_to(ROOT)}")
        elif not golden.exists() or golden.read_text() != out:
            print(f"DIFF {path.name}")
            bad += 1
        else:
            print(f"ok   {path.name}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main_script())
