#!/usr/bin/env python3
"""Print the table of cusp fillings W_p (p = 1..7) with their sharpness search results."""
from swbranch.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["plumbing"]))
