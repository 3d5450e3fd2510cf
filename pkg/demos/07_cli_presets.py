"""Drive the command-line front end from Python and read back its CSV.

The same runs from a shell:
    wsrn --algorithm rfta2 --r 0.25 --sr-mult 2 --runs 10 --seed 42 --out out/
    wsrn --preset lemma1_check --out out/

Run: python demos/07_cli_presets.py
"""
import contextlib
import csv
import io
import tempfile
from pathlib import Path

from wsrn.cli import main

with tempfile.TemporaryDirectory() as tmp:
    written = io.StringIO()
    with contextlib.redirect_stdout(written):      # main prints every file it writes
        main(["--algorithm", "rfta2", "--r", "0.25", "--runs", "10", "--seed", "42",
              "--trace", "--out", tmp])
    print(len(written.getvalue().split()), "files written")
    with open(Path(tmp) / "aggregate.csv") as fh:
        row = next(csv.DictReader(fh))
    print({k: row[k] for k in ("algorithm", "anl", "anl_ci", "arre", "atdpr", "round_msgs_mean")})
    with open(Path(tmp) / "trace_42.csv") as fh:
        print("first hops:", [next(fh).strip() for _ in range(4)])
