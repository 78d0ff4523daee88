"""
Instance files and the command-line surface
===========================================

Generate an instance document, decompose it, and verify the result, all
through the same entry points the `matroidpw` console script uses.
Run:  python3 demos/03_cli_roundtrip.py
"""

from __future__ import annotations

import io
import tempfile
from pathlib import Path

from matroidpw.cli import run_command


def run(argv):
    out = io.StringIO()
    err = io.StringIO()
    code = run_command(argv, out, err)
    print(f"$ matroidpw {' '.join(argv)}")
    print(out.getvalue() + err.getvalue(), end="")
    print(f"(exit {code})\n")
    return out.getvalue()


with tempfile.TemporaryDirectory() as tmp:
    inst = Path(tmp) / "instance.txt"
    result = Path(tmp) / "result.txt"

    # a random rank-3 matrix over GF(2); same seed, same instance, always
    text = run(["gen", "random", "3", "7", "2", "--seed", "11"])
    inst.write_text(text)

    # yes/no decision (exit code doubles as the answer: 0 = yes, 1 = no)
    run(["decide", "--t", "2", str(inst)])
    run(["decide", "--t", "1", str(inst)])

    # optimal decomposition via the self-reduction, with a stats line
    text = run(["decompose", "--method", "self-linear", "--stats", str(inst)])
    result.write_text(text)

    # evaluating a handwritten ordering
    run(["width-of", "--order", "1,2,3,4,5,6,7", str(inst)])

    # independent re-check of the result document
    run(["verify", str(inst), str(result)])
