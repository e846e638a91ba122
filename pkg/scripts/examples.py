"""Run the small worked examples end to end through the command-line front end.

Each line shows the command, the solver's answer, and whether `verify`
accepts the witness.
"""

import json
import shlex
import subprocess
import sys
import tempfile
from pathlib import Path

from fptiso.hypergraph import ColoredHypergraph
from fptiso.instances import InstanceFile, dumps

C4 = ColoredHypergraph.graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
PATH3 = ColoredHypergraph.graph(3, [(0, 1), (1, 2)])
PATH3_MOVED = ColoredHypergraph.graph(3, [(0, 2), (1, 2)])
# red pair {0,1} each tied to one of the blue vertices {2,3}
MATCHED = InstanceFile(ColoredHypergraph.graph(4, [(0, 2), (1, 3)], [7, 7, 0, 0]), red=(0, 1), blue=(2, 3))

CASES = [
    ("exact-weight", "c4", None, ["--k", "2"]),
    ("exact-weight", "c4", None, ["--k", "3"]),
    ("exact-weight", "path3", "path3_moved", ["--k", "2"]),
    ("bounded-color", "c4", None, ["--k", "2"]),
    ("cnf-iso", "c4", None, ["-f", "{formula}"]),
    ("exact-complexity", "path3", None, ["--t", "1"]),
    ("exact-complexity", "c4", None, ["--t", "3"]),
    ("exact-complexity", "c4", None, ["--t", "5"]),
    ("colga", "c4", None, ["--k", "2"]),
    ("colga", "c4", None, ["--k", "3"]),
    ("colga", "matched", None, ["--k", "2"]),
]


def fptiso(*argv):
    out = subprocess.run([sys.executable, "-m", "fptiso", *argv], capture_output=True, text=True)
    return out.returncode, out.stdout.strip()


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        files = {}
        for name, inst in [
            ("c4", InstanceFile(C4)),
            ("path3", InstanceFile(PATH3)),
            ("path3_moved", InstanceFile(PATH3_MOVED)),
            ("matched", MATCHED),
        ]:
            files[name] = tmp / f"{name}.json"
            files[name].write_text(dumps(inst))
        # sigma(0) = 1 and sigma(1) = 0
        formula = tmp / "formula.json"
        formula.write_text(json.dumps([[[0, 1]], [[1, 0]]]))
        for mode, first, second, extra in CASES:
            extra = [e.format(formula=formula) for e in extra]
            argv = [mode, "-i", str(files[first])] + (["-j", str(files[second])] if second else []) + extra
            code, out = fptiso("solve", *argv)
            verdict = ""
            if code == 0:
                w = tmp / "w.json"
                w.write_text(out)
                verdict = " verify=" + fptiso("verify", *argv, "-w", str(w))[1]
            label = " ".join([mode, first] + ([second] if second else []) + [shlex.quote(e) for e in extra if e != str(formula)])
            print(f"{label:45s} exit={code} {out}{verdict}")


if __name__ == "__main__":
    main()
