"""Writing manifests and driving the command line from Python.

Each step calls the same entry point as the ``hopfsquare`` console script.
Run with ``python3 demos/04_manifests_and_cli.py``.
"""

import dataclasses
import os
import tempfile

from hopfsquare import examples, manifest
from hopfsquare.cli import main

work = tempfile.mkdtemp(prefix="hopfsquare-demo-")


def run(*argv):
    print("$ hopfsquare", " ".join(argv))
    code = main(list(argv))
    print(f"(exit {code})\n")
    return code


kc2 = os.path.join(work, "kc2.json")
run("gen", "hopf", "--algebra", "c2", "-o", kc2)
run("check", "hopf", kc2)

square = os.path.join(work, "square.json")
cat2 = os.path.join(work, "cat2.json")
run("gen", "normal-pair", "--group", "v4", "-o", square)
run("convert", "square", "cat2", square, "-o", cat2)
run("check", "cat2", cat2)
run("roundtrip", "square", square)

# Manifests are canonical: loading and writing again gives the same bytes.
text = open(square).read()
assert manifest.dumps(manifest.loads(text, base_dir=work)) == text
print("square manifest is a fixed point of load and dump\n")

# A square that fails its axioms exits with status 1.
bad = os.path.join(work, "bad.json")
g = examples.extract_group_square(manifest.load(square))
rows = [list(r) for r in g.actPM]
rows[1][0] = 1
manifest.save(examples.lift_group_square(dataclasses.replace(g, actPM=tuple(map(tuple, rows))),
                                         validate=False), bad)
run("check", "square", bad)

# A field mismatch is an input error, status 2.
run("check", "hopf", kc2, "--field", "fp:5")
