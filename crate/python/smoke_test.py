"""Smoke test for the pycentext extension.

Builds the extension with cargo if it is not importable, loads it from
target/release, and exercises each binding once.
"""

import importlib.util
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import pycentext

        return pycentext
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "centext-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libpycentext.so"
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / "pycentext.so"
    shutil.copy(built, target)
    spec = importlib.util.spec_from_file_location("pycentext", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    pc = load()
    print("pycentext", pc.version())

    rd = json.loads(pc.root_data("D4"))
    assert rd["coxeter_number"] == 6, rd["coxeter_number"]
    assert pc.closed_form_dims("A2") == (4, 6)
    assert pc.closed_form_dims("D4") == (28, 84)
    node, legs, q1, q2 = pc.nodal_data("E6")
    assert sorted(legs) == [2, 3, 3] and q1 * q2 == 12

    report = json.loads(pc.verify("pi0,pi0mu", types="A2"))
    assert report["summary"] == {"total": 2, "passed": 2, "failed": 0}, report["summary"]

    groups = json.loads(pc.group_orders(["G4", "G7"]))
    assert groups["record"]["pass"]
    assert [r["computed_order"] for r in groups["rows"]] == [24, 144]

    mono = json.loads(pc.monodromy("A3", 1e-8))
    assert mono["record"]["pass"], mono["record"]
    assert mono["report"]["dim"] == 4

    try:
        pc.root_data("B3")
    except ValueError:
        pass
    else:
        raise AssertionError("B3 accepted")

    print("ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
