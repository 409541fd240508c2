#!/usr/bin/env python3
"""Smoke test for the doflab_py extension module.

Builds the cdylib with cargo, loads it from a temporary directory, and checks
the exposed operations end to end: exact regions, classification, plans,
simulation, time sharing, and SVG rendering.
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(["cargo", "build", "-p", "doflab-py"], cwd=ROOT, check=True)
    for name in ("libdoflab_py.so", "libdoflab_py.dylib", "doflab_py.dll"):
        lib = ROOT / "target" / "debug" / name
        if lib.exists():
            return lib
    raise FileNotFoundError("built extension library not found under target/debug")


def main() -> None:
    lib = build_extension()
    tmp = Path(tempfile.mkdtemp(prefix="doflab-py-"))
    shutil.copy2(lib, tmp / "doflab_py.so")
    sys.path.insert(0, str(tmp))
    import doflab_py

    # Exact region vertices.
    verts = set(doflab_py.vertices(6, 2, 4, 3, "fb_dcsit"))
    assert verts == {("0", "0"), ("4", "0"), ("2", "2"), ("0", "2")}, verts

    region = json.loads(doflab_py.region_json(6, 2, 4, 3, "fb_dcsit"))
    assert region["version"] == "v1"
    assert region["family"] == "fb_dcsit"
    assert len(region["halfplanes"]) >= 4

    # Exact membership: the delayed-CSIT region keeps (5/3, 2), drops (2, 2).
    assert doflab_py.contains(6, 2, 4, 3, "d_csit", "5/3", "2")
    assert not doflab_py.contains(6, 2, 4, 3, "d_csit", "2", "2")

    # Classification and the points the schemes can realize.
    assert json.loads(doflab_py.classify_json(6, 2, 4, 3))["tag"] == "CaseA"
    case_b = json.loads(doflab_py.classify_json(8, 4, 6, 5))
    assert case_b["tag"] == "CaseB"
    assert case_b["witness"]["m1_tilde"] == "8"
    assert json.loads(doflab_py.classify_json(3, 3, 3, 3))["tag"] == "EqualDelayed"
    assert doflab_py.available_points(6, 2, 4, 3) == ["p0"]
    assert doflab_py.available_points(8, 4, 6, 5) == ["p1", "p2"]
    assert doflab_py.available_points(2, 2, 2, 2) == []

    # Corner-point plan structure.
    plan = json.loads(doflab_py.plan_json(6, 2, 4, 3, "p0"))
    assert plan["phase1_slots"] == 1
    assert plan["total_slots"] == 3
    assert plan["claimed_dof"] == ["2", "2"]

    # Monte Carlo simulation, exact and float arithmetic.
    sim = json.loads(doflab_py.simulate_json(6, 2, 4, 3, "p0", trials=25, seed=7))
    assert sim["successes"] == 25 and sim["failures"] == 0, sim
    assert sim["delivered_dof"] == ["2", "2"]
    assert sim["hermeticity"]["violations"] == 0
    sim = json.loads(doflab_py.simulate_json(8, 4, 6, 5, "p2", trials=10, seed=9))
    assert sim["delivered_dof"] == ["8/3", "10/3"], sim
    sim = json.loads(
        doflab_py.simulate_json(6, 2, 4, 3, "p0", trials=5, seed=3, mode="float")
    )
    assert sim["successes"] == 5 and sim["mode"] == "float"

    # Exact time sharing.
    blend = doflab_py.time_share(("8/5", "4"), ("8/3", "10/3"), "3/5")
    assert blend == ("152/75", "56/15"), blend

    # SVG rendering.
    svg = doflab_py.render_svg(6, 2, 4, 3, ["no_csit_fixture", "d_csit", "fb_dcsit"])
    assert svg.startswith("<svg ") and svg.count("<polygon") == 3

    # Errors surface as Python exceptions.
    for bad in (
        lambda: doflab_py.vertices(0, 2, 4, 3, "fb_dcsit"),
        lambda: doflab_py.region_json(6, 2, 4, 3, "nope"),
        lambda: doflab_py.plan_json(2, 2, 2, 2, "p0"),
        lambda: doflab_py.time_share(("1", "1"), ("0", "0"), "7/5"),
    ):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("doflab_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
