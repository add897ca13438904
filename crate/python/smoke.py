"""Smoke test for the l2control_py extension.

Build first with ``cargo build --release -p l2control-py``; the script loads
``target/release/libl2control_py.so`` unless ``L2CONTROL_PY`` points elsewhere.
"""

import cmath
import importlib.machinery
import importlib.util
import json
import math
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    path = os.environ.get("L2CONTROL_PY", ROOT / "target" / "release" / "libl2control_py.so")
    loader = importlib.machinery.ExtensionFileLoader("l2control_py", str(path))
    spec = importlib.util.spec_from_file_location("l2control_py", str(path), loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    l2 = load()

    target = l2.State({-2: 0.5, 0: 0.5j, 1: -0.5, 3: 0.5})
    seq = l2.synthesize_from_e0(target)
    out = l2.State.basis(0).apply(seq)
    fidelity = abs(target.inner(out))
    assert abs(fidelity - 1) < 1e-10, fidelity
    assert len(json.loads(seq.to_json())) == len(seq) > 0

    # transposition of 2 and 7
    perm = l2.Sequence.swap_range(2, 5).as_permutation(-10, 10)
    assert perm[2] == 7 and perm[7] == 2 and perm[0] == 0

    a = l2.State({k: 0.6 ** abs(k) for k in range(-30, 31)}).normalized()
    b = l2.State({k: cmath.exp(0.3j * k) * 0.5 ** abs(k - 2) for k in range(-30, 31)}).normalized()
    plan = l2.synthesize_transfer(a, b, 0.05)
    assert plan.certified_bound <= 0.15
    assert a.apply(plan.sequence).distance(b) <= plan.certified_bound

    w_seq, inner, factors = l2.density_witness(l2.State.basis(0), l2.State.basis(3))
    assert factors == [(0, 3)] and abs(inner - 1) < 1e-15

    schedule = json.loads(l2.compile_pulses(w_seq))
    for p in schedule["pulses"]:
        if p["kind"] == "resonant_pair":
            assert p["frequency"] == abs(2 * p["pair_index"] + 1)

    h = 1 / math.sqrt(2)
    delta, alpha, theta, beta = l2.zyz_decompose([[h, h], [h, -h]])
    assert abs(theta - math.pi / 2) < 1e-12

    assert l2.level_energy(3) == 9 and l2.transition_frequency(0) == 1

    try:
        l2.synthesize_transfer(a, b, 0.5)
    except l2.L2ControlError as e:
        assert "EpsilonOutOfRange" in str(e)
    else:
        raise AssertionError("expected EpsilonOutOfRange")

    passed, report = l2.selfcheck(42)
    assert passed, report
    print("python smoke: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
