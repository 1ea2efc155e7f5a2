"""Smoke test for the zeno_lab extension module.

Build first, e.g.
    cargo build --release -p zeno-python --features extension-module
    cp target/release/libzeno_lab.so python/zeno_lab.so
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import zeno_lab  # noqa: E402


def main():
    eps, xi1, xi2 = zeno_lab.asymptotic_params(0.5, 10)
    assert math.isclose(xi2 / xi1, zeno_lab.kappa_required(0.5), rel_tol=1e-12)

    cfg = zeno_lab.GateConfig(10, eps, xi1, xi2)
    total, worst, per = zeno_lab.gate_error(cfg)
    assert worst <= total
    for name, parts in per:
        assert math.isclose(sum(parts), 1.0, abs_tol=1e-12), name

    res = zeno_lab.minimize_kappa(10, 0.5)
    assert 10.0 < res["kappa"] < 13.0, res
    assert res["achieved_error"] <= 0.5 + 1e-6

    rows = zeno_lab.reproduce_table1()
    assert [r[1] for r in rows] == [10, 25, 60]

    p2, ratio = zeno_lab.default_rates()
    assert 1e-11 < p2 < 1e-9 and 0 < ratio < 1

    conc, prob = zeno_lab.gate_concurrence(cfg)
    assert 0.0 <= conc <= 1.0 and 0.0 < prob <= 1.0

    try:
        zeno_lab.GateConfig(10, 0.2, 1.0, 0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("xi_two < xi_one must be rejected")

    print("zeno_lab smoke test passed: kappa(N=10, P=0.5) = %.3f" % res["kappa"])


if __name__ == "__main__":
    main()
