"""Smoke tests for the _irsmec extension module.

Run with PYTHONPATH pointing at the directory containing the built module:
    PYTHONPATH=build python tests/python/test_smoke.py
"""
import math
import sys

import _irsmec as m


def approx(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


def test_local_energy():
    dev = m.DeviceParams(1e-28, 8e6, 100.0, 1e9)
    # optimal local frequency meets the deadline exactly
    f = m.optimal_local_frequency(dev, 1.0)
    assert approx(f, 8e8)
    assert approx(m.local_energy(dev, f), 1e-28 * 8e6 * 100.0 * f * f)
    assert approx(m.optimal_local_energy(dev, 1.0), 0.0512)


def test_rate_power_roundtrip():
    dev = m.DeviceParams(1e-28, 8e6, 100.0, 1e9)
    P = m.offload_power(dev, 1e7, 1e-10, 1e-9, 0.5)
    rate = m.achievable_rate(P, 1e-9, 1e7, 1e-10)
    assert approx(8e6 / rate, 0.5)


def test_phase_alignment():
    g = 1 + 1j
    h = [0.3 - 0.2j, -0.1 + 0.4j]
    r = [0.5 + 0.1j, 0.2 - 0.3j]
    theta = m.optimal_phases_continuous(g, h, r)
    amp = m.composite_amplitude(g, h, r, theta)
    expect = abs(g) + sum(abs(ri * hi) for ri, hi in zip(r, h))
    assert approx(amp, expect)
    # discrete never beats continuous, AM never worse than plain rounding
    q = m.quantize_phases(theta, 4)
    am = m.am_discrete_phases(g, h, r, 4, q)
    assert m.composite_amplitude(g, h, r, am) <= amp * (1 + 1e-12)
    assert (m.composite_amplitude(g, h, r, am)
            >= m.composite_amplitude(g, h, r, q) - 1e-15)


def test_psi_inverse():
    tau = m.psi_inverse(8e6, 1e7, 1e-3, 1e-4)
    assert abs(m.psi(8e6, 1e7, 1e-3, tau) + 1e-4) <= 1e-10 * 1e-3


def test_simplex_projection():
    p = m.project_simplex([0.6, 0.8, -0.2], 1.0)
    assert all(x >= 0 for x in p)
    assert sum(p) <= 1.0 + 1e-12
    assert m.pgd_tau_step([0.2, 0.3], [0.0, 0.0], 1.0) == [0.2, 0.3]


def test_run_trial_determinism():
    a = m.run_trial(8, 100, "greedy_irs", 42)
    b = m.run_trial(8, 100, "greedy_irs", 42)
    assert a.total_energy == b.total_energy
    assert a.offloaded == b.offloaded
    assert not a.failed
    # greedy never loses to the forced baselines
    local = m.run_trial(8, 100, "all_local", 42)
    assert a.total_energy <= local.total_energy + 1e-12
    # the enumeration oracle never loses to greedy
    opt = m.run_trial(8, 100, "enumerate_irs", 42)
    assert opt.total_energy <= a.total_energy + 1e-12


def test_bad_scheme_rejected():
    try:
        m.run_trial(8, 100, "nonsense", 1)
    except ValueError:
        return
    raise AssertionError("expected ValueError for unknown scheme")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
