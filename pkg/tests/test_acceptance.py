"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
captured output).  Tolerances are pinned here, not configurable.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from dipole_landau import (
    DegenerateConstraint,
    EmptyBracket,
    Frame,
    NoPositiveRoot,
    SystemParams,
    allowed_frequencies,
    allowed_frequencies_n1,
    chi_at,
    default_grid,
    effective_angular,
    energy_level,
    fd_eigensolve,
    ode_residual,
    scales_at,
)
from dipole_landau.oracle import _residual_unchecked


def _report(num: int, label: str, passed: bool, detail: str) -> None:
    print(f"[criterion {num}] {'PASS' if passed else 'FAIL'} - {label}: {detail}")
    assert passed, f"criterion {num} ({label}): {detail}"


def _roots(p, n, l, frame):
    if n == 1:
        return allowed_frequencies_n1(p, l, frame)
    return allowed_frequencies(p, n, l, frame)


def test_criterion_1_quantization_identity():
    rng = np.random.default_rng(101)
    tol = 1e-10
    worst = 0.0
    pairs = 0
    for _ in range(200):
        m, d, a, b = rng.uniform(0.1, 10.0, 4)
        l = int(rng.integers(-5, 6))
        n = int(rng.integers(1, 4))
        om = float(rng.uniform(0.0, 5.0))
        p = SystemParams(m=m, D=d, a=a, b=b, Omega=om)
        for frame in (Frame.STATIC, Frame.ROTATING):
            try:
                omegas = _roots(p, n, l, frame)
            except (NoPositiveRoot, EmptyBracket, DegenerateConstraint):
                continue
            for w in omegas:
                energy = energy_level(p, n, l, w, frame)
                s = scales_at(p, l, frame, w)
                c = chi_at(p, l, frame, energy, w)
                worst = max(worst, abs(c + 0.25 * s.theta**2 - 2.0 * s.tau - 2.0 - 2.0 * n))
                pairs += 1
    assert pairs >= 400, f"too few constrained pairs produced: {pairs}"
    _report(
        1,
        "quantization identity",
        worst < tol,
        f"max |chi + theta^2/4 - 2|tau| - 2 - 2n| = {worst:.3e} over {pairs} pairs (tol {tol:g})",
    )


def test_criterion_2_cubic_recurrence_equivalence():
    rng = np.random.default_rng(202)
    tol = 1e-10
    worst = 0.0
    mismatches = 0
    compared = 0
    for _ in range(100):
        m, d, a, b = rng.uniform(0.1, 10.0, 4)
        l = int(rng.integers(-5, 6))
        om = float(rng.uniform(0.0, 5.0))
        p = SystemParams(m=m, D=d, a=a, b=b, Omega=om)
        for frame in (Frame.STATIC, Frame.ROTATING):
            cubic_roots = allowed_frequencies_n1(p, l, frame)
            scan_roots = allowed_frequencies(p, 1, l, frame)
            if len(cubic_roots) != len(scan_roots):
                mismatches += 1
                continue
            for u, v in zip(cubic_roots, scan_roots):
                worst = max(worst, abs(u - v) / max(abs(u), abs(v)))
                compared += 1
    _report(
        2,
        "cubic/recurrence equivalence (n=1, both frames)",
        mismatches == 0 and worst < tol,
        f"{compared} roots paired, {mismatches} set mismatches, worst rel dev {worst:.3e} "
        f"(tol {tol:g})",
    )


def test_criterion_3_frame_limit():
    rng = np.random.default_rng(303)
    tol = 1e-13
    worst = 0.0
    for _ in range(300):
        m, d, a, b = rng.uniform(0.1, 10.0, 4)
        p = SystemParams(m=m, D=d, a=a, b=b, k=float(rng.uniform(-2, 2)), Omega=0.0)
        n = int(rng.integers(1, 4))
        l = int(rng.integers(-5, 6))
        w = float(rng.uniform(0.05, 50.0))
        es = energy_level(p, n, l, w, Frame.STATIC)
        er = energy_level(p, n, l, w, Frame.ROTATING)
        scale = max(abs(es), abs(er), 1e-300)
        worst = max(worst, abs(es - er) / scale)
    _report(
        3,
        "rotating energies at Omega=0 equal static",
        worst < tol,
        f"max relative deviation {worst:.3e} over 300 draws (tol {tol:g})",
    )


def test_criterion_4_ode_residual():
    rng = np.random.default_rng(404)
    tol = 1e-8
    perturbed_floor = 1e-3
    samples = np.linspace(0.01, 10.0, 500)
    worst = 0.0
    least_perturbed = np.inf
    checked = 0
    vacuous = 0
    for _ in range(40):
        m, d, a, b = rng.uniform(0.1, 10.0, 4)
        l = int(rng.integers(-5, 6))
        om = float(rng.uniform(0.0, 5.0))
        p = SystemParams(m=m, D=d, a=a, b=b, Omega=om)
        for frame in (Frame.STATIC, Frame.ROTATING):
            for w in allowed_frequencies_n1(p, l, frame):
                try:
                    worst = max(worst, ode_residual(p, l, frame, 1, w, samples))
                except ValueError:
                    # wavefunction underflows on the whole window (extreme
                    # couplings put its support below y = 0.01); nothing to test
                    vacuous += 1
                    continue
                least_perturbed = min(
                    least_perturbed,
                    _residual_unchecked(p, l, frame, 1, 1.01 * w, samples),
                )
                checked += 1
    assert checked >= 80, f"too few constrained frequencies checked: {checked} ({vacuous} vacuous)"
    _report(
        4,
        "ODE residual of closed-form F on y in [0.01, 10]",
        worst < tol and least_perturbed > perturbed_floor,
        f"max residual {worst:.3e} at {checked} constrained frequencies (tol {tol:g}); "
        f"min residual after 1% detuning {least_perturbed:.3e} (floor {perturbed_floor:g})",
    )


def test_criterion_5_eigensolver_cross_validation():
    rng = np.random.default_rng(505)
    worst_ratio = 0.0
    cases = 0
    while cases < 20:
        m, d, a, b = rng.uniform(0.1, 2.0, 4)
        l = int(rng.integers(1, 6)) * (1 if rng.random() < 0.5 else -1)
        om = float(rng.uniform(0.0, 2.0))
        frame = Frame.ROTATING if rng.random() < 0.5 else Frame.STATIC
        p = SystemParams(m=m, D=d, a=a, b=b, Omega=om)
        try:
            w = allowed_frequencies_n1(p, l, frame)[0]
        except NoPositiveRoot:
            continue
        energy = energy_level(p, 1, l, w, frame)
        report = fd_eigensolve(p, l, w, frame, count=8)
        err = min(abs(x - energy) for x in report.eigenvalues)
        worst_ratio = max(worst_ratio, err / max(1e-4 * abs(energy), 1e-6))
        cases += 1

    # oscillator-limit anchor under grid refinement: exact ladder (omega/2)(2j+1)
    p0 = SystemParams(m=1.0, B0=2.0)
    exact = (1.0, 3.0, 5.0)
    grid = default_grid(p0, 0, 2.0, Frame.STATIC, n_points=4000)
    rep = fd_eigensolve(p0, 0, 2.0, Frame.STATIC, grid=grid, count=4)
    ladder_err = max(abs(e - x) / x for e, x in zip(rep.eigenvalues[:3], exact))
    ladder_ok = ladder_err < 1e-4 and all(rep.converged[:3])
    _report(
        5,
        "finite-difference eigensolver cross-validation",
        worst_ratio <= 1.0 and ladder_ok,
        f"20 randomized n=1 cases, worst err/allowed = {worst_ratio:.3f}; "
        f"oscillator ladder {exact} reproduced to {ladder_err:.2e} rel under refinement",
    )


def test_criterion_6_degeneracy_breaking():
    floor = 1e-6
    w_ref = 2.0
    # l and l' with equal oscillator-limit energies (n + |l| - l identical for l > 0)
    l_pair = (1, 2)
    p_plain = SystemParams(m=1.0)
    e_plain = [energy_level(p_plain, 1, l, w_ref, Frame.STATIC) for l in l_pair]
    splits = []
    for pert in (SystemParams(m=1.0, D=1.0, a=1.0), SystemParams(m=1.0, b=1.0)):
        energies = []
        for l in l_pair:
            w = allowed_frequencies_n1(pert, l, Frame.STATIC)[0]
            energies.append(energy_level(pert, 1, l, w, Frame.STATIC))
        splits.append(abs(energies[0] - energies[1]))
    _report(
        6,
        "scalar potentials break the oscillator-level degeneracy",
        e_plain[0] == e_plain[1] and all(s > floor for s in splits),
        f"plain energies equal at {e_plain[0]:g}; splits with Kratzer/linear coupling on: "
        f"{splits[0]:.6g}, {splits[1]:.6g} (floor {floor:g})",
    )


def test_criterion_7_page_werner_coupling():
    rng = np.random.default_rng(707)
    tol = 1e-13
    worst = 0.0
    for _ in range(200):
        m, d, a, b = rng.uniform(0.1, 2.0, 4)
        p = SystemParams(m=m, D=d, a=a, b=b, k=float(rng.uniform(-1, 1)),
                         Omega=float(rng.uniform(0.0, 5.0)))
        n = int(rng.integers(1, 4))
        l = int(rng.integers(-5, 6))
        w = float(rng.uniform(0.5, 5.0))
        tau = effective_angular(p, l)
        # rotating closed form with the effective frequency frozen at omega
        frozen = (
            0.5 * w * (n + tau + 1.0)
            - 0.5 * w * float(l)
            - 2.0 * p.b * p.b / (p.m * w * w)
            + 0.5 * p.k * p.k / p.m
            - p.Omega * float(l)
        )
        static = energy_level(p, n, l, w, Frame.STATIC)
        worst = max(worst, abs(frozen - static + p.Omega * float(l)))
    _report(
        7,
        "frozen-frequency rotating energy differs from static by exactly -Omega*l",
        worst < tol,
        f"max |difference + Omega*l| = {worst:.3e} over 200 draws (tol {tol:g})",
    )


def test_criterion_8_determinism(tmp_path):
    doc = {
        "params": {"m": 1.0, "D": 1.0, "a": 1.0, "b": 1.0, "Omega": 0.3},
        "frame": "rotating",
        "n": [1, 2],
        "l": [-2, 2],
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(doc))
    outputs = [
        subprocess.run(
            [sys.executable, "-m", "dipole_landau", "spectrum", "--config", str(cfg)],
            capture_output=True,
            check=True,
        ).stdout
        for _ in range(2)
    ]
    _report(
        8,
        "identical configs produce byte-identical spectrum output",
        outputs[0] == outputs[1],
        f"{len(outputs[0])} bytes compared",
    )
