"""Exit criteria for the package, one test per criterion.

Each test logs a ``[PASS]``/``[FAIL]`` line (shown in the terminal summary)
before asserting.  Tolerances are fixed here and never tuned per run.
Expected values come from independent oracles: ``scipy.signal.lfilter`` and
``freqz`` for filter responses, direct sums for the DFT, normal equations
for least squares.
"""

import io
import json
import time
import warnings

import numpy as np
import scipy.signal

from pronyiir import (
    ExponentialModel,
    FrequencySpec,
    RankDeficiencyWarning,
    SampledSignal,
    TimeDesignProblem,
    ZeroDesignProblem,
    build_cyclic_partition,
    build_partition,
    design_freq,
    design_time,
    dft,
    idft,
    identify,
    impulse_response,
    linear_phase_samples,
    lstsq,
    poly_roots,
    pseudo_impulse,
    solution_error,
    solve_numerator,
    solve_numerator_solution_error,
    synthesize,
)
from pronyiir.cli import RunConfig, run
from pronyiir.zeros import solution_error_basis

from _helpers import (
    lfilter_impulse,
    naive_dft,
    normal_equation_solve,
    pair_by_assignment,
    random_filter,
    random_modes,
    random_stable_den,
)


def _freqz(b, a, n):
    _, H = scipy.signal.freqz(b, a, worN=2 * np.pi * np.arange(n) / n)
    return H


def _time_round_trip_instances():
    rng = np.random.default_rng(1001)
    out = []
    for _ in range(200):
        M, N = int(rng.integers(0, 9)), int(rng.integers(0, 9))
        b, a = random_filter(M, N, rng, rmax=0.95)
        out.append((M, N, b, a, lfilter_impulse(b, a, M + N + 1)))
    return out


def test_criterion_1_time_round_trip(acceptance_log):
    cases = _time_round_trip_instances()
    worst, counted = 0.0, 0
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        for M, N, b, a, h in cases:
            f, rep = design_time(TimeDesignProblem(h, M, N), "interp")
            if rep.condition_estimate < 1e10:
                counted += 1
                worst = max(worst, np.max(np.abs(f.b - b)), np.max(np.abs(f.a - a)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 5.0
    acceptance_log(1, ok, f"max coefficient error {worst:.2e} (< 1e-8) over {counted}/200 "
                          f"well-conditioned instances, {elapsed:.2f} s (< 5 s)")
    assert worst < 1e-8
    assert elapsed < 5.0


def test_criterion_2_interpolation_guarantee(acceptance_log):
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        for M, N, b, a, h in _time_round_trip_instances():
            f, _ = design_time(TimeDesignProblem(h, M, N), "interp")
            got = lfilter_impulse(f.b, f.a, h.size)
            worst = max(worst, np.max(np.abs(got - h)) / np.max(np.abs(h)))
    ok = worst <= 1e-9
    acceptance_log(2, ok, f"max relative impulse-response mismatch {worst:.2e} (<= 1e-9) on 200 instances")
    assert ok


def test_criterion_3_ls_optimality(acceptance_log):
    rng = np.random.default_rng(1003)
    worst_orth, worst_descent = 0.0, -np.inf
    for _ in range(50):
        M, N = int(rng.integers(0, 7)), int(rng.integers(1, 7))
        L = 4 * (M + N)
        b, a = random_filter(M, N, rng)
        h = lfilter_impulse(b, a, L + 1).real + 0.05 * rng.standard_normal(L + 1)
        p = TimeDesignProblem(h, M, N)
        f, rep = design_time(p, "ls")
        part = build_partition(p)
        r = part.h1 + part.H2 @ f.a[1:]
        scale = np.linalg.norm(part.H2, 2) * np.linalg.norm(part.h1)
        worst_orth = max(worst_orth, np.linalg.norm(part.H2.conj().T @ r) / scale)
        base = np.linalg.norm(r)
        for _ in range(100):
            d = rng.standard_normal(N)
            d /= np.linalg.norm(d)
            pert = np.linalg.norm(part.h1 + part.H2 @ (f.a[1:] + 1e-3 * d))
            worst_descent = max(worst_descent, base - pert)
    ok = worst_orth <= 1e-9 and worst_descent <= 1e-12
    acceptance_log(3, ok, f"scaled ||H2^H r|| {worst_orth:.2e} (<= 1e-9); largest decrease under "
                          f"perturbation {worst_descent:.2e} (<= 1e-12)")
    assert worst_orth <= 1e-9
    assert worst_descent <= 1e-12


def test_criterion_4_zero_design_dominance(acceptance_log):
    rng = np.random.default_rng(1004)
    K, M = 30, 3
    strictly, violations, worst_orth = 0, 0, 0.0
    for _ in range(50):
        N = int(rng.integers(1, 7))
        a = random_stable_den(N, rng)
        h = rng.standard_normal(K)
        p = ZeroDesignProblem(a, h, M)
        b_sol = solve_numerator_solution_error(p)
        b_eq = solve_numerator(build_partition(TimeDesignProblem(h, M, N)), a)
        e_sol = solution_error(p, b_sol)
        n_sol = np.linalg.norm(e_sol)
        n_eq = np.linalg.norm(solution_error(p, b_eq))
        if n_sol > n_eq * (1 + 1e-12):
            violations += 1
        if n_sol < n_eq * (1 - 1e-9):
            strictly += 1
        D1 = solution_error_basis(a, K, M)
        worst_orth = max(worst_orth, np.linalg.norm(D1.conj().T @ e_sol)
                         / (np.linalg.norm(D1, 2) * np.linalg.norm(h)))
    ok = violations == 0 and strictly >= 45 and worst_orth <= 1e-9
    acceptance_log(4, ok, f"dominance violations {violations}, strictly better {strictly}/50 (>= 45), "
                          f"scaled ||D1^H e|| {worst_orth:.2e} (<= 1e-9)")
    assert violations == 0
    assert strictly >= 45
    assert worst_orth <= 1e-9


def _freq_round_trip_instances():
    rng = np.random.default_rng(1005)
    out = []
    for _ in range(100):
        M, N = int(rng.integers(0, 7)), int(rng.integers(0, 7))
        b, a = random_filter(M, N, rng, rmax=0.95)
        out.append((M, N, b, a, _freqz(b, a, M + N + 1)))
    return out


def test_criterion_5_frequency_round_trip(acceptance_log):
    worst = 0.0
    for M, N, b, a, H in _freq_round_trip_instances():
        f, _ = design_freq(FrequencySpec(H, M, N), "interp")
        worst = max(worst, np.max(np.abs(f.b - b)), np.max(np.abs(f.a - a)))
    ok = worst <= 1e-7
    acceptance_log(5, ok, f"max coefficient error {worst:.2e} (<= 1e-7) on 100 filters")
    assert ok


def test_criterion_6_error_identity(acceptance_log):
    rng = np.random.default_rng(1006)
    worst_identity, nonzero_pairs = 0.0, 0
    for _ in range(50):
        M, N = int(rng.integers(0, 6)), int(rng.integers(1, 6))
        n = 3 * (M + N + 1) + int(rng.integers(0, 5))
        b, a = random_filter(M, N, rng)
        H = _freqz(b, a, n) * (1 + 0.1 * rng.standard_normal(n))
        H = 0.5 * (H + np.conj(H[(-np.arange(n)) % n]))
        _, rep = design_freq(FrequencySpec(H, M, N), "ls")
        ok_k = np.abs(rep.A_k) > 1e-12
        gap = np.max(np.abs(rep.response_error[ok_k] * rep.A_k[ok_k] - rep.equation_error[ok_k]))
        worst_identity = max(worst_identity, gap / np.max(np.abs(rep.equation_error)))
        # inconsistent data: neither error vanishes
        if np.max(np.abs(rep.equation_error)) > 1e-6 and np.nanmax(np.abs(rep.response_error)) > 1e-6:
            nonzero_pairs += 1

    worst_eps, worst_resp = 0.0, 0.0
    for M, N, b, a, H in _freq_round_trip_instances():
        _, rep = design_freq(FrequencySpec(H, M, N), "interp")
        scale = np.max(np.abs(rep.B_k)) + np.max(np.abs(H * rep.A_k))
        worst_eps = max(worst_eps, np.max(np.abs(rep.equation_error)) / scale)
        inv_a = np.max(1.0 / np.abs(rep.A_k))
        worst_resp = max(worst_resp, np.max(np.abs(rep.response_error)) / (inv_a * scale))
    ok = worst_identity <= 1e-9 and nonzero_pairs == 50 and worst_eps <= 1e-10 and worst_resp <= 1e-10
    acceptance_log(6, ok, f"max |E_k A_k - eps_k| / max|eps| {worst_identity:.2e} (<= 1e-9); "
                          f"both errors nonzero on {nonzero_pairs}/50 LS designs; consistent cases: "
                          f"scaled max|eps| {worst_eps:.2e}, scaled max|E| {worst_resp:.2e} (<= 1e-10)")
    assert worst_identity <= 1e-9
    assert nonzero_pairs == 50
    assert worst_eps <= 1e-10
    assert worst_resp <= 1e-10


def test_criterion_7_lowpass_scenario(acceptance_log):
    spec_doc = {"length": 41, "bands": [{"lo": 0.0, "hi": 0.2, "magnitude": 1.0},
                                        {"lo": 0.2, "hi": 0.5, "magnitude": 0.0}]}
    diag = io.StringIO()
    out, status = run(RunConfig(command="design-freq", M=6, N=6, mode="ls"),
                      json.dumps(spec_doc).encode(), diag=diag)
    doc = json.loads(out)
    assert status == 0, doc
    rep = doc["report"]
    b = np.array([complex(v["re"], v["im"]) for v in doc["filter"]["b"]])
    a = np.array([complex(v["re"], v["im"]) for v in doc["filter"]["a"]])
    eps = np.array([complex(v["re"], v["im"]) for v in rep["equation_error"]])

    # rebuild the cyclic system from the same shorthand independently of the CLI
    f = np.arange(41) / 41
    mags = np.where(np.minimum(f, 1 - f) <= 0.2, 1.0, 0.0)
    H = linear_phase_samples(mags, 6.0)
    part = build_cyclic_partition(pseudo_impulse(FrequencySpec(H, 6, 6)), 6, 6)
    r = part.h1 + part.H2 @ a[1:]
    orth = np.linalg.norm(part.H2.conj().T @ r) / (np.linalg.norm(part.H2, 2) * np.linalg.norm(part.h1))
    upper = np.max(np.abs(eps[:7]))
    moduli = [p["modulus"] for p in rep["poles"]]
    ok = (orth <= 1e-9 and upper <= 1e-10 and len(moduli) == 6 and len(b) == 7 and len(a) == 7
          and doc["group_delay"] == 6)
    acceptance_log(7, ok, f"41-sample M=N=6 lowpass via CLI: scaled ||H2^H r|| {orth:.2e} (<= 1e-9), "
                          f"max upper-7 |eps| {upper:.2e} (<= 1e-10), pole moduli "
                          f"{', '.join(f'{m:.4f}' for m in sorted(moduli))}, stable={rep['stable']}")
    assert orth <= 1e-9
    assert upper <= 1e-10
    assert len(moduli) == 6


def test_criterion_8_parameter_identification(acceptance_log):
    rng = np.random.default_rng(1008)
    worst, closure_worst, real_count = 0.0, 0.0, 0
    for _ in range(100):
        N = int(rng.integers(1, 7))
        real = bool(rng.random() < 0.5)
        K, lam = random_modes(N, real, rng, sep=0.05)
        T = float(rng.uniform(0.5, 2.0))
        model = ExponentialModel(K, np.log(lam + 0j) / T, T)
        sig = synthesize(model, 2 * N)
        if real:
            sig = SampledSignal(sig.y.real, T)
            real_count += 1
        got = identify(sig, N)
        idx = pair_by_assignment(got.poles, model.poles)
        worst = max(worst,
                    np.max(np.abs(got.exponents[idx] - model.exponents)),
                    np.max(np.abs(got.amplitudes[idx] - model.amplitudes)))
        if real:
            for z, k in zip(got.poles, got.amplitudes):
                j = np.argmin(np.abs(got.poles - np.conj(z)))
                closure_worst = max(closure_worst, abs(got.poles[j] - np.conj(z)),
                                    abs(got.amplitudes[j] - np.conj(k)))
    ok = worst <= 1e-6 and closure_worst <= 1e-8
    acceptance_log(8, ok, f"max parameter error {worst:.2e} (<= 1e-6) on 100 models; conjugate "
                          f"closure {closure_worst:.2e} (<= 1e-8) on {real_count} real instances")
    assert worst <= 1e-6
    assert closure_worst <= 1e-8


def test_criterion_9_kernels(acceptance_log):
    rng = np.random.default_rng(1009)
    dft_worst = 0.0
    for n in range(1, 65):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        X = naive_dft(x)
        dft_worst = max(dft_worst, np.max(np.abs(dft(x) - X)), np.max(np.abs(idft(X) - x)))

    root_ratio = 0.0
    for _ in range(200):
        deg = int(rng.integers(1, 11))
        c = rng.standard_normal(deg + 1)
        if rng.random() < 0.5:
            c = c + 1j * rng.standard_normal(deg + 1)
        roots = poly_roots(c)
        assert roots.size == deg
        for r in roots:
            bound = 1e-8 * np.max(np.abs(c)) * max(1.0, abs(r)) ** deg
            root_ratio = max(root_ratio, abs(np.polyval(c, r)) / bound)

    ls_worst = 0.0
    for _ in range(50):
        m = int(rng.integers(3, 15))
        n = int(rng.integers(1, m + 1))
        A = rng.standard_normal((m, n))
        if rng.random() < 0.5:
            A = A + 1j * rng.standard_normal((m, n))
        if np.linalg.cond(A) > 1e3:
            continue
        y = rng.standard_normal(m)
        ls_worst = max(ls_worst, np.max(np.abs(lstsq(A, y).solution - normal_equation_solve(A, y))))
    ok = dft_worst <= 1e-12 and root_ratio <= 1.0 and ls_worst <= 1e-10
    acceptance_log(9, ok, f"dft/idft vs direct sum {dft_worst:.2e} (<= 1e-12, lengths 1-64); "
                          f"worst root residual / bound {root_ratio:.2e} (<= 1) on 200 polynomials; "
                          f"lstsq vs normal equations {ls_worst:.2e} (<= 1e-10)")
    assert dft_worst <= 1e-12
    assert root_ratio <= 1.0
    assert ls_worst <= 1e-10
