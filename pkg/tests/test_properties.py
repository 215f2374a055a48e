"""Randomized invariant checks across the model family.

Cases are drawn from seeded generators so runs are reproducible.  Monotonicity
in k is only claimed for chen and angus-simplified when mttf/mttr >= n: below
that, a repair can take longer than the fleet's time to next failure and those
two estimates genuinely invert (the correlated variant makes the same cliff
deliberate).  The full angus and markov estimates are monotone at every ratio
and are tested without the restriction.
"""

from __future__ import annotations

import math
import random

from mttdl import (
    SystemConfig,
    angus_mttdl,
    angus_simplified_mttdl,
    chen_mttdl,
    markov_mttdl_closed_form,
    markov_mttdl_linear_system,
    predict,
)

ALL_FIVE = ("chen", "angus", "angus-simplified", "markov", "markov-linear")


def _log_uniform(rnd: random.Random, low: float, high: float) -> float:
    return math.exp(rnd.uniform(math.log(low), math.log(high)))


def test_factorial_gap_identity_randomized() -> None:
    # angus-simplified = chen * (n-k)!
    rnd = random.Random(101)
    for _ in range(1000):
        n = rnd.randint(1, 20)
        k = rnd.randint(1, n)
        cfg = SystemConfig(n, k, _log_uniform(rnd, 1e-2, 1e6), _log_uniform(rnd, 1e-2, 1e2))
        gap = math.factorial(n - k)
        assert math.isclose(
            angus_simplified_mttdl(cfg).mttdl,
            chen_mttdl(cfg).mttdl * gap,
            rel_tol=1e-12,
        )


def test_degenerate_agreement() -> None:
    # with zero or one spare device the factorial gap is 1
    rnd = random.Random(102)
    for _ in range(500):
        n = rnd.randint(1, 30)
        k = rnd.choice((n, max(1, n - 1)))
        cfg = SystemConfig(n, k, _log_uniform(rnd, 1e-2, 1e6), _log_uniform(rnd, 1e-2, 1e2))
        assert math.isclose(
            chen_mttdl(cfg).mttdl, angus_simplified_mttdl(cfg).mttdl, rel_tol=1e-14
        )


def test_full_angus_never_below_simplified() -> None:
    rnd = random.Random(103)
    for _ in range(1000):
        n = rnd.randint(1, 20)
        k = rnd.randint(1, n)
        cfg = SystemConfig(n, k, _log_uniform(rnd, 1e-3, 1e6), _log_uniform(rnd, 1e-2, 1e3))
        assert angus_mttdl(cfg).mttdl >= angus_simplified_mttdl(cfg).mttdl


def test_monotone_in_k_high_ratio_all_models() -> None:
    rnd = random.Random(104)
    for _ in range(1000):
        n = rnd.randint(2, 20)
        k = rnd.randint(1, n - 1)
        mttr = _log_uniform(rnd, 1e-2, 1e2)
        mttf = mttr * _log_uniform(rnd, n, 1e6)
        weaker = SystemConfig(n, k + 1, mttf, mttr)
        stronger = SystemConfig(n, k, mttf, mttr)
        for model in ALL_FIVE:
            assert predict(stronger, model).mttdl > predict(weaker, model).mttdl, (
                model,
                n,
                k,
                mttf / mttr,
            )


def test_monotone_in_k_any_ratio_for_first_failure_models() -> None:
    # angus and markov stay monotone even when repairs dominate
    rnd = random.Random(105)
    for _ in range(1000):
        n = rnd.randint(2, 16)
        k = rnd.randint(1, n - 1)
        mttr = _log_uniform(rnd, 1e-2, 1e2)
        mttf = mttr * _log_uniform(rnd, 1e-3, 1e6)
        weaker = SystemConfig(n, k + 1, mttf, mttr)
        stronger = SystemConfig(n, k, mttf, mttr)
        for model in ("angus", "markov", "markov-linear"):
            assert predict(stronger, model).mttdl > predict(weaker, model).mttdl


def test_monotone_in_mttf() -> None:
    rnd = random.Random(106)
    for _ in range(1000):
        n = rnd.randint(1, 20)
        k = rnd.randint(1, n)
        mttr = _log_uniform(rnd, 1e-2, 1e2)
        mttf_low = _log_uniform(rnd, 1e-2, 1e5)
        mttf_high = mttf_low * _log_uniform(rnd, 1.01, 100)
        low = SystemConfig(n, k, mttf_low, mttr)
        high = SystemConfig(n, k, mttf_high, mttr)
        for model in ALL_FIVE:
            assert predict(high, model).mttdl > predict(low, model).mttdl


def test_scale_invariance_power_of_two_is_exact() -> None:
    # scaling (mttf, mttr) by 2^j shifts exponents only: bit-exact scaling
    rnd = random.Random(107)
    for _ in range(500):
        n = rnd.randint(1, 20)
        k = rnd.randint(1, n)
        mttf = _log_uniform(rnd, 1e-2, 1e5)
        mttr = _log_uniform(rnd, 1e-2, 1e2)
        c = 2.0 ** rnd.randint(-8, 8)
        base = SystemConfig(n, k, mttf, mttr)
        scaled = SystemConfig(n, k, mttf * c, mttr * c)
        for model in ALL_FIVE:
            assert predict(scaled, model).mttdl == predict(base, model).mttdl * c


def test_scale_invariance_general_factor() -> None:
    rnd = random.Random(108)
    for _ in range(500):
        n = rnd.randint(1, 20)
        k = rnd.randint(1, n)
        mttf = _log_uniform(rnd, 1e-2, 1e5)
        mttr = _log_uniform(rnd, 1e-2, 1e2)
        c = _log_uniform(rnd, 1e-3, 1e3)
        base = SystemConfig(n, k, mttf, mttr)
        scaled = SystemConfig(n, k, mttf * c, mttr * c)
        for model in ALL_FIVE:
            assert math.isclose(
                predict(scaled, model).mttdl, predict(base, model).mttdl * c, rel_tol=1e-12
            )


def test_first_failure_time_never_below_between_failures_time() -> None:
    # deterministic grid: every config and ratio the low-ratio tables probe
    for n in range(1, 13):
        for k in range(1, n + 1):
            for ratio in (0.05, 1.0, 20.0, 2000.0):
                cfg = SystemConfig(n, k, ratio, 1.0)
                assert markov_mttdl_closed_form(cfg).mttdl >= angus_mttdl(cfg).mttdl


def test_linear_system_tracks_closed_form_randomized() -> None:
    rnd = random.Random(109)
    for _ in range(300):
        n = rnd.randint(1, 20)
        k = rnd.randint(1, n)
        cfg = SystemConfig(n, k, _log_uniform(rnd, 1e-3, 1e6), _log_uniform(rnd, 1e-2, 1e2))
        closed = markov_mttdl_closed_form(cfg).mttdl
        solved = markov_mttdl_linear_system(cfg).times[0]
        assert math.isclose(closed, solved, rel_tol=1e-9)
