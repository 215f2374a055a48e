"""Closed-form MTTDL models for k-of-n repairable systems.

A system of ``n`` devices stays operational while at least ``k`` of them are
up; it survives up to ``f = n - k`` simultaneous failures.  Devices fail at a
constant rate ``1/mttf`` and are repaired at a constant rate ``1/mttr``, so
every estimator here is a function of the four numbers ``(n, k, mttf, mttr)``
alone.  Time units are whatever MTTF and MTTR are expressed in, as long as the
two agree (hours by convention); no conversion is ever applied.

Six estimators are provided:

* ``chen_mttdl``            -- mttf^(f+1) * (k-1)! / (mttr^f * n!), the classic
                               RAID formula series generalized to any (k, n).
* ``angus_mttdl``           -- mean time between system failures of the
                               repairable birth-death chain (repair rate
                               proportional to the number of failed devices).
* ``angus_simplified_mttdl``-- the high mttf/mttr limit of the above:
                               (mttf / (k * C(n,k))) * (mttf/mttr)^(n-k).
* ``markov_mttdl_closed_form`` -- mean time to *first* failure of the same
                               chain with the data-loss state made absorbing.
* ``markov_mttdl_linear_system`` -- the same quantity obtained by solving the
                               chain's expected-absorption-time equations
                               directly; serves as an independent oracle.
* ``correlated_chen_mttdl`` -- Chen's estimate with each successive concurrent
                               failure made ``decade_factor`` times more likely.

All formulas are evaluated in double precision.  Binomial coefficients use the
multiplicative running product and factorial ratios are built as falling
products, never via raw factorials, so intermediate magnitudes stay bounded
for any accepted ``n``.  Results that overflow or underflow double precision
raise ``ModelOverflowError`` instead of returning inf or 0.

Everything in this module is a pure function of its arguments; there is no
shared mutable state and all entry points are safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    InvalidArgumentError,
    InvalidConfigError,
    ModelOverflowError,
    NumericInstabilityError,
)

__all__ = [
    "MAX_DEVICES",
    "MODEL_NAMES",
    "Prediction",
    "StateVector",
    "SystemConfig",
    "angus_mttdl",
    "angus_simplified_mttdl",
    "chen_mttdl",
    "correlated_chen_mttdl",
    "markov_mttdl_closed_form",
    "markov_mttdl_linear_system",
    "predict",
    "rebuild_time_floor",
    "reliability_at",
    "ure_survival_probability",
]

# Beyond ~1000 devices the double-precision binomial magnitudes this module
# relies on become unreliable, so larger systems are rejected outright.
MAX_DEVICES = 1000

MODEL_NAMES = (
    "chen",
    "angus",
    "angus-simplified",
    "markov",
    "markov-linear",
    "correlated-chen",
)


@dataclass(frozen=True)
class SystemConfig:
    """A k-of-n repairable system: device count, quorum, and time constants.

    Invariants: ``1 <= k <= n <= MAX_DEVICES`` and ``mttf, mttr > 0``.  A
    ``k = 0`` system would never lose data and its MTTDL is undefined, so it
    is rejected; ``mttr = 0`` is rejected as well because every model assumes
    a finite repair process.
    """

    n: int
    k: int
    mttf: float
    mttr: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise InvalidConfigError("n and k must be integers")
        if self.n < 1:
            raise InvalidConfigError("n must be a positive integer")
        if self.n > MAX_DEVICES:
            raise InvalidConfigError(
                f"n must not exceed {MAX_DEVICES}: binomial terms lose precision"
            )
        if self.k < 1:
            raise InvalidConfigError("k must be at least 1: a 0-of-n system never fails")
        if self.k > self.n:
            raise InvalidConfigError("k must not exceed n")
        object.__setattr__(self, "mttf", float(self.mttf))
        object.__setattr__(self, "mttr", float(self.mttr))
        if not math.isfinite(self.mttf) or self.mttf <= 0.0:
            raise InvalidConfigError("mttf must be a positive, finite time")
        if not math.isfinite(self.mttr) or self.mttr <= 0.0:
            raise InvalidConfigError("mttr must be a positive, finite time")

    @property
    def fault_tolerance(self) -> int:
        """Number of simultaneous device failures the system survives (n - k)."""
        return self.n - self.k

    @property
    def failure_rate(self) -> float:
        """Per-device failure rate, 1 / mttf."""
        return 1.0 / self.mttf

    @property
    def repair_rate(self) -> float:
        """Per-device repair rate, 1 / mttr."""
        return 1.0 / self.mttr


@dataclass(frozen=True)
class Prediction:
    """One model's MTTDL estimate, in the same time units as the inputs."""

    model: str
    mttdl: float

    def __post_init__(self) -> None:
        if self.model not in MODEL_NAMES:
            raise InvalidArgumentError(f"unknown model identifier: {self.model!r}")
        if not self.mttdl > 0.0:
            raise InvalidArgumentError("mttdl must be positive")


@dataclass(frozen=True)
class StateVector:
    """Expected times to reach data loss, one entry per transient chain state.

    ``times[i]`` is the expected time to absorption starting with ``i`` devices
    failed, for ``i = 0 .. n-k``.  Entries are positive and decrease with
    ``i``: every additional concurrent failure moves the system closer to data
    loss.  The decrease is strict in exact arithmetic; in double precision,
    adjacent entries can collide when a state's expected dwell time falls
    below one ulp of the total, so only monotonicity is enforced here.
    """

    times: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.times) < 1:
            raise InvalidArgumentError("state vector must contain at least one state")
        for value in self.times:
            if not (math.isfinite(value) and value > 0.0):
                raise InvalidArgumentError("expected absorption times must be positive")
        for earlier, later in zip(self.times, self.times[1:]):
            if later > earlier:
                raise InvalidArgumentError(
                    "expected absorption times must decrease with failure count"
                )


def _binomial(n: int, k: int) -> float:
    # Multiplicative form: product of (n - k + i) / i, never raw factorials.
    if k < 0 or k > n:
        return 0.0
    k = min(k, n - k)
    result = 1.0
    for i in range(1, k + 1):
        result = result * (n - k + i) / i
    return result


def _checked(value: float, model: str) -> float:
    if not math.isfinite(value) or value <= 0.0:
        raise ModelOverflowError(
            f"{model} estimate is not representable in double precision"
        )
    return value


def chen_mttdl(cfg: SystemConfig) -> Prediction:
    """Single-shared-repair estimate: mttf^(f+1) * (k-1)! / (mttr^f * n!).

    Evaluated as the falling product (mttf/n) * prod_i mttf / ((n-i) * mttr),
    i = 1..f.  For f = 0 this is exactly mttf / n.
    """
    value = cfg.mttf / cfg.n
    for i in range(1, cfg.fault_tolerance + 1):
        value *= cfg.mttf / ((cfg.n - i) * cfg.mttr)
    return Prediction("chen", _checked(value, "chen"))


def _angus_simplified_value(cfg: SystemConfig) -> float:
    value = cfg.mttf / (cfg.k * _binomial(cfg.n, cfg.k))
    ratio = cfg.mttf / cfg.mttr
    for _ in range(cfg.fault_tolerance):
        value *= ratio
    return value


def angus_simplified_mttdl(cfg: SystemConfig) -> Prediction:
    """High-ratio limit of the repairable-chain MTBF.

    (mttf / (k * C(n, k))) * (mttf / mttr)^(n-k); exactly (n-k)! times the
    ``chen`` estimate.
    """
    return Prediction(
        "angus-simplified", _checked(_angus_simplified_value(cfg), "angus-simplified")
    )


def angus_mttdl(cfg: SystemConfig) -> Prediction:
    """Mean time between failures of the repairable k-of-n birth-death chain.

    (mttf^(n-k+1) / (k * C(n,k) * mttr^(n-k))) * sum_{i=0}^{n-k} C(n,i) *
    (mttr/mttf)^i.  The summation prefix is the simplified estimate, and every
    summand is positive with the i = 0 term equal to 1, so the full estimate
    is never below the simplified one.
    """
    total = 1.0
    term = 1.0
    q = cfg.mttr / cfg.mttf
    for i in range(cfg.fault_tolerance):
        term *= (cfg.n - i) * q / (i + 1)
        total += term
    value = _angus_simplified_value(cfg) * total
    return Prediction("angus", _checked(value, "angus"))


def markov_mttdl_closed_form(cfg: SystemConfig) -> Prediction:
    """Mean time to first data loss of the absorbing failure/repair chain.

    (1/n) * sum_{i=0}^{n-k} (mttf^(i+1) / mttr^i) *
    sum_{j=0}^{n-k-i} C(n, j) / C(n-1, j+i)

    Unlike the between-failures quantity, this starts from the all-operational
    state and never returns from data loss, which matters once mttf/mttr is
    small.
    """
    f = cfg.fault_tolerance
    c_n = [1.0] * (f + 1)
    c_n1 = [1.0] * (f + 1)
    for j in range(1, f + 1):
        c_n[j] = c_n[j - 1] * (cfg.n - j + 1) / j
        c_n1[j] = c_n1[j - 1] * (cfg.n - j) / j
    total = 0.0
    power = cfg.mttf
    ratio = cfg.mttf / cfg.mttr
    for i in range(f + 1):
        inner = 0.0
        for j in range(f - i + 1):
            inner += c_n[j] / c_n1[j + i]
        total += power * inner
        power *= ratio
    return Prediction("markov", _checked(total / cfg.n, "markov"))


def markov_mttdl_linear_system(cfg: SystemConfig) -> StateVector:
    """Solve the absorbing chain's expected-absorption-time equations directly.

    With ``i`` devices failed, failures occur at rate (n-i)/mttf and repairs at
    rate i/mttr, so the expected time T_i to reach data loss satisfies

        ((n-i)*lam + i*mu) * T_i - (n-i)*lam * T_{i+1} - i*mu * T_{i-1} = 1

    for i = 0..n-k with the boundary T_{n-k+1} = 0 (data loss is absorbing; no
    transition leaves it) and no repair term at i = 0.  The system is
    tridiagonal and is solved by forward elimination and back substitution.
    Because row 0's pivot n*lam equals the magnitude of its off-diagonal, the
    elimination factor is exactly -1 there, and that propagates: every
    reduced pivot is exactly (n-i)*lam and every factor exactly -1.  The sweep
    below uses this closed elimination; forming the factors numerically
    instead cancels up to ~1e-7 of the pivot at large mttf/mttr.  All pivots
    are positive by construction, so no pivoting is needed.  T_0 equals the
    closed-form estimate up to rounding.
    """
    lam = cfg.failure_rate
    mu = cfg.repair_rate
    n = cfg.n
    m = cfg.fault_tolerance + 1
    # eliminated right-hand sides: T_i = rhs[i] + T_{i+1}
    rhs_over_pivot = [0.0] * m
    rhs_over_pivot[0] = 1.0 / (n * lam)
    for i in range(1, m):
        pivot = (n - i) * lam
        if not (math.isfinite(pivot) and pivot > 0.0):
            raise NumericInstabilityError(
                f"non-positive pivot at state {i} while eliminating"
            )
        rhs_over_pivot[i] = (1.0 + i * mu * rhs_over_pivot[i - 1]) / pivot
    times = [0.0] * m
    times[m - 1] = rhs_over_pivot[m - 1]
    for i in range(m - 2, -1, -1):
        times[i] = rhs_over_pivot[i] + times[i + 1]
    if not math.isfinite(times[0]):
        raise ModelOverflowError(
            "markov-linear estimate is not representable in double precision"
        )
    return StateVector(tuple(times))


def correlated_chen_mttdl(cfg: SystemConfig, decade_factor: float = 10.0) -> Prediction:
    """Chen's estimate with correlated failures via a per-failure MTTF penalty.

    The i-th concurrent failure (1-indexed) is modeled with an effective MTTF
    of mttf / decade_factor^(i-1), i.e. each additional failure is
    ``decade_factor`` times more likely than the previous one.  With
    ``decade_factor = 1`` this reduces exactly to ``chen_mttdl``.  Note that
    for mttf/mttr below decade_factor^f, adding fault tolerance *lowers* this
    estimate; that cliff is a property of the method, not a bug.
    """
    decade_factor = float(decade_factor)
    if not math.isfinite(decade_factor) or decade_factor < 1.0:
        raise InvalidArgumentError("decade_factor must be at least 1")
    value = cfg.mttf / cfg.n
    for i in range(1, cfg.fault_tolerance + 1):
        value *= (cfg.mttf / decade_factor**i) / ((cfg.n - i) * cfg.mttr)
    return Prediction("correlated-chen", _checked(value, "correlated-chen"))


def predict(cfg: SystemConfig, model: str, *, decade_factor: float = 10.0) -> Prediction:
    """Evaluate one model by identifier; see MODEL_NAMES for the choices."""
    if model == "chen":
        return chen_mttdl(cfg)
    if model == "angus":
        return angus_mttdl(cfg)
    if model == "angus-simplified":
        return angus_simplified_mttdl(cfg)
    if model == "markov":
        return markov_mttdl_closed_form(cfg)
    if model == "markov-linear":
        return Prediction("markov-linear", markov_mttdl_linear_system(cfg).times[0])
    if model == "correlated-chen":
        return correlated_chen_mttdl(cfg, decade_factor)
    raise InvalidArgumentError(f"unknown model identifier: {model!r}")


def reliability_at(mttdl: float, t: float) -> float:
    """Probability of no data loss within time t: exp(-t / mttdl)."""
    if not (math.isfinite(mttdl) and mttdl > 0.0):
        raise InvalidArgumentError("mttdl must be positive")
    if not (math.isfinite(t) and t >= 0.0):
        raise InvalidArgumentError("t must be non-negative")
    return math.exp(-t / mttdl)


def ure_survival_probability(bit_error_rate: float, bits_read: float) -> float:
    """Probability of reading ``bits_read`` bits without an unrecoverable error.

    (1 - bit_error_rate)^bits_read, evaluated in log space with log1p so that
    rates like 1e-14 do not lose precision to the 1 - x subtraction.
    """
    if not (math.isfinite(bit_error_rate) and 0.0 <= bit_error_rate < 1.0):
        raise InvalidArgumentError("bit_error_rate must lie in [0, 1)")
    if not (math.isfinite(bits_read) and bits_read >= 0.0):
        raise InvalidArgumentError("bits_read must be non-negative")
    return math.exp(bits_read * math.log1p(-bit_error_rate))


def rebuild_time_floor(capacity_bytes: float, io_rate: float) -> float:
    """Minimum hours to rewrite ``capacity_bytes`` at ``io_rate`` bytes/second.

    Repair time can be squeezed by hot spares and rebuild prioritization, but
    never below the time it takes the device itself to absorb the writes.
    """
    if not (math.isfinite(capacity_bytes) and capacity_bytes >= 0.0):
        raise InvalidArgumentError("capacity must be non-negative")
    if not (math.isfinite(io_rate) and io_rate > 0.0):
        raise InvalidArgumentError("io rate must be positive")
    return capacity_bytes / io_rate / 3600.0
