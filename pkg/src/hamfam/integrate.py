"""Numerical integration of the complex-valued Hamilton equations.

The symbolic fields are compiled once (parameters bound to complex numbers)
and then stepped with classical RK4 or an embedded Fehlberg 4(5) pair with
PI step-size control.  Along the way the Hamiltonian is sampled so drift can
be monitored: for the autonomous families H is a first integral and the drift
is a direct error measure; for the non-autonomous family dH/dt = q^3 p + a2 q^2
is nonzero and is checked against finite differences instead.

q = 0 is a genuine singular locus of the dynamics; integration stops cleanly
(never NaN-propagates) when a trajectory approaches it or blows up.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import HamSystem, hamilton_equations
from .poly import LaurentPoly
from .symmetry import BirationalMap

SINGULARITY_FLOOR = 1e-8
OVERFLOW_GUARD = 1e12


class SingularityError(RuntimeError):
    """A stage evaluation fell inside the |q| singularity floor."""

    def __init__(self, t: float, q: complex):
        super().__init__(f"|q| = {abs(q):.3e} inside singularity floor at t = {t}")
        self.t = t
        self.q = q


class BlowupError(RuntimeError):
    """State left the finite-magnitude guard (movable singularity reached)."""


@dataclass
class NumericParams:
    """Complex parameter values for one family."""

    family: str
    values: dict[str, complex]
    n: int | None = None

    def __post_init__(self):
        for name, v in self.values.items():
            if name.startswith("e") and v == 0:
                warnings.warn(f"parameter {name} = 0 leaves the intended "
                              f"parameter domain (nonzero complex)",
                              stacklevel=2)

    def check_complete(self, sys: HamSystem):
        missing = [p for p in sys.params if p not in self.values]
        if missing:
            raise ValueError(f"unbound parameters: {missing}")


@dataclass
class Trajectory:
    """Time grid with complex (q, p) samples and conservation diagnostics."""

    times: np.ndarray
    q: np.ndarray
    p: np.ndarray
    H_values: np.ndarray
    termination: str  # completed | singularity | overflow | step-underflow
    drift: float = field(init=False)

    def __post_init__(self):
        if not (len(self.times) == len(self.q) == len(self.p)
                == len(self.H_values)):
            raise ValueError("sample arrays must have equal length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        self.drift = float(np.max(np.abs(self.H_values - self.H_values[0]))) \
            if len(self.H_values) else 0.0


class CompiledPoly:
    """A LaurentPoly with parameters bound, reduced to (coeff, eq, ep, et) terms."""

    __slots__ = ("spans",)

    def __init__(self, poly: LaurentPoly, params: dict[str, complex]):
        tbl = poly.table
        iq, ip, it = tbl.index("q"), tbl.index("p"), tbl.index("t")
        pidx = {tbl.index(k): complex(v) for k, v in params.items()}
        merged: dict[tuple[int, int, int], complex] = {}
        for exps, coeff in poly.terms.items():
            c = complex(coeff)
            for i, e in enumerate(exps):
                if e and i not in (iq, ip, it):
                    if i not in pidx:
                        raise ValueError(
                            f"unbound parameter {tbl.names[i]!r}")
                    c *= pidx[i] ** e
            key = (exps[iq], exps[ip], exps[it])
            merged[key] = merged.get(key, 0j) + c
        self.spans = [(c, eq, ep, et) for (eq, ep, et), c in merged.items()
                      if c != 0]

    def __call__(self, q: complex, p: complex, t: float | complex) -> complex:
        total = 0j
        for c, eq, ep, et in self.spans:
            v = c
            if eq:
                v *= q ** eq
            if ep:
                v *= p ** ep
            if et:
                v *= t ** et
            total += v
        return total


class CompiledField:
    """Numeric vector field (q, p, t) -> (dq/dt, dp/dt) for one parameter set."""

    def __init__(self, sys: HamSystem, params: NumericParams):
        params.check_complete(sys)
        f_q, f_p = hamilton_equations(sys)
        self.f_q = CompiledPoly(f_q, params.values)
        self.f_p = CompiledPoly(f_p, params.values)
        self.H = CompiledPoly(sys.H, params.values)

    def __call__(self, q: complex, p: complex, t) -> tuple[complex, complex]:
        return self.f_q(q, p, t), self.f_p(q, p, t)


def compile_field(sys: HamSystem, params: NumericParams) -> CompiledField:
    return CompiledField(sys, params)


def _guard(t, q):
    if not (np.isfinite(q.real) and np.isfinite(q.imag)):
        raise BlowupError(f"non-finite q at t = {t}")
    if abs(q) < SINGULARITY_FLOOR:
        raise SingularityError(t, q)
    if abs(q) > OVERFLOW_GUARD:
        raise BlowupError(f"|q| = {abs(q):.3e} above overflow guard at t = {t}")


def step_rk4(state: tuple[complex, complex], t: float, h: float,
             field: CompiledField) -> tuple[complex, complex]:
    """One classical 4th-order Runge-Kutta step over complex state."""
    q, p = state
    _guard(t, q)
    k1q, k1p = field(q, p, t)
    _guard(t, q + h / 2 * k1q)
    k2q, k2p = field(q + h / 2 * k1q, p + h / 2 * k1p, t + h / 2)
    _guard(t, q + h / 2 * k2q)
    k3q, k3p = field(q + h / 2 * k2q, p + h / 2 * k2p, t + h / 2)
    _guard(t, q + h * k3q)
    k4q, k4p = field(q + h * k3q, p + h * k3p, t + h)
    return (q + h / 6 * (k1q + 2 * k2q + 2 * k3q + k4q),
            p + h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p))


# Fehlberg 4(5) tableau: 4th-order propagation, 5th-order error estimate.
_FEHLBERG_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8, 3680 / 513, -845 / 4104),
    (-8 / 27, 2, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_FEHLBERG_C = (0, 1 / 4, 3 / 8, 12 / 13, 1, 1 / 2)
_FEHLBERG_B4 = (25 / 216, 0, 1408 / 2565, 2197 / 4104, -1 / 5, 0)
_FEHLBERG_B5 = (16 / 135, 0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)


def _step_rkf45(state, t, h, field):
    """Embedded 4(5) step; returns (new_state, error_estimate_per_component)."""
    q, p = state
    kq, kp = [], []
    for i in range(6):
        qi, pi = q, p
        for j, a in enumerate(_FEHLBERG_A[i]):
            qi += h * a * kq[j]
            pi += h * a * kp[j]
        _guard(t, qi)
        dq, dp = field(qi, pi, t + _FEHLBERG_C[i] * h)
        kq.append(dq)
        kp.append(dp)
    q4 = q + h * sum(b * k for b, k in zip(_FEHLBERG_B4, kq))
    p4 = p + h * sum(b * k for b, k in zip(_FEHLBERG_B4, kp))
    q5 = q + h * sum(b * k for b, k in zip(_FEHLBERG_B5, kq))
    p5 = p + h * sum(b * k for b, k in zip(_FEHLBERG_B5, kp))
    return (q4, p4), (abs(q5 - q4), abs(p5 - p4))


def integrate(sys: HamSystem, params: NumericParams, q0: complex, p0: complex,
              t_span: tuple[float, float], h: float = 1e-3, tol: float = 1e-9,
              method: str = "fixed-rk4") -> Trajectory:
    """Integrate the Hamilton equations over a finite time span.

    Samples (t, q, p, H) at every accepted step.  Stops cleanly (with the
    reason recorded) at the |q| singularity floor, on numeric overflow, or on
    adaptive step underflow.
    """
    t0, t1 = t_span
    if not (math.isfinite(t0) and math.isfinite(t1) and t1 >= t0):
        raise ValueError(f"bad time span {t_span}")
    if abs(q0) < SINGULARITY_FLOOR:
        raise SingularityError(t0, q0)
    field = compile_field(sys, params)

    times = [t0]
    qs = [complex(q0)]
    ps = [complex(p0)]
    hs = [field.H(q0, p0, t0)]
    termination = "completed"

    def record(t, q, p):
        times.append(t)
        qs.append(q)
        ps.append(p)
        hs.append(field.H(q, p, t))

    t, q, p = t0, complex(q0), complex(p0)
    if method == "fixed-rk4":
        while t < t1 - 1e-15 * max(1.0, abs(t1)):
            step = min(h, t1 - t)
            try:
                q, p = step_rk4((q, p), t, step, field)
            except SingularityError:
                termination = "singularity"
                break
            except (BlowupError, OverflowError):
                termination = "overflow"
                break
            t += step
            if not (np.isfinite(q.real) and np.isfinite(q.imag)
                    and np.isfinite(p.real) and np.isfinite(p.imag)) \
                    or abs(q) > OVERFLOW_GUARD or abs(p) > OVERFLOW_GUARD:
                termination = "overflow"
                break
            record(t, q, p)
    elif method == "adaptive-rk45":
        span = t1 - t0
        h_min, h_max = 1e-12, max(span / 10, 1e-12)
        step = min(h, h_max) if span > 0 else 0.0
        safety, p_order = 0.9, 5.0
        err_prev = 1.0
        while t < t1 - 1e-15 * max(1.0, abs(t1)):
            step = min(step, t1 - t)
            try:
                (qn, pn), (eq, ep) = _step_rkf45((q, p), t, step, field)
            except SingularityError:
                termination = "singularity"
                break
            except (BlowupError, OverflowError):
                termination = "overflow"
                break
            scale_q = tol + tol * max(abs(q), abs(qn))
            scale_p = tol + tol * max(abs(p), abs(pn))
            err = math.sqrt(((eq / scale_q) ** 2 + (ep / scale_p) ** 2) / 2)
            if err <= 1.0:  # accept
                t += step
                q, p = qn, pn
                if not (np.isfinite(q.real) and np.isfinite(q.imag)
                        and np.isfinite(p.real) and np.isfinite(p.imag)) \
                        or abs(q) > OVERFLOW_GUARD or abs(p) > OVERFLOW_GUARD:
                    termination = "overflow"
                    break
                record(t, q, p)
                # PI controller
                fac = safety * (err + 1e-16) ** (-0.7 / p_order) \
                    * (err_prev + 1e-16) ** (0.4 / p_order)
                err_prev = err
            else:
                fac = max(0.1, safety * err ** (-1 / p_order))
            step = min(max(step * min(5.0, fac), h_min), h_max)
            if step <= h_min and err > 1.0:
                termination = "step-underflow"
                break
    else:
        raise ValueError(f"unknown method {method!r}")

    return Trajectory(np.array(times), np.array(qs), np.array(ps),
                      np.array(hs), termination)


def check_symmetry_on_trajectory(traj: Trajectory, m: BirationalMap,
                                 sys: HamSystem, params: NumericParams) -> float:
    """Finite-difference defect of the transformed path against the
    transformed system's field; small residual confirms invariance numerically.

    Transforms every sample by the map, central-differences (Q, P) against the
    (possibly complex) transformed time grid, and compares with the compiled
    field of the system at the mapped parameters.  Returns the max defect.
    """
    params.check_complete(sys)
    for qk in traj.q:
        if abs(qk) < SINGULARITY_FLOOR:
            raise SingularityError(float("nan"), qk)
    pts = []
    mapped_params = None
    for tk, qk, pk in zip(traj.times, traj.q, traj.p):
        coords, mapped_params = m.apply_numeric(
            {"q": qk, "p": pk, "t": complex(tk)}, params.values)
        pts.append(coords)
    field = compile_field(sys, NumericParams(sys.name, mapped_params, sys.n))
    worst = 0.0
    for k in range(1, len(pts) - 1):
        Qm, Pm, Tm = pts[k - 1]
        Qk, Pk, Tk = pts[k]
        Qp, Pp, Tp = pts[k + 1]
        dT = Tp - Tm
        fq, fp = field(Qk, Pk, Tk)
        worst = max(worst,
                    abs((Qp - Qm) / dT - fq),
                    abs((Pp - Pm) / dT - fp))
    return worst


def measure_order(errors_by_h: list[tuple[float, float]]) -> float:
    """Richardson-style order estimate from (h, error) pairs, h halving."""
    if len(errors_by_h) < 2:
        raise ValueError("need at least two (h, error) pairs")
    rates = []
    for (h1, e1), (h2, e2) in zip(errors_by_h, errors_by_h[1:]):
        rates.append(math.log(e1 / e2) / math.log(h1 / h2))
    return sum(rates) / len(rates)


def richardson_order(sys: HamSystem, params: NumericParams, q0: complex,
                     p0: complex, t_span: tuple[float, float],
                     hs: tuple[float, ...] = (1e-2, 5e-3, 2.5e-3)) -> float:
    """Measured RK4 convergence order from successive solution differences
    at the common final time (no exact solution needed)."""
    finals = []
    for h in hs:
        traj = integrate(sys, params, q0, p0, t_span, h=h, method="fixed-rk4")
        if traj.termination != "completed":
            raise RuntimeError(f"sweep run at h={h} ended with "
                               f"{traj.termination}")
        finals.append((traj.q[-1], traj.p[-1]))
    diffs = []
    for (qa, pa), (qb, pb) in zip(finals, finals[1:]):
        diffs.append(math.hypot(abs(qa - qb), abs(pa - pb)))
    rates = []
    for (h1, d1), (h2, d2) in zip(zip(hs, diffs), zip(hs[1:], diffs[1:])):
        rates.append(math.log(d1 / d2) / math.log(h1 / h2))
    return sum(rates) / len(rates)


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """RFC-4180 CSV, '.' decimal, 17 significant digits, one row per step."""
    g = lambda x: f"{x:.17g}"
    h0 = traj.H_values[0] if len(traj.H_values) else 0j
    running = 0.0
    with open(path, "w", newline="") as fh:
        fh.write("t,re_q,im_q,re_p,im_p,re_H,im_H,drift\r\n")
        for t, q, p, H in zip(traj.times, traj.q, traj.p, traj.H_values):
            running = max(running, abs(H - h0))
            fh.write(",".join([g(t), g(q.real), g(q.imag), g(p.real),
                               g(p.imag), g(H.real), g(H.imag),
                               g(running)]) + "\r\n")
