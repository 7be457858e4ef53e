"""Adaptive embedded Runge-Kutta 5(4) integration with event location.

Dormand-Prince pair with the classic PI step-size controller.  Dense output
inside an accepted step uses cubic Hermite interpolation, which is also what
the bisection-based event refinement evaluates.  Everything here is strictly
deterministic: no randomness, no wall-clock, no thread-order dependence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Event", "IntegrationResult", "integrate_dp54"]

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_BETA1 = 0.7 / 5.0   # PI controller, error exponent
_BETA2 = 0.4 / 5.0   # PI controller, memory exponent


@dataclass(frozen=True)
class Event:
    """Scalar event ``g(t, y) = 0`` with a crossing direction.

    direction +1 triggers on rising zero crossings, -1 on falling ones,
    0 on either.  All events are terminal: integration stops at the
    refined crossing and reports which event fired.
    """

    func: object
    direction: int = 0


@dataclass
class IntegrationResult:
    status: str                      # "finished" | "event" | "step_failure"
    t: float
    y: np.ndarray
    t_samples: list = field(default_factory=list)
    y_samples: list = field(default_factory=list)
    event_index: int | None = None
    nfev: int = 0
    nsteps: int = 0
    nrejected: int = 0
    error_accum: float = 0.0         # accumulated norm of local error estimates


def _hermite(t0, y0, f0, t1, y1, f1, t):
    """Cubic Hermite interpolant on [t0, t1] evaluated at t."""
    h = t1 - t0
    s = (t - t0) / h
    s2 = s * s
    s3 = s2 * s
    return ((2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * f0
            + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * f1)


def _initial_step(f, t0, y0, f0, t_end, rtol, atol, max_step):
    scale = atol + rtol * np.abs(y0)
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, abs(t_end - t0))
    y1 = y0 + h0 * f0
    f1 = f(t0 + h0, y1)
    d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, max_step, abs(t_end - t0))


def _locate_event(g, t0, y0, f0, t1, y1, f1, g0):
    """Bisection refinement of an event zero on the Hermite interpolant.

    ``g0`` is the (nonzero) event value at the step start.  Refines until
    the time bracket shrinks below 1e-10 relative to the step endpoints;
    returns the bracket edge on the crossed side.
    """
    lo, hi = t0, t1
    start_positive = g0 > 0.0
    tol = 1e-10 * max(abs(t0), abs(t1), 1.0)
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        gm = g(mid, _hermite(t0, y0, f0, t1, y1, f1, mid))
        if gm != 0.0 and (gm > 0.0) == start_positive:
            lo = mid
        else:
            hi = mid
    return hi


def integrate_dp54(f, t0: float, y0: np.ndarray, t_end: float, *,
                   rtol: float, atol: float, max_step: float,
                   first_step: float | None = None,
                   events: tuple[Event, ...] = (),
                   t_samples: np.ndarray | None = None) -> IntegrationResult:
    """Integrate ``dy/dt = f(t, y)`` forward from ``t0`` to ``t_end``.

    ``t_samples`` (sorted, strictly inside (t0, t_end]) are filled from the
    dense output of each accepted step.  The first triggered event stops
    the run at the refined crossing point.
    """
    y = np.asarray(y0, dtype=float).copy()
    t = float(t0)
    res = IntegrationResult(status="finished", t=t, y=y)
    k = np.empty((7, y.size))
    k[0] = f(t, y)
    res.nfev += 1
    if first_step is not None:
        h = first_step
    else:
        h = _initial_step(f, t, y, k[0], t_end, rtol, atol, max_step)
        res.nfev += 1
    h = min(max(h, 1e-12 * max(abs(t_end - t0), 1.0)), max_step)
    g_prev = [ev.func(t, y) for ev in events]
    err_prev = 1.0
    sample_pos = 0
    n_samples_req = 0 if t_samples is None else len(t_samples)

    while t < t_end:
        h = min(h, t_end - t)
        if h <= 16.0 * np.finfo(float).eps * max(abs(t), 1.0):
            res.status = "step_failure"
            res.t, res.y = t, y
            return res

        # seven stages (FSAL: stage 7 value reused as stage 1 of next step)
        for i in range(1, 7):
            k[i] = f(t + _C[i] * h, y + h * (_A[i] @ k[:i]))
        res.nfev += 6
        y_new = y + h * (_B @ k)
        err_vec = h * (_E @ k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = np.sqrt(np.mean((err_vec / scale) ** 2))

        if not np.isfinite(err):
            h *= 0.1
            res.nrejected += 1
            continue
        if err > 1.0:
            h *= max(_MIN_FACTOR, _SAFETY * err ** (-0.2))
            res.nrejected += 1
            continue

        t_new = t + h
        f_new = k[6]  # stage 7 is f(t_new, y_new) for this tableau
        res.nsteps += 1
        res.error_accum += float(np.sqrt(np.sum(err_vec ** 2)))

        # event detection on the accepted step
        hit_idx, hit_t = None, None
        for j, ev in enumerate(events):
            g0, g1 = g_prev[j], ev.func(t_new, y_new)
            rising = g0 < 0.0 <= g1
            falling = g0 > 0.0 >= g1
            trig = (rising and ev.direction >= 0) or (falling and ev.direction <= 0)
            if trig:
                tc = _locate_event(ev.func, ev.direction, t, y, k[0],
                                   t_new, y_new, f_new, g0, g1)
                if hit_t is None or tc < hit_t:
                    hit_idx, hit_t = j, tc
            g_prev[j] = g1

        t_stop = hit_t if hit_t is not None else t_new
        while sample_pos < n_samples_req and t_samples[sample_pos] <= t_stop:
            ts = t_samples[sample_pos]
            res.t_samples.append(float(ts))
            res.y_samples.append(_hermite(t, y, k[0], t_new, y_new, f_new, ts))
            sample_pos += 1

        if hit_t is not None:
            res.status = "event"
            res.event_index = hit_idx
            res.t = float(hit_t)
            res.y = _hermite(t, y, k[0], t_new, y_new, f_new, hit_t)
            return res

        # PI step-size controller
        if err == 0.0:
            factor = _MAX_FACTOR
        else:
            factor = _SAFETY * err ** (-_BETA1) * err_prev ** _BETA2
        h = min(h * min(_MAX_FACTOR, max(_MIN_FACTOR, factor)), max_step)
        err_prev = max(err, 1e-4)
        t, y = t_new, y_new
        k[0] = f_new

    res.t, res.y = t, y
    return res
