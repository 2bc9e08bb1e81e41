"""Pure numpy alternating-optimization loops.

Same signatures and return conventions as the compiled ``_kernels`` module;
used when the extension is not built or ``AINFO_BACKEND=python`` is set.

All arrays are natural logs of probabilities (``-inf`` for zeros) laid out
as ``[x, y]``.  Reverse channels ``r(x|y)`` are stored with columns summing
to one.  Every loop returns its final distributions, the per-cycle
objective trace and a status code (0 tolerance, 1 max iterations,
2 non-finite objective).
"""

import functools

import numpy as np

NINF = -np.inf


def _quiet(fn):
    # -inf + inf shows up in entries that are masked out afterwards
    @functools.wraps(fn)
    def wrapper(*args, **kw):
        with np.errstate(invalid="ignore", divide="ignore"):
            return fn(*args, **kw)

    return wrapper


def lse(a, axis=None):
    m = np.max(a, axis=axis, keepdims=True)
    m = np.where(np.isfinite(m), m, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.log(np.exp(a - m).sum(axis=axis, keepdims=True)) + m
    if axis is None:
        return float(s.reshape(()))
    return np.squeeze(s, axis=axis)


def masked(mask, values):
    with np.errstate(invalid="ignore"):
        return np.where(mask, values, NINF)


def norm_cols(t):
    """Normalize log-columns; all-zero columns become uniform."""
    z = lse(t, 0)
    with np.errstate(invalid="ignore"):
        out = t - z
    bad = ~np.isfinite(z)
    if bad.any():
        out[:, bad] = -np.log(t.shape[0])
    return out


def norm_rows(t, fallback):
    z = lse(t, 1)
    with np.errstate(invalid="ignore"):
        out = t - z[:, None]
    bad = ~np.isfinite(z)
    if bad.any():
        out[bad] = fallback[bad]
    return out, z


# --- single steps, shared by the loops below and by the certification tests ---


@_quiet
def s1_r_step(lw, alpha, logp):
    return norm_cols(logp[:, None] + alpha * lw)


@_quiet
def s1_p_step(lw, alpha, logr):
    beta = 1.0 - 1.0 / alpha
    logc = lse(masked(lw > NINF, lw + beta * logr), 1)
    v = (alpha / (alpha - 1.0)) * logc
    z = lse(v)
    return v - z, z


def posterior_step(logq):
    return norm_cols(logq)


@_quiet
def jo_q_step(lw, alpha, logp, logr):
    beta = 1.0 - 1.0 / alpha
    t = masked(lw > NINF, logp[:, None] / alpha + lw + beta * logr)
    z = lse(t)
    return t - z, z


def c_r_step(logp, logqt):
    return norm_cols(logp[:, None] + logqt)


@_quiet
def c_q_step(lw, alpha, logr):
    beta = 1.0 - 1.0 / alpha
    u = masked(lw > NINF, lw + beta * logr)
    logqt, logc = norm_rows(u, lw)
    return logqt, logc


@_quiet
def c_p_step(lw, alpha, logqt, logr):
    qt = np.exp(logqt)
    pos = qt > 0
    with np.errstate(invalid="ignore"):
        g = np.where(pos, qt * logr, 0.0).sum(1)
        g = g + (alpha / (1.0 - alpha)) * np.where(pos, qt * (logqt - lw), 0.0).sum(1)
    z = lse(g)
    return g - z, z


@_quiet
def lp_q_step(lw, alpha, logp, logr):
    beta = 1.0 - 1.0 / alpha
    e = alpha / (2.0 * alpha - 1.0)
    m = masked(lw > NINF, lw + beta * logr)
    logqyx, logc = norm_rows(m, lw)
    s = masked(logp > NINF, e * (logp + logc))
    z = lse(s)
    logqx = s - z
    return logqx[:, None] + logqyx, z


def ac_qy_step(logp, logqt):
    return lse(logp[:, None] + logqt, 0)


@_quiet
def ac_q_step(lw, alpha, logqy):
    u = masked(lw > NINF, alpha * lw + (1.0 - alpha) * logqy[None, :])
    return norm_rows(u, lw)


@_quiet
def lpdef_qx_step(logP, alpha, logqy):
    a = lse(masked(logP > NINF, alpha * logP + (1.0 - alpha) * logqy[None, :]), 1) / alpha
    z = lse(a)
    return a - z, z


@_quiet
def lpdef_qy_step(logP, alpha, logqx):
    b = lse(masked(logP > NINF, alpha * logP + (1.0 - alpha) * logqx[:, None]), 0) / alpha
    z = lse(b)
    return b - z, z


@_quiet
def lpvc_q_step(lw, alpha, logp, logqy):
    u = masked(lw > NINF, alpha * lw + (1.0 - alpha) * logqy[None, :])
    logqyx, lz = norm_rows(u, lw)
    s = masked(logp > NINF, logp + lz / alpha)
    z = lse(s)
    return (s - z)[:, None] + logqyx, z


# --- loops ---


def _stop(trace, tol):
    f = trace[-1]
    if not np.isfinite(f):
        return 2
    if len(trace) > 1 and abs(f - trace[-2]) <= tol:
        return 0
    return -1


def _finish(trace, status):
    return np.asarray(trace, dtype=np.float64), (1 if status < 0 else status)


def s1(lw, alpha, logp0, tol, max_iter):
    lw = np.asarray(lw)
    logp = np.array(logp0, dtype=np.float64)
    logr = None
    trace, status = [], -1
    for _ in range(max_iter):
        logr = s1_r_step(lw, alpha, logp)
        logp, z = s1_p_step(lw, alpha, logr)
        trace.append(z)
        status = _stop(trace, tol)
        if status >= 0:
            break
    tr, st = _finish(trace, status)
    return logp, logr, tr, st


def jo(lw, alpha, logq0, tol, max_iter):
    lw = np.asarray(lw)
    logq = np.array(logq0, dtype=np.float64)
    ratio = alpha / (alpha - 1.0)
    logr = logp = None
    trace, status = [], -1
    for _ in range(max_iter):
        logr = posterior_step(logq)
        logp = lse(logq, 1)
        logq, z = jo_q_step(lw, alpha, logp, logr)
        trace.append(ratio * z)
        status = _stop(trace, tol)
        if status >= 0:
            break
    tr, st = _finish(trace, status)
    return logq, logr, logp, tr, st


def _entropy_from_log(logp):
    p = np.exp(logp)
    return float(-np.where(p > 0, p * np.where(p > 0, logp, 0.0), 0.0).sum())


def c_ao(lw, alpha, logp0, logqt0, update_p, tol, max_iter):
    lw = np.asarray(lw)
    logp = np.array(logp0, dtype=np.float64)
    logqt = np.array(logqt0, dtype=np.float64)
    ratio = alpha / (alpha - 1.0)
    h = _entropy_from_log(logp)
    pmask = logp > NINF
    logr = None
    trace, status = [], -1
    for _ in range(max_iter):
        logr = c_r_step(logp, logqt)
        logqt, logc = c_q_step(lw, alpha, logr)
        if update_p:
            logp, z = c_p_step(lw, alpha, logqt, logr)
        else:
            z = h + ratio * float(np.exp(logp[pmask]) @ logc[pmask])
        trace.append(z)
        status = _stop(trace, tol)
        if status >= 0:
            break
    tr, st = _finish(trace, status)
    return logp, logqt, logr, tr, st


def lp_ao(lw, alpha, logp0, logq0, update_p, tol, max_iter):
    lw = np.asarray(lw)
    logp = np.array(logp0, dtype=np.float64)
    logq = np.array(logq0, dtype=np.float64)
    coef = (2.0 * alpha - 1.0) / (alpha - 1.0)
    logr = None
    trace, status = [], -1
    for _ in range(max_iter):
        logr = posterior_step(logq)
        if update_p:
            logp = lse(logq, 1)
        logq, z = lp_q_step(lw, alpha, logp, logr)
        trace.append(coef * z)
        status = _stop(trace, tol)
        if status >= 0:
            break
    tr, st = _finish(trace, status)
    return logp, logq, logr, tr, st


def ac_lt1(lw, alpha, logp, logqt0, tol, max_iter):
    lw = np.asarray(lw)
    logp = np.asarray(logp, dtype=np.float64)
    logqt = np.array(logqt0, dtype=np.float64)
    pmask = logp > NINF
    pw = np.exp(logp[pmask])
    logqy = None
    trace, status = [], -1
    for _ in range(max_iter):
        logqy = ac_qy_step(logp, logqt)
        logqt, lz = ac_q_step(lw, alpha, logqy)
        trace.append(float(pw @ lz[pmask]) / (alpha - 1.0))
        status = _stop(trace, tol)
        if status >= 0:
            break
    tr, st = _finish(trace, status)
    return logqt, logqy, tr, st


def lp_def(logP, alpha, logqy0, tol, max_iter):
    logP = np.asarray(logP)
    logqy = np.array(logqy0, dtype=np.float64)
    ratio = alpha / (alpha - 1.0)
    logqx = None
    trace, status = [], -1
    for _ in range(max_iter):
        logqx, _z = lpdef_qx_step(logP, alpha, logqy)
        logqy, z = lpdef_qy_step(logP, alpha, logqx)
        trace.append(ratio * z)
        status = _stop(trace, tol)
        if status >= 0:
            break
    tr, st = _finish(trace, status)
    return logqx, logqy, tr, st


def lp_vc_lt1(lw, alpha, logp, logq0, tol, max_iter):
    lw = np.asarray(lw)
    logp = np.asarray(logp, dtype=np.float64)
    logq = np.array(logq0, dtype=np.float64)
    ratio = alpha / (alpha - 1.0)
    logqy = None
    trace, status = [], -1
    for _ in range(max_iter):
        logqy = lse(logq, 0)
        logq, z = lpvc_q_step(lw, alpha, logp, logqy)
        trace.append(ratio * z)
        status = _stop(trace, tol)
        if status >= 0:
            break
    tr, st = _finish(trace, status)
    return logq, logqy, tr, st
