"""Scalar kernels for the trigonometric map.

The kernels are written once, in plain Python over the ``math`` module, and
instantiated through :func:`build` with either ``numba.njit`` or the identity
decorator.  ``numba`` lowers ``math.sin``/``cos``/``tan`` onto the same libm
calls CPython uses, so both backends produce bit-identical trajectories.
``numpy`` ufuncs are deliberately avoided here: ``np.tan`` disagrees with libm
in the last ulp for a fraction of inputs, and a chaotic orbit amplifies that.
"""

import math

import numpy as np

EPS = 1e-12

EQ1 = 0
ALG1 = 1

# status codes returned by the table kernel
DONE = 0
EXHAUSTED = 1
FIXED_POINT = 2


def _identity(fn):
    return fn


def build(jit=_identity):
    """Return a namespace of map kernels compiled with ``jit``."""

    @jit
    def wrap(v):
        r = v - math.floor(v)
        # tiny negative v rounds up to exactly 1.0
        if r >= 1.0:
            r = 0.0
        if r < EPS:
            r = EPS
        return r

    @jit
    def alg_cos(x):
        # half-angle form: LLVM fuses sin(x) and cos(x) into sincos, whose sin
        # differs from libm sin in the last ulp and would split the backends
        s = math.sin(0.5 * x)
        return 1.0 - 2.0 * s * s

    @jit
    def alg_terms(x, a):
        w = 1.0 - alg_cos(x) / x + (3.0 + a) / x
        y = math.sqrt(math.sin(x)) / (0.5 + a * x)
        return w, y

    @jit
    def unwrapped(x, a, mode):
        if mode == EQ1:
            if x < 0.5:
                s = math.sin(a * x)
                return 0.52 + x + s * s
            return 1.5 + a / 2.0 - math.tan(x)
        w, y = alg_terms(x, a)
        return w * y

    @jit
    def advance(x, a, mode):
        return wrap(unwrapped(x, a, mode))

    @jit
    def to_byte(x, b):
        v = x * b
        r = math.floor(v)
        if v - r >= 0.5:
            r += 1.0
        return int(r) & 255

    @jit
    def trajectory(x0, a, mode, n, transient):
        out = np.empty(n, dtype=np.float64)
        x = wrap(x0)
        for _ in range(transient):
            x = advance(x, a, mode)
        for i in range(n):
            x = advance(x, a, mode)
            out[i] = x
        return out

    @jit
    def draw_bytes(x0, a, b, mode, n):
        out = np.empty(n, dtype=np.int64)
        x = wrap(x0)
        for i in range(n):
            x = advance(x, a, mode)
            out[i] = to_byte(x, b)
        return out

    @jit
    def initial_table(x0, a, b, mode, max_iterations):
        table = np.empty(256, dtype=np.int64)
        seen = np.zeros(256, dtype=np.bool_)
        placed = 0
        draws = 0
        x = wrap(x0)
        status = EXHAUSTED
        while draws < max_iterations:
            nxt = advance(x, a, mode)
            draws += 1
            if nxt == x:
                status = FIXED_POINT
                break
            x = nxt
            v = to_byte(x, b)
            if not seen[v]:
                seen[v] = True
                table[placed] = v
                placed += 1
                if placed == 256:
                    status = DONE
                    break
        return table, placed, draws, x, status

    @jit
    def initial_tables(x0s, a_s, b_s, mode, max_iterations):
        k = x0s.shape[0]
        tables = np.empty((k, 256), dtype=np.int64)
        status = np.empty(k, dtype=np.int64)
        for i in range(k):
            t, _, _, _, st = initial_table(x0s[i], a_s[i], b_s[i], mode, max_iterations)
            tables[i] = t
            status[i] = st
        return tables, status

    @jit
    def bifurcation(a_values, x0, mode, samples, transient):
        out = np.empty((a_values.shape[0], samples), dtype=np.float64)
        for i in range(a_values.shape[0]):
            out[i] = trajectory(x0, a_values[i], mode, samples, transient)
        return out

    @jit
    def lyapunov(x0, a, mode, n, delta0):
        x = wrap(x0)
        xp = wrap(x + delta0)
        total = 0.0
        counted = 0
        for _ in range(n):
            y = advance(x, a, mode)
            straddle = mode == EQ1 and ((x < 0.5) != (xp < 0.5))
            if not straddle:
                yp = advance(xp, a, mode)
                d = yp - y
                # separation measured on the circle: the wrap is not a divergence
                if d > 0.5:
                    d -= 1.0
                elif d < -0.5:
                    d += 1.0
                if d != 0.0:
                    total += math.log(abs(d) / delta0)
                    counted += 1
                    xp = wrap(y + delta0 if d > 0.0 else y - delta0)
                else:
                    xp = wrap(y + delta0)
            else:
                xp = wrap(y + delta0)
            x = y
        return total, counted

    ns = {
        "wrap": wrap,
        "alg_cos": alg_cos,
        "alg_terms": alg_terms,
        "unwrapped": unwrapped,
        "advance": advance,
        "to_byte": to_byte,
        "trajectory": trajectory,
        "draw_bytes": draw_bytes,
        "initial_table": initial_table,
        "initial_tables": initial_tables,
        "bifurcation": bifurcation,
        "lyapunov": lyapunov,
    }
    return ns
