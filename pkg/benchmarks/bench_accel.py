"""Compare the numba-accelerated kernels against the pure-numpy fallback.

Run twice, once per path:

    python benchmarks/bench_accel.py
    COPKERN_DISABLE_NUMBA=1 python benchmarks/bench_accel.py

or rely on the in-process comparison below, which times both implementations
directly (the numba path is skipped when numba is unavailable or disabled).
"""

import time

import numpy as np

from copkern import _accel


def bench(fn, *args, repeat=5):
    fn(*args)                      # warm up / trigger compilation
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    print(f"numba available and enabled: {_accel.HAVE_NUMBA}")

    for n in (1_000, 5_000, 20_000):
        x, y = rng.random(n), rng.random(n)
        t_np = bench(_accel._dominance_counts_np, x, y)
        line = f"dominance_counts n={n:>6}: numpy {t_np * 1e3:8.2f} ms"
        if _accel.HAVE_NUMBA:
            t_nb = bench(_accel._dominance_counts_nb, x, y)
            line += f"   numba {t_nb * 1e3:8.2f} ms   speedup {t_np / t_nb:5.1f}x"
            assert np.array_equal(
                _accel._dominance_counts_np(x, y), _accel._dominance_counts_nb(x, y)
            )
        print(line)

    for m in (513, 4097, 65537):
        f = np.sort(rng.random(m))
        f = (f - f[0]) / (f[-1] - f[0])
        g = np.linspace(0, 1, m)

        def levy_np(f, g):
            orig = _accel._levy_check
            _accel._levy_check = _accel._levy_check_np
            try:
                return _accel.levy_distance(f, g)
            finally:
                _accel._levy_check = orig

        t_np = bench(levy_np, f, g)
        line = f"levy_distance m={m:>6}: numpy {t_np * 1e3:8.3f} ms"
        if _accel.HAVE_NUMBA:
            t_nb = bench(_accel.levy_distance, f, g)
            line += f"   numba {t_nb * 1e3:8.3f} ms   speedup {t_np / t_nb:5.1f}x"
            assert levy_np(f, g) == _accel.levy_distance(f, g)
        print(line)


if __name__ == "__main__":
    main()
