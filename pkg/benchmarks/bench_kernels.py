"""Time the compiled and numpy state-vector kernels on large registers.

    python benchmarks/bench_kernels.py --min-qubits 14 --max-qubits 20 --repeat 5
"""

import argparse
import time

import numpy as np

from stairway import kernels


def _best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench(n, backend, repeat, rng):
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    psi /= np.linalg.norm(psi)
    u1 = np.array([[0.6, 0.8j], [0.8j, 0.6]])
    u2 = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
    d = np.exp(1j * np.arange(4.0))
    mid = max(1, n // 2)
    return {
        "1q": _best_time(lambda: kernels.apply_1q(psi, n, mid, u1, backend), repeat),
        "2q": _best_time(lambda: kernels.apply_2q(psi, n, mid, u2, backend), repeat),
        "diag": _best_time(lambda: kernels.apply_diag_2q(psi, n, mid, d, backend), repeat),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--min-qubits", type=int, default=14)
    parser.add_argument("--max-qubits", type=int, default=20)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(0)
    names = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(names)} (import-time default: {kernels.BACKEND})")
    print(f"{'n':>3} {'kernel':>6} " + " ".join(f"{b + ' ms':>12}" for b in names) + f" {'speedup':>8}")
    for n in range(args.min_qubits, args.max_qubits + 1):
        results = {b: bench(n, b, args.repeat, rng) for b in names}
        for kernel in ("1q", "2q", "diag"):
            times = [results[b][kernel] for b in names]
            speedup = ""
            if "cython" in results:
                speedup = f"{results['python'][kernel] / results['cython'][kernel]:.1f}x"
            print(f"{n:>3} {kernel:>6} " + " ".join(f"{1e3 * t:>12.3f}" for t in times) + f" {speedup:>8}")


if __name__ == "__main__":
    main()
