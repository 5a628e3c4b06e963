"""Compare the compiled kernel against the pure-Python fallback.

Kernel-level timings run both implementations in-process on identical inputs;
the end-to-end row re-runs a full linearization in a subprocess with
PADICDYN_BACKEND forced, since the backend is chosen at import time.

    python benchmarks/bench_backends.py
"""

import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from padicdyn._core import available_backends, get_backend  # noqa: E402

PRIME = 3
CAP = 128


def random_arrays(rng, length):
    vals, units, precs = [], [], []
    for _ in range(length):
        if rng.random() < 0.1:
            vals.append(rng.randint(0, 20))
            units.append(0)
            precs.append(0)
        else:
            k = CAP
            u = rng.randrange(1, PRIME**k)
            while u % PRIME == 0:
                u = rng.randrange(1, PRIME**k)
            vals.append(rng.randint(-10, 10))
            units.append(u)
            precs.append(k)
    return vals, units, precs


def bench_series_mul(backend, order, repeats):
    rng = random.Random(order)
    a = random_arrays(rng, order + 1)
    b = random_arrays(rng, order + 1)
    t0 = time.perf_counter()
    for _ in range(repeats):
        backend.series_mul(PRIME, *a, *b, order)
    return (time.perf_counter() - t0) / repeats


def bench_conv_at(backend, order, repeats):
    rng = random.Random(order + 7)
    a = random_arrays(rng, order + 1)
    b = random_arrays(rng, order + 1)
    t0 = time.perf_counter()
    for _ in range(repeats):
        for n in range(2, order + 1):
            backend.conv_at(PRIME, *a, *b, n, 1, n - 1)
    return (time.perf_counter() - t0) / repeats


END_TO_END = r"""
import time
from padicdyn import PadicContext, Polynomial, linearize, mutual_inversion_residual, verify_functional_equation
from padicdyn import _core
ctx = PadicContext(3, 128)
P = Polynomial(ctx, [0, 3, 2, 2, 1])
t0 = time.perf_counter()
for _ in range(3):
    lin = linearize(P, ctx.zero(), 48)
    assert verify_functional_equation(lin).is_certified_zero_through_order()
    assert mutual_inversion_residual(lin).is_certified_zero_through_order()
print(f"{_core.BACKEND} {(time.perf_counter() - t0) / 3:.4f}")
"""


def bench_end_to_end(backend_name):
    env = dict(os.environ, PADICDYN_BACKEND=backend_name)
    env["PYTHONPATH"] = os.path.join(os.path.dirname(__file__), "..", "src")
    out = subprocess.run(
        [sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True
    )
    name, seconds = out.stdout.split()
    assert name == backend_name
    return float(seconds)


def main():
    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled kernel not built; run `python setup.py build_ext --inplace`")
    rows = []
    for order, repeats in ((32, 40), (64, 12), (128, 4)):
        row = {"case": f"series_mul T={order}"}
        for name in backends:
            row[name] = bench_series_mul(get_backend(name), order, repeats)
        rows.append(row)
    for order, repeats in ((48, 12), (96, 4)):
        row = {"case": f"conv_at sweep T={order}"}
        for name in backends:
            row[name] = bench_conv_at(get_backend(name), order, repeats)
        rows.append(row)
    row = {"case": "linearize+verify T=48"}
    for name in backends:
        row[name] = bench_end_to_end(name)
    rows.append(row)

    width = max(len(r["case"]) for r in rows) + 2
    header = "case".ljust(width) + "".join(name.rjust(12) for name in backends)
    if len(backends) == 2:
        header += "speedup".rjust(10)
    print(header)
    for r in rows:
        line = r["case"].ljust(width)
        for name in backends:
            line += f"{r[name] * 1000:9.2f} ms"
        if len(backends) == 2:
            line += f"{r['pure'] / r['compiled']:9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
