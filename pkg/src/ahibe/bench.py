"""Wall-clock benchmark harness for the scheme algorithms.

Measures mean/stddev per (l, d) cell on the concrete backend, fits key
generation and delegation time against (l - d), and can compare against
an optional fixed-base preprocessing mode.  All acceptance checks on
these numbers are trend-level (monotonicity, linear fit quality); the
reference millisecond figures for a 175-bit MNT-curve baseline are
carried along for orientation and never asserted.
"""

from __future__ import annotations

import platform
import random
import statistics
import time
from dataclasses import dataclass, field, replace

from . import scheme
from .backend import G2Elem
from .backend import bls12381 as curve

__all__ = [
    "BenchError",
    "BenchCell",
    "BenchReport",
    "run_bench",
    "preprocess_speedup",
    "REFERENCE_TIMINGS_MS",
]

# Reference per-operation timings for a 175-bit MNT curve on a Core i5
# 2.53 GHz notebook.  Orientation only; never asserted.
REFERENCE_TIMINGS_MS = {
    "exp_g1": 1.6,
    "exp_g2": 20.3,
    "exp_gt": 4.7,
    "pair": 15.6,
    ("mexp_g1", 3): 2.1,
    ("mexp_g2", 2): 27.3,
    ("mexp_g2", 3): 28.6,
    ("mpair", 3): 31.2,
}


class BenchError(ValueError):
    pass


@dataclass(frozen=True)
class BenchCell:
    alg: str
    l: int
    d: int
    mean_ns: int
    stddev_ns: int
    reps: int


@dataclass
class BenchReport:
    algorithm: str
    l: int
    cells: list = field(default_factory=list)
    slope_ns_per_level: float = 0.0  # fitted against (l - d)
    intercept_ns: float = 0.0
    r_squared: float = 0.0
    environment: str = ""

    def csv_lines(self):
        yield "alg,l,d,mean_ns,stddev_ns,reps"
        for c in self.cells:
            yield f"{c.alg},{c.l},{c.d},{c.mean_ns},{c.stddev_ns},{c.reps}"

    def summary(self):
        lines = [
            f"algorithm: {self.algorithm}  (l = {self.l}, {self.environment})",
            f"{'d':>4} {'mean ms':>12} {'stddev ms':>12} {'reps':>5}",
        ]
        for c in self.cells:
            lines.append(
                f"{c.d:>4} {c.mean_ns / 1e6:>12.3f} {c.stddev_ns / 1e6:>12.3f} {c.reps:>5}"
            )
        lines.append(
            f"fit vs (l-d): slope {self.slope_ns_per_level / 1e6:.3f} ms/level, "
            f"intercept {self.intercept_ns / 1e6:.3f} ms, R^2 {self.r_squared:.4f}"
        )
        lines.append(
            "reference per-op timings (175-bit MNT curve baseline, "
            "not asserted): "
            + ", ".join(f"{k}={v}ms" for k, v in REFERENCE_TIMINGS_MS.items())
        )
        return "\n".join(lines)


def _timed(fn, reps):
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    mean = statistics.fmean(samples)
    stddev = statistics.stdev(samples) if len(samples) > 1 else 0.0
    return int(mean), int(stddev)


def _fit(cells):
    xs = [float(c.l - c.d) for c in cells]
    ys = [float(c.mean_ns) for c in cells]
    if len(set(xs)) < 2:
        return 0.0, statistics.fmean(ys) if ys else 0.0, 0.0
    fit = statistics.linear_regression(xs, ys)
    try:
        r2 = statistics.correlation(xs, ys) ** 2
    except statistics.StatisticsError:
        r2 = 0.0
    return fit.slope, fit.intercept, r2


def run_bench(alg, suite, l, d_grid=None, reps=3, seed=0):
    """Benchmark one algorithm across identity depths on a concrete suite."""
    if alg not in ("setup", "keygen", "delegate", "encrypt", "decrypt"):
        raise BenchError(f"unknown algorithm {alg!r}")
    if suite.backend == "mock":
        raise BenchError("wall-clock benchmarks need the concrete backend")
    if reps < 1:
        raise BenchError("need at least one repetition per cell")
    rng = random.Random(seed)
    if d_grid is None:
        step = max(1, l // 10)
        d_grid = list(range(1, l + 1, step))
    if any(not 1 <= d <= l for d in d_grid):
        raise BenchError("depth grid outside 1..l")

    mk, pp, _ = scheme.setup(suite, l, rng)
    report = BenchReport(
        algorithm=alg,
        l=l,
        environment=f"{platform.platform()}, python {platform.python_version()}, "
        "single-threaded",
    )
    for d in sorted(set(d_grid)):
        ident = tuple(suite.random_nonzero_scalar(rng) for _ in range(d))
        if alg == "setup":
            fn = lambda: scheme.setup(suite, l, rng)
        elif alg == "keygen":
            fn = lambda: scheme.keygen(ident, mk, pp, rng)
        elif alg == "delegate":
            parent = scheme.keygen(ident[:-1], mk, pp, rng)
            fn = lambda: scheme.delegate(ident, parent, pp, rng)
        elif alg == "encrypt":
            msg = suite.random_gt(rng)
            fn = lambda: scheme.encrypt(ident, msg, pp, rng)
        else:
            sk = scheme.keygen(ident, mk, pp, rng)
            ct = scheme.encrypt(ident, suite.random_gt(rng), pp, rng)
            fn = lambda: scheme.decrypt(ct, sk, pp)
        mean_ns, stddev_ns = _timed(fn, reps)
        report.cells.append(
            BenchCell(alg=alg, l=l, d=d, mean_ns=mean_ns, stddev_ns=stddev_ns, reps=reps)
        )
    report.slope_ns_per_level, report.intercept_ns, report.r_squared = _fit(
        report.cells
    )
    return report


class _PreparedSuite:
    """Concrete-suite proxy routing exponentiations through fixed-base tables.

    Only bases registered via prepare() get tables; everything else falls
    through to the wrapped suite.  Used by the preprocessing benchmark.
    """

    def __init__(self, real):
        self._real = real
        self._tables = {}
        self.backend = real.backend
        self.p = real.p
        self.g1 = real.g1
        self.g2 = real.g2
        self.gt = real.gt

    def prepare(self, elem):
        if isinstance(elem, G2Elem) and elem.payload is not None:
            if elem.payload not in self._tables:
                self._tables[elem.payload] = curve.g2_fixed_base_table(elem.payload)

    def exp(self, base, k):
        tab = (
            self._tables.get(base.payload) if isinstance(base, G2Elem) else None
        )
        if tab is not None:
            return G2Elem(self._real, curve.g2_fixed_base_mul(tab, int(k) % self.p))
        return self._real.exp(base, k)

    def multi_exp(self, bases, scalars):
        if isinstance(bases[0], G2Elem):
            prepared = [b.payload in self._tables for b in bases]
            if any(prepared):
                acc = None
                rest_b, rest_k = [], []
                for b, k, hit in zip(bases, scalars, prepared):
                    if hit:
                        e = self.exp(b, k)
                        acc = e if acc is None else self._real.mul(acc, e)
                    else:
                        rest_b.append(b)
                        rest_k.append(k)
                if rest_b:
                    rest = self._real.multi_exp(rest_b, rest_k)
                    acc = rest if acc is None else self._real.mul(acc, rest)
                return acc
        return self._real.multi_exp(bases, scalars)

    def __getattr__(self, name):
        return getattr(self._real, name)


def preprocess_speedup(suite, l, d, reps=3, seed=0):
    """Measure keygen with and without fixed-base preprocessing.

    Returns (normal_mean_ns, prepared_mean_ns, speedup, prepare_ns).  The
    speedup factor is a measurement to report, not a guarantee; the
    preparation cost is one-time per master key and excluded from the
    per-call numbers.
    """
    if suite.backend == "mock":
        raise BenchError("preprocessing benchmarks need the concrete backend")
    rng = random.Random(seed)
    mk, pp, _ = scheme.setup(suite, l, rng)
    ident = tuple(suite.random_nonzero_scalar(rng) for _ in range(d))
    normal_ns, _ = _timed(lambda: scheme.keygen(ident, mk, pp, rng), reps)

    proxy = _PreparedSuite(suite)
    t0 = time.perf_counter_ns()
    for base in (mk.g_hat, mk.g_hat_alpha, mk.h_hat, *mk.u_hat, pp.w1, pp.w2, pp.w3):
        proxy.prepare(base)
    prepare_ns = time.perf_counter_ns() - t0
    pp2 = replace(pp, suite=proxy)
    mk2 = replace(mk, suite=proxy)
    prepared_ns, _ = _timed(lambda: scheme.keygen(ident, mk2, pp2, rng), reps)
    return normal_ns, prepared_ns, normal_ns / prepared_ns, prepare_ns
