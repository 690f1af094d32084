"""Self-contained verification suites for the command line.

Each check compares a fast code path against an independent brute-force
computation written straight from the defining formulas. These are
smaller cousins of the full test suite, sized to finish in a few seconds
without any test-framework dependency.
"""

import cmath
import math
import time
from typing import NamedTuple

import numpy as np

from .augment import AugmentParams, fdg_augment, fdg_st_augment, soft_threshold
from .fourier import dft2, idft2
from .metrics import average_surface_distance, dice, extract_boundary, hausdorff


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _loop_dft2(x: np.ndarray) -> np.ndarray:
    c_n, h_n, w_n = x.shape
    out = np.zeros((c_n, h_n, w_n), dtype=complex)
    for c in range(c_n):
        for u in range(h_n):
            for v in range(w_n):
                acc = 0j
                for h in range(h_n):
                    for w in range(w_n):
                        acc += x[c, h, w] * cmath.exp(
                            -2j * cmath.pi * (h * u / h_n + w * v / w_n)
                        )
                out[c, u, v] = acc
    return out


def _loop_boundary(mask: np.ndarray) -> set:
    h_n, w_n = mask.shape
    points = set()
    for r in range(h_n):
        for c in range(w_n):
            if not mask[r, c]:
                continue
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                rr, cc = r + dr, c + dc
                if not (0 <= rr < h_n and 0 <= cc < w_n) or not mask[rr, cc]:
                    points.add((r, c))
                    break
    return points


def check_fourier(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for h in range(1, 7):
        for w in range(1, 7):
            x = rng.random((1, h, w))
            worst = max(worst, float(np.abs(dft2(x) - _loop_dft2(x)).max()))
    results = [
        CheckResult("fourier.forward-vs-loop", worst <= 1e-9, f"max abs err {worst:.3e}")
    ]
    x = rng.random((3, 32, 32))
    back, residual = idft2(dft2(x))
    err = float(np.abs(back - x).max())
    results.append(
        CheckResult("fourier.round-trip", err <= 1e-9 and residual <= 1e-9,
                     f"err {err:.3e}, imag residual {residual:.3e}")
    )
    spectral = np.abs(dft2(x)) ** 2
    spatial = (x ** 2).sum(axis=(1, 2))
    rel = float(np.abs(spectral.sum(axis=(1, 2)) / (32 * 32) - spatial).max() / spatial.max())
    results.append(CheckResult("fourier.parseval", rel <= 1e-9, f"rel err {rel:.3e}"))
    return results


def check_metrics(trials: int = 2000, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    failures = 0
    worst_asd = 0.0
    for _ in range(trials):
        h = int(rng.integers(2, 9))
        w = int(rng.integers(2, 9))
        masks = []
        for _ in range(2):
            m = np.zeros((h, w), dtype=bool)
            count = int(rng.integers(1, 7))
            flat = rng.choice(h * w, size=min(count, h * w), replace=False)
            m.flat[flat] = True
            masks.append(m)
        a, b = masks
        pa = _loop_boundary(a)
        pb = _loop_boundary(b)
        hd_oracle = max(
            max(min(math.sqrt((r - rr) ** 2 + (c - cc) ** 2) for rr, cc in pb) for r, c in pa),
            max(min(math.sqrt((r - rr) ** 2 + (c - cc) ** 2) for rr, cc in pa) for r, c in pb),
        )
        asd_oracle = (
            sum(min(math.sqrt((r - rr) ** 2 + (c - cc) ** 2) for rr, cc in pb) for r, c in pa)
            + sum(min(math.sqrt((r - rr) ** 2 + (c - cc) ** 2) for rr, cc in pa) for r, c in pb)
        ) / (len(pa) + len(pb))
        tp = int((a & b).sum())
        fp = int((~a & b).sum())
        fn = int((a & ~b).sum())
        dsc_oracle = 1.0 if tp + fp + fn == 0 else 2.0 * tp / (2.0 * tp + fp + fn)

        ba = extract_boundary(a)
        bb = extract_boundary(b)
        if set(map(tuple, ba)) != pa or set(map(tuple, bb)) != pb:
            failures += 1
            continue
        if hausdorff(ba, bb) != hd_oracle or dice(a, b) != dsc_oracle:
            failures += 1
            continue
        worst_asd = max(worst_asd, abs(average_surface_distance(ba, bb) - asd_oracle))
    ok = failures == 0 and worst_asd <= 1e-12
    return [
        CheckResult(
            "metrics.oracle-fuzz", ok,
            f"{trials} pairs, {failures} mismatches, worst asd diff {worst_asd:.3e}",
        )
    ]


def check_augment(trials: int = 25, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst_identity = 0.0
    worst_swap = 0.0
    st_equal = True
    for _ in range(trials):
        xs = rng.random((3, 16, 16))
        xt = rng.random((3, 16, 16))
        out0, _ = fdg_augment(xs, xt, AugmentParams(lam=0.0, st_enabled=False))
        worst_identity = max(worst_identity, float(np.abs(out0 - xs).max()))
        out1, _ = fdg_augment(xs, xt, AugmentParams(lam=1.0, st_enabled=False))
        swapped, _ = idft2(
            np.abs(dft2(xt)) * np.exp(1j * np.angle(dft2(xs)))
        )
        worst_swap = max(worst_swap, float(np.abs(out1 - swapped).max()))
        plain, _ = fdg_augment(xs, xt, AugmentParams(lam=0.7, st_enabled=False))
        st0, _ = fdg_st_augment(xs, xt, AugmentParams(lam=0.7, alpha=0.0, st_enabled=True))
        st_equal = st_equal and np.array_equal(plain, st0)
    shrink_ok = True
    a = rng.random((3, 8, 8)) * 10.0
    t = rng.random(3) * 5.0
    s = soft_threshold(a, t)
    shrink_ok = bool((s >= 0.0).all() and (s <= a).all())
    return [
        CheckResult("augment.lambda-zero-identity", worst_identity <= 1e-6,
                     f"max err {worst_identity:.3e}"),
        CheckResult("augment.lambda-one-swap", worst_swap <= 1e-9,
                     f"max err {worst_swap:.3e}"),
        CheckResult("augment.alpha-zero-matches-plain", st_equal, "bitwise comparison"),
        CheckResult("augment.soft-threshold-shrinks", shrink_ok, "0 <= S(A,T) <= A"),
    ]


def run_all(seed: int = 0) -> list[CheckResult]:
    started = time.perf_counter()
    results = check_fourier(seed) + check_metrics(seed=seed) + check_augment(seed=seed)
    elapsed = time.perf_counter() - started
    results.append(CheckResult("selfcheck.elapsed", True, f"{elapsed:.2f}s"))
    return results
