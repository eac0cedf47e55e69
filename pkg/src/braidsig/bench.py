"""Timing report: delimited measurements plus rendered figures.

Measures the two throughput-sensitive paths (product renormalization and
hashing into braids), writes every sample to a CSV file, renders histogram
figures next to it, and returns a summary with the soft targets.  Targets
are reported, not enforced; the acceptance suite allows a wide slack
before failing them.
"""

from __future__ import annotations

import csv
import statistics
import time
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .hashing import HashParams, hash_to_braid
from .rng import XofStream
from .sample import random_braid

MUL_TARGET_MS = 50.0
HASH_TARGET_MS = 100.0
MUL_SHAPE = (10, 10)  # strand count, factor budget
HASH_SHAPE = (16, 8)
HASH_MESSAGE_BYTES = 1024


def _time_mul(seed: int, samples: int) -> list[float]:
    n, l = MUL_SHAPE
    stream = XofStream(seed, label=b"braidsig-bench-mul")
    pairs = [(random_braid(n, l, stream), random_braid(n, l, stream)) for _ in range(samples)]
    out = []
    for x, y in pairs:
        t0 = time.perf_counter()
        _ = x * y
        out.append((time.perf_counter() - t0) * 1000.0)
    return out


def _time_hash(seed: int, samples: int) -> list[float]:
    n, l = HASH_SHAPE
    stream = XofStream(seed, label=b"braidsig-bench-hash")
    messages = [stream.read(HASH_MESSAGE_BYTES) for _ in range(samples)]
    params = HashParams(n, l)
    out = []
    for m in messages:
        t0 = time.perf_counter()
        _ = hash_to_braid(m, params)
        out.append((time.perf_counter() - t0) * 1000.0)
    return out


def run(out_dir: Path, seed: int = 0, mul_samples: int = 200, hash_samples: int = 200) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    mul_ms = _time_mul(seed, mul_samples)
    hash_ms = _time_hash(seed, hash_samples)

    csv_path = out_dir / "bench.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["operation", "sample", "milliseconds"])
        for i, ms in enumerate(mul_ms):
            writer.writerow(["mul", i, f"{ms:.6f}"])
        for i, ms in enumerate(hash_ms):
            writer.writerow(["hash", i, f"{ms:.6f}"])

    fig_path = out_dir / "bench.png"
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for ax, data, title, target in (
        (axes[0], mul_ms, "product, n=%d l=%d" % MUL_SHAPE, MUL_TARGET_MS),
        (axes[1], hash_ms, "hash 1 KiB, n=%d l=%d" % HASH_SHAPE, HASH_TARGET_MS),
    ):
        ax.hist(data, bins=40, color="steelblue")
        ax.axvline(target, color="firebrick", linestyle="--", label=f"target {target:g} ms")
        ax.axvline(statistics.median(data), color="black", label="median")
        ax.set_title(title)
        ax.set_xlabel("milliseconds")
        ax.legend()
    fig.tight_layout()
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)

    return {
        "csv": str(csv_path),
        "figure": str(fig_path),
        "mul": {
            "samples": len(mul_ms),
            "median_ms": statistics.median(mul_ms),
            "max_ms": max(mul_ms),
            "target_ms": MUL_TARGET_MS,
        },
        "hash": {
            "samples": len(hash_ms),
            "median_ms": statistics.median(hash_ms),
            "max_ms": max(hash_ms),
            "target_ms": HASH_TARGET_MS,
        },
    }
