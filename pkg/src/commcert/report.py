"""CSV tables and figures for the headline checks.

Renders, into an output directory:

* ``z23_residuals.csv`` / ``z23_residuals.png`` — numeric residual of the
  two-bracket expansion of 1 in the dimension-drop algebra on a [0,1] grid;
* ``saturation.csv`` / ``saturation.png`` — growth of iterated sumsets of
  pair products in small finite rings until the whole ring is reached;
* ``pair_counts.csv`` / ``pair_counts.png`` — certificate sizes for random
  matrices over several coefficient rings (always at most two pairs).

Everything is seeded and deterministically ordered, so reruns are stable.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

from . import z23 as dimension_drop
from .cert import verify
from .explore import brute_report, parse_finite_ring
from .mdecomp import decompose
from .serialize import parse_space

_SATURATION_RINGS = ("M2(F2)", "M2(Z4)", "U2(F2)")
_DECOMPOSE_RINGS = ("Z", "Q", "Z6", "F5", "Q[x]")
_SIZES = (2, 3, 4, 5, 6)
_SAMPLES_PER_CELL = 25


def _ensure_pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _residual_files(out: Path, plt) -> list:
    points = 101
    residuals = dimension_drop.grid_residuals(points)
    rows = [(f"{i / (points - 1):.2f}", f"{r:.3e}") for i, r in enumerate(residuals)]
    csv_path = out / "z23_residuals.csv"
    _write_csv(csv_path, ("t", "residual"), rows)

    fig, ax = plt.subplots(figsize=(7, 4))
    ts = [i / (points - 1) for i in range(points)]
    floor = 1e-18
    ax.semilogy(ts, [max(r, floor) for r in residuals], lw=1.2)
    ax.axhline(1e-12, color="red", ls="--", lw=1, label="tolerance 1e-12")
    ax.set_xlabel("t")
    ax.set_ylabel("max-abs residual of 1 - a[q,rs] - b[x,yz]")
    ax.set_title("Unit identity residual across the dimension-drop interval")
    ax.legend()
    fig.tight_layout()
    png_path = out / "z23_residuals.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _saturation_files(out: Path, plt) -> list:
    curves = []
    rows = []
    for spec in _SATURATION_RINGS:
        ring = parse_finite_ring(spec)
        report = brute_report(ring)
        sizes = report.get("saturation_sizes", [])
        curves.append((spec, sizes, report["size"], report.get("xi")))
        for step, size in enumerate(sizes, start=1):
            rows.append((spec, step, size, report["size"]))
    csv_path = out / "saturation.csv"
    _write_csv(csv_path, ("ring", "summands", "reachable", "ring_size"), rows)

    fig, ax = plt.subplots(figsize=(7, 4))
    for spec, sizes, total, xi in curves:
        steps = list(range(1, len(sizes) + 1))
        label = f"{spec} (xi={xi})" if xi is not None else f"{spec} (never full)"
        ax.plot(steps, sizes, marker="o", label=label)
        ax.axhline(total, ls=":", lw=0.8, color="gray")
    ax.set_xlabel("number of pair-product summands")
    ax.set_ylabel("elements reachable")
    ax.set_title("Sumset saturation in small finite rings")
    ax.set_yscale("log", base=2)
    ax.legend()
    fig.tight_layout()
    png_path = out / "saturation.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _pair_count_files(out: Path, plt, seed: int) -> list:
    rows = []
    max_by_ring = {}
    for spec in _DECOMPOSE_RINGS:
        rng = random.Random(f"{seed}:{spec}")
        for n in _SIZES:
            space = parse_space(f"M{n}({spec})")
            worst = 0
            for _ in range(_SAMPLES_PER_CELL):
                cert = decompose(space.random(rng, bound=1000))
                assert verify(cert)
                worst = max(worst, cert.pair_count())
            rows.append((spec, n, _SAMPLES_PER_CELL, worst))
            max_by_ring.setdefault(spec, []).append(worst)
    csv_path = out / "pair_counts.csv"
    _write_csv(csv_path, ("coefficients", "n", "samples", "max_pairs"), rows)

    fig, ax = plt.subplots(figsize=(7, 4))
    width = 0.8 / len(_DECOMPOSE_RINGS)
    for i, spec in enumerate(_DECOMPOSE_RINGS):
        xs = [n + (i - (len(_DECOMPOSE_RINGS) - 1) / 2) * width for n in _SIZES]
        ax.bar(xs, max_by_ring[spec], width=width, label=spec)
    ax.axhline(2, color="red", ls="--", lw=1, label="bound: 2 pairs")
    ax.set_xticks(list(_SIZES))
    ax.set_xlabel("matrix size n")
    ax.set_ylabel("max pairs over samples")
    ax.set_ylim(0, 3)
    ax.set_title("Certificate size for random matrices")
    ax.legend(ncols=3, fontsize=8)
    fig.tight_layout()
    png_path = out / "pair_counts.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_report(out_dir, seed: int = 0) -> dict:
    """Render every table and figure; returns a manifest of written files."""
    plt = _ensure_pyplot()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    written += _residual_files(out, plt)
    written += _saturation_files(out, plt)
    written += _pair_count_files(out, plt, seed)
    return {"out_dir": str(out), "seed": seed, "written": sorted(str(p) for p in written)}
