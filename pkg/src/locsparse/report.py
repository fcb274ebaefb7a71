"""Render the bench results to a report directory: a delimited results table
plus diagnostic figures."""

from __future__ import annotations

import csv
import os

from .acceptance import CriterionResult


def write_results_csv(results: list[CriterionResult], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["criterion", "name", "status", "seconds", "detail"])
        for r in results:
            writer.writerow([r.number, r.name, "PASS" if r.passed else "FAIL",
                             f"{r.seconds:.3f}", r.detail])


def _setup_matplotlib():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _fig_soundness(plt, data: dict, path: str) -> None:
    points = data.get("points", [])
    if not points:
        return
    exact = [p[0] for p in points]
    bound = [p[1] for p in points]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(exact, bound, s=8, alpha=0.4, label="passing certificates")
    hi = max(exact + bound)
    ax.plot([0, hi], [0, hi], "k--", lw=1, label="bound = exact")
    ax.set_xlabel("exact occupancy fraction")
    ax.set_ylabel("certified lower bound")
    ax.set_title("Certified bounds sit below the exact occupancy")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_witness_sizes(plt, data: dict, path: str) -> None:
    points = data.get("points", [])
    if not points:
        return
    fig, ax = plt.subplots(figsize=(5.5, 4))
    for r, marker in ((2, "o"), (3, "s")):
        xs = [p[0] for p in points if p[2] == r]
        ys = [p[1] for p in points if p[2] == r]
        if xs:
            ax.scatter(xs, ys, s=12, alpha=0.5, marker=marker, label=f"r = {r}")
    hi = max(max(p[0] for p in points), 1)
    ax.plot([0, hi], [0, hi], "k--", lw=1, label="achieved = demanded")
    ax.set_xlabel("guaranteed size (ceiling of the formula)")
    ax.set_ylabel("witness size")
    ax.set_yscale("log")
    ax.set_title("Constructed independent sets vs their guarantees")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_log_partition(plt, data: dict, path: str) -> None:
    curve = data.get("curve")
    if not curve:
        return
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(curve["alphas"], curve["bounds"], "o-", label="lower bound at each size")
    ax.axhline(curve["log_z"], color="k", ls="--", lw=1,
               label="log Z (transfer recurrence)")
    ax.set_xlabel("independent-set size parameter")
    ax.set_ylabel("log partition function")
    ax.set_title("Log-partition lower bounds, path on 2000 vertices")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_glauber(plt, data: dict, path: str) -> None:
    rows = data.get("rows", [])
    if not rows:
        return
    fig, ax = plt.subplots(figsize=(5.5, 4))
    names = [r["graph"] for r in rows]
    gaps = [r["gap"] for r in rows]
    ax.bar(names, gaps, color="tab:blue", alpha=0.7)
    ax.axhline(0.01, color="r", ls="--", lw=1, label="tolerance 0.01")
    ax.set_ylabel("|empirical - exact| occupancy")
    ax.set_title("Glauber dynamics convergence")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(results: list[CriterionResult], outdir: str) -> list[str]:
    """Write results.csv and the figures; returns the file list."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    csv_path = os.path.join(outdir, "results.csv")
    write_results_csv(results, csv_path)
    written.append(csv_path)

    plt = _setup_matplotlib()
    by_number = {r.number: r for r in results}
    renderers = [
        (1, _fig_soundness, "occupancy_soundness.png"),
        (3, _fig_witness_sizes, "iset_guarantees.png"),
        (4, _fig_log_partition, "log_partition_bounds.png"),
        (10, _fig_glauber, "glauber_convergence.png"),
    ]
    for number, renderer, filename in renderers:
        result = by_number.get(number)
        if result is None:
            continue
        path = os.path.join(outdir, filename)
        renderer(plt, result.data, path)
        if os.path.exists(path):
            written.append(path)
    return written
