"""Tables and matplotlib figures written next to the command line outputs."""

from __future__ import annotations

import csv
import io
import math

import numpy as np
from matplotlib.figure import Figure

from .io import atomic_write


def format_order(order) -> str:
    return ",".join(f"{a:.6g}" for a in order.angles)


def write_table(rows, header, path) -> None:
    """Tab separated table with a header line."""
    with atomic_write(path) as fh:
        text = table_text(rows, header)
        fh.write(text.encode("utf-8"))


def table_text(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _save(fig, path):
    with atomic_write(path) as fh:
        fig.savefig(fh, format="png", dpi=110, bbox_inches="tight", metadata={"Software": None})


def render_features(image, features, path, title=None) -> None:
    """Image, amplitude, orientation, phase and edge map side by side."""
    panels = [
        ("image", np.real(image), "gray"),
        ("amplitude A", features.amplitude, "magma"),
        ("orientation theta", features.orientation, "twilight"),
        ("phase P", features.phase, "coolwarm"),
    ]
    if features.edge_map is not None:
        panels.append(("edge map", features.edge_map.astype(float), "gray_r"))
    fig = Figure(figsize=(3.2 * len(panels), 3.4))
    axes = fig.subplots(1, len(panels))
    for ax, (label, data, cmap) in zip(axes, panels):
        im = ax.imshow(data, cmap=cmap, interpolation="nearest")
        ax.set_title(label, fontsize=10)
        ax.set_xticks([])
        ax.set_yticks([])
        if label != "edge map" and label != "image":
            fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    if title:
        fig.suptitle(title)
    _save(fig, path)


def render_sweep(image, orders, maps, path) -> None:
    """Original image followed by one edge map per order."""
    count = len(maps) + 1
    cols = min(count, 4)
    rows = math.ceil(count / cols)
    fig = Figure(figsize=(3.0 * cols, 3.2 * rows))
    axes = fig.subplots(rows, cols, squeeze=False)
    axes = axes.ravel()
    axes[0].imshow(np.real(image), cmap="gray", interpolation="nearest")
    axes[0].set_title("input", fontsize=10)
    for ax, order, edge_map in zip(axes[1:], orders, maps):
        ax.imshow(edge_map, cmap="gray_r", interpolation="nearest")
        ax.set_title("alpha = (" + format_order(order) + ")", fontsize=9)
    for ax in axes:
        ax.set_xticks([])
        ax.set_yticks([])
    for ax in axes[count:]:
        ax.set_visible(False)
    _save(fig, path)


def render_checks(results, path) -> None:
    """Measured value against tolerance for each invariant, on a log scale."""
    names = [r.name for r in results]
    floor = 1e-17
    values = [max(r.value, floor) for r in results]
    tols = [r.tolerance for r in results]
    y = np.arange(len(results))
    fig = Figure(figsize=(7, 0.45 * len(results) + 1.2))
    ax = fig.subplots()
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    ax.barh(y, values, color=colors, left=floor)
    ax.scatter(tols, y, marker="|", s=300, color="black", label="tolerance")
    ax.set_xscale("log")
    ax.set_yticks(y)
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("measured error")
    ax.legend(loc="lower right", fontsize=8)
    _save(fig, path)
