"""CSV and SVG emitters for spectral flows.

The flow CSV header and 12-significant-digit number format are a fixed
external contract; emission is single-writer and byte-deterministic for
a given FlowResult.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .spectral import FlowResult, SpectrumTable

FLOW_CSV_HEADER = "sweep_kind,grid_value,level_index,energy,group_id,group_size,n_fock,converged"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _group_of(table: SpectrumTable, level: int) -> tuple[int, int]:
    for gid, (start, size) in enumerate(table.groups):
        if start <= level < start + size:
            return gid, size
    raise AssertionError(f"level {level} not covered by groups {table.groups}")


def emit_flow_csv(flow: FlowResult, path: str | Path) -> None:
    """Write one row per (grid point, level), ordered by grid then level."""
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            fh.write(FLOW_CSV_HEADER + "\n")
            for gval, table in zip(flow.grid, flow.tables):
                for level, energy in enumerate(table.energies):
                    gid, gsize = _group_of(table, level)
                    fh.write(
                        f"{flow.sweep_kind},{_fmt(gval)},{level},{_fmt(energy)},"
                        f"{gid},{gsize},{table.n_fock_used},"
                        f"{'true' if table.converged else 'false'}\n"
                    )
    except OSError as exc:
        raise ConfigError(f"cannot write CSV {path}: {exc}") from exc


def parse_flow_csv(path: str | Path) -> FlowResult:
    """Read back an emitted flow CSV (round-trip helper)."""
    path = Path(path)
    rows = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if ",".join(header) != FLOW_CSV_HEADER:
            raise ConfigError(f"unexpected CSV header in {path}")
        rows = list(reader)
    if not rows:
        raise ConfigError(f"CSV {path} has no data rows")
    sweep_kind = rows[0][0]
    grid: list[float] = []
    tables: list[SpectrumTable] = []
    energies: list[float] = []
    groups: dict[int, tuple[int, int]] = {}
    current = None
    n_fock = 0
    converged = False

    def close_point():
        ordered = tuple(groups[g] for g in sorted(groups))
        tables.append(
            SpectrumTable(
                energies=np.array(energies),
                groups=ordered,
                n_fock_used=n_fock,
                converged=converged,
            )
        )

    for row in rows:
        _, gval, level, energy, gid, gsize, nf, conv = row
        gval = float(gval)
        if current is None or gval != current:
            if current is not None:
                close_point()
            current = gval
            grid.append(gval)
            energies = []
            groups = {}
        energies.append(float(energy))
        gid = int(gid)
        if gid not in groups:
            groups[gid] = (int(level), int(gsize))
        n_fock = int(nf)
        converged = conv == "true"
    close_point()
    return FlowResult(
        grid=np.array(grid), tables=tuple(tables), sweep_kind=sweep_kind
    )


def emit_spectrum_csv(table: SpectrumTable, path: str | Path) -> None:
    """Single-spectrum CSV: one row per level."""
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            fh.write("level_index,energy,group_id,group_size,n_fock,converged\n")
            for level, energy in enumerate(table.energies):
                gid, gsize = _group_of(table, level)
                fh.write(
                    f"{level},{_fmt(energy)},{gid},{gsize},{table.n_fock_used},"
                    f"{'true' if table.converged else 'false'}\n"
                )
    except OSError as exc:
        raise ConfigError(f"cannot write CSV {path}: {exc}") from exc


_PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]

_WIDTH, _HEIGHT = 720, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 120, 20, 50


def emit_flow_svg(flow: FlowResult, path: str | Path) -> None:
    """Standalone SVG line plot: one polyline per level index."""
    if len(flow.grid) < 2:
        raise ConfigError("SVG plot needs at least 2 grid points")
    k = len(flow.tables[0].energies)
    xs = np.asarray(flow.grid, dtype=float)
    ys = np.array([t.energies for t in flow.tables])  # (points, k)
    x_lo, x_hi = float(xs[0]), float(xs[-1])
    y_lo, y_hi = float(ys.min()), float(ys.max())
    margin = 0.05 * max(y_hi - y_lo, 1e-12)
    y_lo, y_hi = y_lo - margin, y_hi + margin
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    x_label = "r" if flow.sweep_kind == "r_sweep" else "g"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="black"/>',
    ]
    for i in range(5):
        xv = x_lo + i * (x_hi - x_lo) / 4
        yv = y_lo + i * (y_hi - y_lo) / 4
        xp, yp = px(xv), py(yv)
        parts.append(
            f'<line x1="{xp:.1f}" y1="{_MARGIN_T + plot_h}" x2="{xp:.1f}" '
            f'y2="{_MARGIN_T + plot_h + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{xp:.1f}" y="{_MARGIN_T + plot_h + 18}" font-size="11" '
            f'text-anchor="middle">{xv:.4g}</text>'
        )
        parts.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{yp:.1f}" x2="{_MARGIN_L}" '
            f'y2="{yp:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{yp + 4:.1f}" font-size="11" '
            f'text-anchor="end">{yv:.4g}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 12}" font-size="13" '
        f'text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="18" y="{_MARGIN_T + plot_h / 2:.1f}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 18 {_MARGIN_T + plot_h / 2:.1f})">'
        f'energy / hbar</text>'
    )
    for level in range(k):
        color = _PALETTE[level % len(_PALETTE)]
        pts = " ".join(
            f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys[:, level])
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = _MARGIN_T + 14 + 16 * level
        lx = _MARGIN_L + plot_w + 10
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 24}" y="{ly}" font-size="11">level {level}</text>'
        )
    parts.append("</svg>")
    path = Path(path)
    try:
        path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot write SVG {path}: {exc}") from exc
