"""Render quiver, streamline, and magnitude plots from field CSV exports.

This package is a pure consumer of the ``ballprolate field`` CSV contract:
a ``# schema_version`` comment line, then a header that is either
``x,y,z,vx,vy,vz`` (vector field) or ``x,y,z,value`` (scalar field).
Nothing numeric rides on the pixels; the plots are qualitative aids.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

VECTOR_COLUMNS = ("x", "y", "z", "vx", "vy", "vz")
SCALAR_COLUMNS = ("x", "y", "z", "value")

#: in-plane coordinate/component pairs per slice axis
_PLANES = {
    "z": (("x", "y"), ("vx", "vy")),
    "y": (("x", "z"), ("vx", "vz")),
    "x": (("y", "z"), ("vy", "vz")),
}


class SchemaError(ValueError):
    """The input file does not match the field CSV contract."""


@dataclass(frozen=True)
class PlotSpec:
    input_path: str
    kind: str  # quiver | streamlines | magnitude
    output_path: str
    slice_axis: str = "auto"  # x | y | z | auto (detect the constant column)
    density: int = 24  # arrows per axis (quiver) / line density (streamlines)

    def __post_init__(self):
        if self.kind not in ("quiver", "streamlines", "magnitude"):
            raise SchemaError(f"unknown plot kind {self.kind!r}")
        if self.slice_axis not in ("auto", "x", "y", "z"):
            raise SchemaError(f"unknown slice axis {self.slice_axis!r}")
        if self.density < 2:
            raise SchemaError("density must be at least 2")


def load_field_csv(path):
    """Columns of a field CSV as a dict of arrays.

    Raises :class:`SchemaError` naming the missing column when the header
    matches neither the vector nor the scalar contract.
    """
    with open(path) as fh:
        first = fh.readline()
        if not first.startswith("#"):
            fh.seek(0)
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("input file is empty") from None
        rows = [row for row in reader if row]
    for schema in (VECTOR_COLUMNS, SCALAR_COLUMNS):
        if set(schema) <= set(header):
            break
    else:
        want = VECTOR_COLUMNS if any(h.startswith("v") for h in header) else SCALAR_COLUMNS
        missing = sorted(set(want) - set(header))
        raise SchemaError(f"input is missing column(s): {', '.join(missing)}")
    data = np.array(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(header):
        raise SchemaError("malformed CSV body")
    return {name: data[:, i] for i, name in enumerate(header)}


def _detect_slice_axis(cols):
    spans = {axis: np.ptp(cols[axis]) for axis in ("x", "y", "z")}
    axis = min(spans, key=spans.get)
    if spans[axis] > 1e-12:
        raise SchemaError(
            "no constant coordinate column; pass an explicit slice axis"
        )
    return axis


def _require_vector(cols):
    missing = sorted(set(VECTOR_COLUMNS) - set(cols))
    if missing:
        raise SchemaError(f"input is missing column(s): {', '.join(missing)}")


def _in_plane(cols, spec):
    axis = _detect_slice_axis(cols) if spec.slice_axis == "auto" else spec.slice_axis
    (u_name, v_name), (fu_name, fv_name) = _PLANES[axis]
    return axis, cols[u_name], cols[v_name], cols[fu_name], cols[fv_name]


def _subsample(u, v, fu, fv, density):
    # thin the scattered points onto a density x density occupancy grid
    ui = np.floor((u - u.min()) / max(np.ptp(u), 1e-30) * (density - 1e-9)).astype(int)
    vi = np.floor((v - v.min()) / max(np.ptp(v), 1e-30) * (density - 1e-9)).astype(int)
    _, keep = np.unique(ui * density + vi, return_index=True)
    return u[keep], v[keep], fu[keep], fv[keep]


def _grid_for_streamlines(u, v, fu, fv):
    uu = np.unique(np.round(u, 12))
    vv = np.unique(np.round(v, 12))
    gu = np.zeros((len(vv), len(uu)))
    gv = np.zeros((len(vv), len(uu)))
    iu = np.searchsorted(uu, np.round(u, 12))
    iv = np.searchsorted(vv, np.round(v, 12))
    gu[iv, iu] = fu
    gv[iv, iu] = fv
    return uu, vv, gu, gv


def render(spec: PlotSpec):
    """Write the requested plot; returns the output path."""
    cols = load_field_csv(spec.input_path)
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    try:
        if spec.kind == "quiver":
            _require_vector(cols)
            axis, u, v, fu, fv = _in_plane(cols, spec)
            qu, qv, qfu, qfv = _subsample(u, v, fu, fv, spec.density)
            ax.quiver(qu, qv, qfu, qfv, np.hypot(qfu, qfv), cmap="viridis")
            ax.set_title(f"slice normal to {axis}")
        elif spec.kind == "streamlines":
            _require_vector(cols)
            axis, u, v, fu, fv = _in_plane(cols, spec)
            uu, vv, gu, gv = _grid_for_streamlines(u, v, fu, fv)
            ax.streamplot(uu, vv, gu, gv, density=spec.density / 16.0,
                          color=np.hypot(gu, gv), cmap="viridis")
            ax.set_title(f"slice normal to {axis}")
        else:  # magnitude
            if "value" in cols:
                mag = np.abs(cols["value"])
            else:
                _require_vector(cols)
                mag = np.sqrt(cols["vx"] ** 2 + cols["vy"] ** 2 + cols["vz"] ** 2)
            axis = (
                _detect_slice_axis(cols)
                if spec.slice_axis == "auto"
                else spec.slice_axis
            )
            (u_name, v_name), _ = _PLANES[axis]
            sc = ax.scatter(cols[u_name], cols[v_name], c=mag, s=8, cmap="magma")
            fig.colorbar(sc, ax=ax, shrink=0.85)
            ax.set_title(f"slice normal to {axis}")
        ax.set_aspect("equal")
        fig.savefig(spec.output_path, dpi=120)
    finally:
        plt.close(fig)
    return spec.output_path


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pswf-figures", description="Plot ballprolate field CSV exports"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", required=True,
                   choices=("quiver", "streamlines", "magnitude"))
    p.add_argument("--out", required=True)
    p.add_argument("--slice", default="auto", dest="slice_axis",
                   choices=("auto", "x", "y", "z"))
    p.add_argument("--density", type=int, default=24)
    args = parser.parse_args(argv)
    try:
        spec = PlotSpec(args.input, args.kind, args.out, args.slice_axis,
                        args.density)
        render(spec)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
