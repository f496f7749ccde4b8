"""Export and render the four reference flow-field panels.

Calls the ballprolate CLI for the parameter sets (alpha, n, k, ell) =
(0,1,0,1), (0,1,0,2), (0,2,0,1), (0,2,0,2) at c = 2 on a slice-z grid, then
renders a quiver panel for each.  Usage:

    python scripts/make_figure_set.py [output_dir]
"""

import subprocess
import sys
from pathlib import Path

from pswf_figures import PlotSpec, render

PANELS = [(0, 1, 0, 1), (0, 1, 0, 2), (0, 2, 0, 1), (0, 2, 0, 2)]


def main():
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "figure_set")
    outdir.mkdir(parents=True, exist_ok=True)
    for alpha, n, k, ell in PANELS:
        stem = outdir / f"mode_a{alpha}_n{n}_k{k}_l{ell}_c2"
        csv_path = stem.with_suffix(".csv")
        subprocess.run(
            [
                sys.executable, "-m", "ballprolate.cli", "field",
                "--alpha", str(alpha), "--c", "2",
                "--n", str(n), "--k", str(k), "--ell", str(ell),
                "--grid", "slice-z:48x48", "--out", str(csv_path),
            ],
            check=True,
        )
        render(PlotSpec(str(csv_path), "quiver", str(stem.with_suffix(".png"))))
        print(f"wrote {stem.with_suffix('.png')}")


if __name__ == "__main__":
    main()
