"""Write the CSV behind every figure preset, including the second curves.

    python3 scripts/reproduce_figures.py [outdir]
"""

import sys
from pathlib import Path

from spectrum_game.cli import SERIES_COLUMNS, SWEEP_VALUE_COLUMNS, series_rows, sweep_rows, write_csv
from spectrum_game.scenario import apply_overrides, preset

JOBS = [
    ("fig3a", {}, "series"),
    ("fig3b", {}, "series"),
    ("fig4a", {}, "series"),
    ("fig4b", {}, "series"),
    ("fig5", {}, "sweep"),
    ("fig5", {"t1": "2"}, "sweep"),
    ("fig6", {}, "sweep"),
    ("fig6", {"c_A": "1"}, "sweep"),
    ("fig7", {}, "sweep"),
    ("fig7", {"alpha_i": "0.8"}, "sweep"),
]


def main(outdir: str = "figures") -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, overrides, kind in JOBS:
        scenario = apply_overrides(preset(name), overrides)
        suffix = "".join(f"_{k}{v}" for k, v in overrides.items())
        path = out / f"{name}{suffix}.csv"
        with open(path, "w", newline="", encoding="ascii") as fh:
            if kind == "series":
                write_csv(fh, SERIES_COLUMNS, series_rows(scenario))
            else:
                write_csv(fh, (scenario.sweep.var,) + SWEEP_VALUE_COLUMNS, sweep_rows(scenario))
        print(path)


if __name__ == "__main__":
    main(*sys.argv[1:])
