#!/usr/bin/env python3
"""Plot the subtraction-fidelity and sensitivity tables emitted by the CLI.

Usage:
    noonsim fig2 --output fig2.csv
    noonsim fig4 --output fig4.csv
    python3 docs/plot_figures.py fig2.csv fig4.csv out.png
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    fig2_path, fig4_path, out_path = sys.argv[1:4]
    fig2 = pd.read_csv(fig2_path)
    fig4 = pd.read_csv(fig4_path)

    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))

    for n, group in fig2.groupby("n"):
        left.plot(group["eta"], group["fidelity"], label=f"N = {n}")
    left.set_xlabel("detector efficiency eta")
    left.set_ylabel("fidelity to NOON(N-1)")
    left.set_title("photon subtraction, tap T^2 = %.2f" % fig2["t2"].iloc[0])
    left.legend(fontsize=8)

    right.plot(fig4["eta"], fig4["delta_phi"], "b-", label="phase sensitivity")
    right.plot(fig4["eta"], fig4["fidelity"], "r-", label="fidelity")
    right.plot(fig4["eta"], fig4["shot_noise"], "k:", label="shot-noise limit")
    right.set_xlabel("detector efficiency eta")
    right.set_ylim(0, 1.4)
    right.set_title("heralded 4004 metrology")
    right.legend(fontsize=8)

    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main()
