#!/usr/bin/env python3
"""Plot scenario artifacts written by `caft run`.

    python3 scripts/plot_exhibits.py results [--scenario fig5] [--out plots]

Curve scenarios are drawn on the treated-CDF axis, estimates as points and
the oracle as lines. Table scenarios get a per-replicate or per-cell plot.
"""

import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

CURVE_SCENARIOS = {"fig2L", "fig2R", "fig3", "fig5", "figA1", "figA2", "figA3", "caseMixture"}


def read(path):
    return pd.read_csv(path, na_values=["NA"])


def panel_of(series):
    return series.split("/")[0]


def plot_curves(directory, name, out):
    est = read(directory / "estimates.csv")
    orc = read(directory / "oracle.csv")
    est["panel"] = est["series"].map(panel_of)
    orc["panel"] = orc["series"].map(panel_of)
    # Oracle series without a matching estimate panel (e.g. one shared theta) go on every panel.
    shared = orc[~orc["panel"].isin(est["panel"]) & ~orc["panel"].str.startswith("reference_")]
    panels = sorted(set(est["panel"])) if not est.empty else sorted(set(shared["panel"]))
    cols = min(3, len(panels))
    rows = -(-len(panels) // cols)
    fig, axes = plt.subplots(rows, cols, figsize=(4.5 * cols, 3.5 * rows), squeeze=False)
    for ax, panel in zip(axes.flat, panels):
        own = orc[orc["panel"] == panel]
        for series, grp in (own if not own.empty else shared).groupby("series"):
            ax.plot(grp["treated_cdf"], grp["estimate"], "k-", lw=1.2, label=series.split("/")[-1] if "/" in series else "theta")
        ref = orc[orc["panel"] == "reference_" + panel]
        if not ref.empty:
            ax.axhline(ref["estimate"].iloc[0], color="grey", ls=":", lw=1)
        for series, grp in est[est["panel"] == panel].groupby("series"):
            grp = grp[grp["identified"] == 1]
            label = series.split("/")[-1] if "/" in series else "theta_m"
            ax.plot(grp["treated_cdf"], grp["estimate"], ".", ms=3, label=label)
        ax.set_title(panel, fontsize=9)
        ax.set_xlabel("1 - S_a(t)")
        ax.set_ylabel("theta")
        ax.legend(fontsize=7)
    for ax in list(axes.flat)[len(panels):]:
        ax.axis("off")
    fig.suptitle(name)
    fig.tight_layout()
    fig.savefig(out / f"{name}.png", dpi=120)
    plt.close(fig)


def plot_table1(directory, name, out):
    est = read(directory / "estimates.csv")
    orc = read(directory / "oracle.csv").set_index("config")
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.8))
    configs = list(orc.index)
    for ax, column, truth in ((axes[0], "theta_m", "theta"), (axes[1], "cox_hr", "exp_beta")):
        data = [est.loc[est["config"] == c, column].dropna() for c in configs]
        ax.boxplot(data, showfliers=False)
        ax.set_xticks(range(1, len(configs) + 1), configs)
        ax.plot(range(1, len(configs) + 1), orc[truth], "r_", ms=20, label=truth)
        ax.set_title(column)
        ax.tick_params(axis="x", labelrotation=45, labelsize=8)
        ax.legend(fontsize=7)
    fig.suptitle(name)
    fig.tight_layout()
    fig.savefig(out / f"{name}.png", dpi=120)
    plt.close(fig)


def plot_fig1(directory, name, out):
    est = read(directory / "estimates.csv")
    grid = est.dropna(subset=["follow_up_multiple"])
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.8))
    for mean, grp in grid.groupby("censoring_mean"):
        grp = grp.sort_values("follow_up_multiple")
        axes[0].plot(grp["follow_up_multiple"], grp["theta_m"], "o-", label=f"censoring mean {mean:g}")
        axes[1].plot(grp["follow_up_multiple"], grp["cox_hr"], "o-", label=f"censoring mean {mean:g}")
    axes[0].set_ylabel("theta_m summary")
    axes[1].set_ylabel("Cox exp(beta_hat)")
    for ax in axes:
        ax.set_xlabel("follow-up / median(T0)")
        ax.legend(fontsize=7)
    fig.suptitle(name)
    fig.tight_layout()
    fig.savefig(out / f"{name}.png", dpi=120)
    plt.close(fig)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("results", type=pathlib.Path, help="directory given to `caft run --out`")
    parser.add_argument("--scenario", action="append", help="plot only these scenarios")
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("plots"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for directory in sorted(p for p in args.results.iterdir() if (p / "estimates.csv").exists()):
        name = directory.name
        if args.scenario and name not in args.scenario:
            continue
        if name in ("table1a", "table1b"):
            plot_table1(directory, name, args.out)
        elif name == "fig1":
            plot_fig1(directory, name, args.out)
        elif name in CURVE_SCENARIOS or "series" in read(directory / "estimates.csv").columns:
            plot_curves(directory, name, args.out)
        else:
            print(f"skipping {name}: tabular output, see summary.csv")
            continue
        print(f"wrote {args.out / (name + '.png')}")


if __name__ == "__main__":
    main()
