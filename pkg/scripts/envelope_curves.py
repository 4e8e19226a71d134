"""Write the lower and upper per-vertex curves over a degree range as a whitespace table."""

import argparse

from tfhardcore.cli import fmt, plot_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda", dest="lam", type=float, default=1.0)
    ap.add_argument("--d-max", type=float, default=100.0)
    ap.add_argument("--step", type=float, default=0.25)
    ap.add_argument("--plot", help="also save a PNG here (needs matplotlib)")
    args = ap.parse_args()

    rows = plot_rows(0.0, args.d_max, args.step, args.lam)
    print("d lower upper")
    for d, lo, up in rows:
        print(f"{fmt(d)} {fmt(lo)} {fmt(up)}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        ds, los, ups = zip(*rows)
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(ds, los, label="lower")
        ax.plot(ds, ups, label="upper")
        ax.set_xlabel("average degree d")
        ax.set_ylabel("log Z / n")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)


if __name__ == "__main__":
    main()
