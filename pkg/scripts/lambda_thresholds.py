"""Numeric thresholds of the grid checks: where the substituted-coordinate argument stops, where the direct
checks stop, and the edgeless crossover."""

from tfhardcore import analytic_verifier as av


def bisect(pred, lo, hi, tol=1e-4):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if pred(mid) else (lo, mid)
    return 0.5 * (lo + hi)


def main():
    r_limit = bisect(lambda lam: av.check_inequality(lam, mode="r").passed, 1.0, 5.0)
    print(f"substituted-coordinate check holds up to lambda ~ {r_limit:.4f}")
    print(f"direct checks hold up to lambda ~ {av.estimate_lambda_max(resolution=1e-3):.4f}")
    print(f"edgeless crossover at lambda = {av.edgeless_crossover():.9f}")


if __name__ == "__main__":
    main()
