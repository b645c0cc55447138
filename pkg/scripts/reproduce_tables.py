"""Print the threshold and mu tables next to the published values."""
import argparse

from binlog_pade import measures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", default="0.1")
    ap.add_argument("--prec", type=int, default=measures.DEFAULT_PREC)
    args = ap.parse_args()

    print("threshold exponents: V(alpha) = 0 at log|alpha| = T")
    print(f"{'r':>3} {'T':>16} {'published':>12} {'diff':>12}  note")
    for row in measures.threshold_table(range(3, 11), args.prec):
        print(f"{row['r']:>3} {row['exponent']:>16} {row.get('paper', ''):>12} {row.get('diff', ''):>12}  {row['paper_discrepancy'] or ''}")

    print(f"\nmu and log(2C) for r = 5, eps = {args.eps}")
    print(f"{'alpha':>6} {'mu':>14} {'published':>11} {'log 2C':>14} {'published':>11}")
    for row in measures.mu_table(5, args.eps, range(16, 23), (1,), args.prec):
        print(f"{row['alpha']:>6} {row['mu']:>14} {row['published_mu'] or '':>11} {row['log_2C']:>14} {row['published_log_2C'] or '':>11}")


if __name__ == "__main__":
    main()
