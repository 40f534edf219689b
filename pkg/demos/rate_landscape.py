"""Tabulate every calculator across memory corners and interpolate between.

Each scheme prices the corners M = i*N/K it can serve; between corners,
splitting files across two corner placements makes the lower convex envelope
achievable. The table below shows where the quadratic-subpacketization
scheme wins and what the envelope gives at an off-corner memory point.
"""

from fractions import Fraction

from macc_lab import compare, corner_points, memory_share


def corner_table(k: int, l: int) -> None:
    schemes = ("prior_restricted", "prior_general", "divisor", "linear", "quadratic")
    print(f"K = {k}, L = {l}: rate per scheme at each corner (blank = not applicable)")
    header = "  i  M/N    " + "".join(f"{s:>18}" for s in schemes)
    print(header)
    for i in range(1, -(-k // l) + 1):
        reports = compare(k, l, i)
        cells = []
        for s in schemes:
            rep = reports[s]
            if not rep.applicable:
                cells.append(f"{'':>18}")
                continue
            suffix = "" if rep.subpacketization is None else f" F={rep.subpacketization}"
            cells.append(f"{str(rep.rate) + suffix:>18}")
        print(f"  {i}  {str(Fraction(i, k)):<5}" + "".join(cells))
    print()


def main() -> None:
    corner_table(8, 2)
    corner_table(12, 3)

    pts = corner_points(8, 2)
    print("quadratic corner points for (K=8, L=2):")
    for mu, rate in pts:
        print(f"  mu = {str(mu):<5} rate = {rate}")
    print()
    for mu in (Fraction(3, 10), Fraction(3, 8), Fraction(7, 16)):
        rate = memory_share(pts, mu)
        print(f"memory sharing at mu = {mu}: rate {rate} ({float(rate):.4f})")


if __name__ == "__main__":
    main()
