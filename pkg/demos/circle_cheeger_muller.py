"""
Cellular versus analytic torsion on the circle.

For a flat U(1) bundle with holonomy e^{i psi}, the cellular R-torsion of an
N-cell subdivision and the zeta-regularized Ray-Singer torsion should both
equal (2 sin(psi/2))^2, whatever N is.
"""
import math

from rtorsion import CircleBundle, cheeger_muller_report, hurwitz_zeta


def main():
    print(f"zeta(2, 1) = {hurwitz_zeta(2, 1.0).real:.12f}  (pi^2/6 = {math.pi ** 2 / 6:.12f})")
    print(f"{'psi':>6} {'N':>4} {'cellular':>14} {'analytic':>14} {'rel err':>9}")
    for psi in (0.5, 1.0, 2.0, math.pi):
        for N in (1, 8, 64):
            r = cheeger_muller_report(CircleBundle(psi), N)
            print(f"{psi:6.3f} {N:4d} {r.cellular:14.10f} {r.rs_torsion:14.10f} {r.rel_error:9.1e}")
        print(f"{'':>11} closed form {(2 * math.sin(psi / 2)) ** 2:.10f}, "
              f"det Laplacian {r.det_laplacian:.10f}")


if __name__ == "__main__":
    main()
