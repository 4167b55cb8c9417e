"""Run every identity suite on its default grid and print a summary table.

Run: python3 demos/identity_report.py [prec]
"""
import sys
import time

from mpmath import mp

from mtzeta.identities import SUITES, run_suite

prec = int(sys.argv[1]) if len(sys.argv) > 1 else 256
print(f"{'suite':12} {'reports':>7} {'passed':>6} {'worst residual':>15} {'seconds':>8}")
for name in SUITES:
    t0 = time.perf_counter()
    reps = run_suite([name], prec=prec)
    dt = time.perf_counter() - t0
    asserted = [r for r in reps if r.asserted]
    passed = sum(r.passed for r in asserted)
    worst = max(r.residual for r in reps)
    print(f"{name:12} {len(reps):7d} {passed:3d}/{len(asserted):<2d} {mp.nstr(worst, 3):>15} {dt:8.1f}")
