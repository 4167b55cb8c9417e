"""Approach s = -m along s = -m + h and watch the error shrink linearly in h.

Run: python3 demos/continuation_probe.py
"""
from mpmath import mp, mpf

from mtzeta import xi_mt_continuation_probe, xi_mt_negative_integer

for k, m in [((1,), 2), ((2,), 0), ((1, 1), 1)]:
    exact = xi_mt_negative_integer(k, m)
    target = mpf(exact.numerator) / exact.denominator
    print(f"k = {k}, m = {m}, exact value {exact}")
    prev = None
    for e in range(3, 8):
        h = mpf(10) ** -e
        err = abs(xi_mt_continuation_probe(k, m, h, prec=128).estimate - target)
        ratio = f"ratio {mp.nstr(prev / err, 5)}" if prev else ""
        print(f"  h = 1e-{e}: error {mp.nstr(err, 5):>12}  {ratio}")
        prev = err
