"""Special values of Mordell-Tornheim sums and xi_MT, next to their closed forms.

Run: python3 demos/special_values.py
"""
from mpmath import mp

from mtzeta import mt_zeta_fast, xi_mt_eval, xi_mt_negative_integer, akmt_coefficients

PREC = 256
mp.prec = PREC + 32
z = mp.zeta


def show(label, value, exact):
    print(f"{label:34} {mp.nstr(value.estimate, 30)}")
    print(f"{'  closed form':34} {mp.nstr(exact, 30)}")
    print(f"{'  |difference| / error bound':34} {mp.nstr(abs(value.estimate - exact), 3)} / "
          f"{mp.nstr(value.abs_error, 3)}")


show("zeta_MT,3(2,1,1; 1)", mt_zeta_fast((2, 1, 1), 1, prec=PREC), 2 * z(2) * z(3) - z(5))
show("zeta_MT,5(2,1,1,1,1; 1)", mt_zeta_fast((2, 1, 1, 1, 1), 1, prec=PREC),
     24 * (z(2) * z(5) + 3 * z(3) * z(4) - 4 * z(7)))
show("zeta_MT,3(1,1,1; 1)", mt_zeta_fast((1, 1, 1), 1, prec=PREC), 6 * z(4))
show("xi_MT(1; 2)", xi_mt_eval((1,), 2, prec=PREC), 2 * z(3))
show("xi_MT(1,1; -1/2)", xi_mt_eval((1, 1), mp.mpf(-0.5), prec=PREC),
     mp.mpf(-0.5) * mp.mpf(0.5) * z(1.5))

print()
print("values at non-positive integers are the coefficients (-1)^m C_m:")
for k in [(1,), (2,), (1, 1), (2, 1)]:
    coeffs = akmt_coefficients(k, 4)
    vals = [xi_mt_negative_integer(k, m) for m in range(5)]
    print(f"  k = {k!s:8} C_m = {[str(c) for c in coeffs]}")
    print(f"  {'':12} xi(-m) = {[str(v) for v in vals]}")
