#!/usr/bin/env python3
"""Regenerate src/landau_paraxial/data/fixtures.txt from first principles.

Every fixture is computed here with exact rational arithmetic or 50-digit
mpmath, independently of the package's own evaluation paths, then rounded to
the stored precision. Run from the repository root:

    python scripts/generate_fixtures.py
"""

from fractions import Fraction
from pathlib import Path

import mpmath as mp

import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from landau_paraxial.fixtures import Fixture, emit_fixtures  # noqa: E402

mp.mp.dps = 50

OUT = Path(__file__).resolve().parent.parent / "src" / "landau_paraxial" / "data" / "fixtures.txt"


def mode_norm(n, abs_ell):
    # sqrt(2 n! / (pi (n+|ell|)!)) with exact factorial ratio
    ratio = Fraction(2 * mp.factorial(int(n)).__int__(),
                     mp.factorial(int(n + abs_ell)).__int__())
    return mp.sqrt(mp.mpf(ratio.numerator) / ratio.denominator / mp.pi)


def laguerre_sum(n, alpha, x):
    # explicit finite sum with exact rationals: sum (-1)^k C(n+a, n-k) x^k / k!
    from math import comb, factorial
    acc = Fraction(0)
    xq = Fraction(x)
    for k in range(n + 1):
        acc += Fraction((-1) ** k * comb(n + alpha, n - k), factorial(k)) * xq ** k
    return acc


def main():
    # CODATA 2018 decimals, exact as rationals
    m_e = Fraction("9.1093837015e-31")      # kg
    c = Fraction(299792458)                 # m/s
    e = Fraction("1.602176634e-19")         # C
    hbar = Fraction("1.054571817e-34")      # J s
    b_crit = m_e ** 2 * c ** 2 / (e * hbar)  # SI tesla (m^2 c^3/(e hbar) in Gaussian units)
    mc2_ev = m_e * c ** 2 / e

    entries = [
        Fixture("critical_field_tesla", float(b_crit),
                "DERIVED: exact rational arithmetic on CODATA-2018 decimals, "
                "m^2 c^2/(e hbar) in SI units (the Gaussian-units m^2 c^3/(e hbar))"),
        Fixture("electron_mass_ev", float(mc2_ev),
                "DERIVED: exact rational m_e c^2 / e from CODATA-2018 decimals"),
        Fixture("b_for_one_tesla", float(1 / b_crit),
                "DERIVED: reciprocal of critical_field_tesla, exact rational"),
        Fixture("C_00", float(mp.sqrt(2 / mp.pi)),
                "DERIVED: 50-digit sqrt(2 n!/(pi (n+|ell|)!)) at n=0, ell=0"),
        Fixture("C_12", float(mode_norm(1, 2)),
                "DERIVED: 50-digit sqrt(2 n!/(pi (n+|ell|)!)) at n=1, |ell|=2"),
        Fixture("laguerre_2_0_at_2", float(laguerre_sum(2, 0, 2)),
                "DERIVED: explicit finite-sum evaluation with exact rationals"),
        Fixture("q_electron_0_1_minus", 2,
                "DERIVED: integer arithmetic 2n+1+|ell|+ell+2s_z at (0, 1, -1/2)"),
        Fixture("q_positron_0_m1_plus", 2,
                "DERIVED: integer arithmetic 2n+1+|ell|-ell-2s_z at (0, -1, +1/2)"),
        Fixture("w_m_b001", float(2 / mp.sqrt(mp.mpf("0.01"))),
                "DERIVED: direct formula 2/sqrt(b) at b = 0.01"),
        Fixture("w_m_b4", 1.0,
                "TRIVIAL: 2/sqrt(4) = 1"),
        Fixture("energy_spacing_b001_1", float(mp.sqrt(mp.mpf("1.02")) - 1),
                "DERIVED: 50-digit sqrt(1 + 2b) - sqrt(1) at b = 0.01, ell = 0, s_z = -1/2"),
        Fixture("energy_spacing_b001_2",
                float(mp.sqrt(mp.mpf("1.04")) - mp.sqrt(mp.mpf("1.02"))),
                "DERIVED: 50-digit sqrt(1 + 4b) - sqrt(1 + 2b) at b = 0.01"),
        Fixture("gouy_rate_e_0_1_minus_b001_k1", float(mp.mpf(2) * mp.mpf("0.01") / 2),
                "DERIVED: q b/(2k) with q = 2, b = 0.01, k = 1"),
        Fixture("zeta_base_at_rayleigh", float(mp.pi / 4),
                "TRIVIAL: arctan(1) = pi/4 at z = z_R"),
        Fixture("free_R_at_2zR_w20_k1", 500.0,
                "TRIVIAL: z + z_R^2/z = 400 + 100 at w0 = 20, k = 1, z = 2 z_R"),
    ]
    table = {f.name: f for f in entries}
    OUT.write_text(emit_fixtures(table))
    print(f"wrote {len(entries)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
