"""Temperature scan of the bulk thermodynamics at fixed couplings.

Prints free energy per site, internal energy and both magnetizations
from the band integrals, and compares the coldest row with the
zero-temperature closed forms.

Run:  python demos/thermodynamics_scan.py
"""

import numpy as np

from staggered_xx import ChainParams, Thermal, energy, magnetization_t0, thermo_point


def main() -> None:
    p = ChainParams(J=1.0, j=0.5, b=0.3, B=0.8)
    print(f"couplings: J={p.J} j={p.j} b={p.b} B={p.B}")
    print(f"{'T':>8} {'f':>12} {'u':>12} {'m':>10} {'m_s':>10}")
    for temp in np.concatenate(([0.01, 0.05], np.linspace(0.1, 4.0, 14))):
        t = Thermal.from_temperature(float(temp))
        pt = thermo_point(p, t)
        f = -pt.ln_z_per_site / t.beta
        print(f"{temp:8.3f} {f:12.6f} {pt.u:12.6f} {pt.m:10.6f} {pt.m_s:10.6f}")

    cold = thermo_point(p, Thermal.from_temperature(0.01))
    print("\nzero-temperature closed forms:")
    print(f"  energy per site  {energy(p):+.6f}   (T=0.01 integral {cold.u:+.6f})")
    print(f"  magnetization    {magnetization_t0(p):+.6f}   (T=0.01 integral {cold.m:+.6f})")


if __name__ == "__main__":
    main()
