"""Ground-state phase map and curvature-based transition detection.

Draws an ASCII (b, B) map of the three zero-temperature regions
(compensated / partially polarized / saturated), then scans the
ground-state energy curvature along the staggered field and compares
the flagged peaks with the closed-form critical fields.

Run:  python demos/phase_diagram.py
"""

import numpy as np

from staggered_xx import ChainParams, classify_region, critical_fields, qcp_scan

GLYPH = {"compensated": ".", "partial": "o", "saturated": "#"}


def main() -> None:
    j = 0.5
    bs = np.linspace(0.0, 2.0, 41)
    Bs = np.linspace(2.0, 0.0, 21)
    print(f"regions at J=1, j={j}  ('.' compensated, 'o' partial, '#' saturated)")
    print("B")
    for B in Bs:
        row = "".join(
            GLYPH[classify_region(ChainParams(J=1.0, j=j, b=float(b), B=float(B))).value]
            for b in bs
        )
        print(f"{B:4.1f} {row}")
    print(f"{'':4} b = 0 ... 2\n")

    # sweep b at fixed B = 1.5: both boundaries appear as curvature peaks
    base = ChainParams(J=1.0, j=j, b=0.0, B=1.5)
    scan = qcp_scan(base, "b", 0.9, 1.7, 5e-3)
    print(f"curvature scan along b at B={base.B}: peaks {scan.peaks}")
    b_outer = float(np.sqrt(base.B**2 - base.J**2))
    b_inner = float(np.sqrt(base.B**2 - base.j**2))
    print(f"closed-form boundaries:          b = {b_outer:.6f}, {b_inner:.6f}")
    print(f"critical fields at b=0.4:        B = {critical_fields(ChainParams(J=1.0, j=j, b=0.4))}")


if __name__ == "__main__":
    main()
