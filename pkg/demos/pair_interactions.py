"""Pair interactions: the resonant exchange coefficient C3, the van der
Waals coefficient C6 with its channel decomposition, and a direct
diagonalisation of the two-atom Hamiltonian as a cross-check.

Run:  python3 demos/pair_interactions.py
"""

from rydgate.levels import p_level, s_level
from rydgate.pair import (
    PairState,
    c3_coefficient,
    c6_coefficient,
    pair_hamiltonian_shift,
)
from rydgate.species import rb87
from rydgate.sweeps import forster_rows


def main():
    species = rb87()

    c3 = c3_coefficient(species, s_level(70), p_level(70, 0.5))
    print(f"C3(70S1/2, 70P1/2) = {c3:.4f} GHz um^3")
    print("The microwave-dressed pair splits at +-C3/d^3; at d = 15 um the")
    print(f"splitting is {2 * c3 * 1e9 / 15**3 / 1e6:.2f} MHz.")
    print()

    coeffs = c6_coefficient(species, s_level(70), s_level(71))
    print(f"C6(70S1/2, 71S1/2) = {coeffs.c6_ghz_um6:.2f} GHz um^6 "
          f"from {len(coeffs.channels)} channels; the strongest are:")
    print("final pair                defect (GHz)    contribution (GHz um^6)")
    for ch in coeffs.channels[:6]:
        print(
            f"{ch.final.label:<24}  {ch.defect_hz / 1e9:12.4f}"
            f"    {ch.contribution_ghz_um6:12.2f}"
        )
    print()

    d = 25.0
    shift = pair_hamiltonian_shift(species, PairState(s_level(70), s_level(71)), d)
    fitted = abs(shift) * d**6 * 1e-9
    print("Cross-check against exact diagonalisation of the first dipole shell:")
    print(f"|shift(d = {d:g} um)| x d^6 = {fitted:.2f} GHz um^6 "
          f"({100 * abs(fitted - abs(coeffs.c6_ghz_um6)) / abs(coeffs.c6_ghz_um6):.3f}% "
          "from the channel sum)")
    print()

    header, rows, _ = forster_rows(species, range(30, 51), 200e6)
    print("Near-degenerate channels with |defect| < 200 MHz for n = 30..50:")
    print("n    final pair                defect (MHz)")
    for row in rows[:5]:
        cells = dict(zip(header, row))
        print(
            f"{cells['n']:<4} ({cells['final_a']}, {cells['final_b']})"
            f"        {cells['defect_hz'] / 1e6:10.3f}"
        )
    print()
    print("n = 38 is the famous accidental degeneracy: its tiny defect makes")
    print("the perturbative C6 meaningless there, so scans flag it instead.")


if __name__ == "__main__":
    main()
