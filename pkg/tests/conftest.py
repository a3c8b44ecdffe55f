"""Shared fixtures: the packaged 87Rb dataset and a zero-defect species."""

import pytest

from rydgate.constants import RYDBERG_HZ_INF
from rydgate.species import AtomSpecies, DefectEntry, LifetimeEntry, rb87


@pytest.fixture(scope="session")
def species():
    return rb87()


@pytest.fixture(scope="session")
def hydrogenic():
    """All defects zero: every level is exactly hydrogenic.

    Lifetime coefficients are placeholders; tests using this fixture only
    exercise energies and wavefunctions.
    """
    defects = []
    for L in range(5):
        j_values = [0.5] if L == 0 else [L - 0.5, L + 0.5]
        for J in j_values:
            defects.append(DefectEntry(L, J, 0.0, 0.0))
    lifetimes = tuple(LifetimeEntry(L, 1.0, 3.0) for L in range(5))
    return AtomSpecies(
        name="hydrogenic",
        mass=1.6735575e-27,
        rydberg_constant=RYDBERG_HZ_INF,
        ionization_reference=0.0,
        defects=tuple(defects),
        lifetimes=lifetimes,
    )
