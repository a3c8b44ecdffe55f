"""Pair interaction coefficients from dipole-dipole channel sums.

Sign conventions, fixed here once:

* A channel's Forster defect is ``E_final - E_initial`` in Hz.
* ``C6 > 0`` means the pair energy shifts upward (repulsive van der
  Waals); the second-order sum is ``sum_ch c3_ch^2 / (E_i - E_f)``.
* ``c3_coefficient`` returns the magnitude of the resonant-exchange
  coefficient; the physical pair manifold splits as ``+/- C3 / d^3``.

Dipole-coupled pairs (resonant exchange, 1/d^3) and van der Waals pairs
(1/d^6) are both covered; ``pair_hamiltonian_shift`` diagonalises the
pair Hamiltonian on the first shell of dipole-connected states and is
the independent cross-check for either coefficient.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .angular import angular_block, angular_factor, exchange_singular_value, pair_m_states
from .constants import C3_PREFACTOR_HZ_UM3
from .errors import ResonanceError, RydgateError
from .levels import RydbergLevel
from .qdt import GridSpec, level_energy, radial_matrix_element
from .species import AtomSpecies

__all__ = [
    "PairState",
    "ForsterChannel",
    "InteractionCoefficients",
    "pair_energy",
    "c3_coefficient",
    "forster_channels",
    "c6_coefficient",
    "pair_hamiltonian_shift",
    "DEFAULT_MAX_DELTA_N",
    "DEFAULT_MAX_L",
    "DEFAULT_RESONANCE_THRESHOLD_HZ",
]

DEFAULT_MAX_DELTA_N = 5
DEFAULT_MAX_L = 2
DEFAULT_RESONANCE_THRESHOLD_HZ = 10e6


@dataclasses.dataclass(frozen=True)
class PairState:
    """Two-atom state |a b> at fixed total projection M along the pair axis."""

    a: RydbergLevel
    b: RydbergLevel
    M: float = 0.0

    def __post_init__(self) -> None:
        if abs(self.M) > self.a.J + self.b.J:
            raise ValueError(
                f"|M| = {abs(self.M)} exceeds J_a + J_b = {self.a.J + self.b.J}"
            )
        if not pair_m_states(self.a.J, self.b.J, self.M):
            raise ValueError(f"no (m_a, m_b) combination reaches M = {self.M}")

    @property
    def label(self) -> str:
        return f"({self.a.label}, {self.b.label})"


@dataclasses.dataclass(frozen=True)
class ForsterChannel:
    """One two-atom dipole channel initial -> final at the initial state's M.

    ``coupling_ghz_um3`` is the signed product K3 * R1 * R2 * A_rms; its
    square divided by ``E_i - E_f`` (in GHz) gives ``contribution_ghz_um6``,
    the channel's additive part of C6. ``resonant`` marks defects below
    the perturbative threshold.
    """

    initial: PairState
    final: PairState
    defect_hz: float
    coupling_ghz_um3: float
    contribution_ghz_um6: float
    resonant: bool


@dataclasses.dataclass(frozen=True)
class InteractionCoefficients:
    """C6 with its channel decomposition and the truncation that made it.

    ``c3_ghz_um3`` is populated only when the pair itself is dipole-coupled
    (resonant exchange present); for van der Waals pairs it is None.
    """

    c6_ghz_um6: float
    channels: tuple[ForsterChannel, ...]
    max_delta_n: int
    max_l: int
    resonance_threshold_hz: float
    c3_ghz_um3: float | None = None

    @property
    def dominant_channel(self) -> ForsterChannel:
        return self.channels[0]


def pair_energy(species: AtomSpecies, level_a: RydbergLevel, level_b: RydbergLevel) -> float:
    """Unperturbed two-atom energy in Hz."""
    return level_energy(species, level_a) + level_energy(species, level_b)


def c3_coefficient(
    species: AtomSpecies,
    level_a: RydbergLevel,
    level_b: RydbergLevel,
    M: float = 0.0,
    grid: GridSpec | None = None,
) -> float:
    """Resonant exchange coefficient |C3| in GHz um^3 for the pair (a, b).

    The degenerate manifold {|ab>, |ba>} splits into branches at
    +/- C3 / d^3 with C3 = K3 R_ab^2 sigma_max, sigma_max the extremal
    singular value of the exchange block at the given M. Raises if the
    two levels are not dipole-coupled.
    """
    sigma = exchange_singular_value(level_a, level_b, M)
    if sigma == 0.0:
        raise RydgateError(
            f"levels {level_a.label} and {level_b.label} are not dipole-coupled "
            "(need Delta L = +/-1 on both atoms); no resonant exchange interaction"
        )
    radial = radial_matrix_element(species, level_a, level_b, grid)
    return C3_PREFACTOR_HZ_UM3 * 1e-9 * radial * radial * sigma


def _dipole_finals(level: RydbergLevel, max_delta_n: int, max_l: int) -> list[RydbergLevel]:
    """Levels dipole-reachable from ``level`` within the n and L truncation."""
    out = []
    for l_f in (level.L - 1, level.L + 1):
        if l_f < 0 or l_f > max_l:
            continue
        j_values = [l_f + 0.5] if l_f == 0 else [l_f - 0.5, l_f + 0.5]
        for n_f in range(level.n - max_delta_n, level.n + max_delta_n + 1):
            if n_f < 1 or l_f >= n_f:
                continue
            for j_f in j_values:
                out.append(RydbergLevel(n_f, l_f, j_f))
    return out


def _channel_key(channel: ForsterChannel) -> tuple:
    fa, fb = channel.final.a, channel.final.b
    return (fa.n, fa.L, fa.J, fb.n, fb.L, fb.J)


def forster_channels(
    species: AtomSpecies,
    pair: PairState,
    max_delta_n: int = DEFAULT_MAX_DELTA_N,
    max_l: int = DEFAULT_MAX_L,
    *,
    resonance_threshold_hz: float = DEFAULT_RESONANCE_THRESHOLD_HZ,
    grid: GridSpec | None = None,
) -> tuple[ForsterChannel, ...]:
    """Enumerate two-atom dipole channels out of ``pair``, strongest first.

    Channels are ranked by |contribution| = coupling^2 / |defect|; exact
    degeneracies rank first. Zero-coupling combinations are dropped.
    """
    if max_delta_n < 0:
        raise ValueError("max_delta_n must be non-negative")
    e_initial = pair_energy(species, pair.a, pair.b)
    channels = []
    for final_a in _dipole_finals(pair.a, max_delta_n, max_l):
        for final_b in _dipole_finals(pair.b, max_delta_n, max_l):
            if abs(pair.M) > final_a.J + final_b.J:
                continue
            factor = angular_factor(pair.a, pair.b, final_a, final_b, pair.M)
            if factor == 0.0:
                continue
            r1 = radial_matrix_element(species, pair.a, final_a, grid)
            r2 = radial_matrix_element(species, pair.b, final_b, grid)
            coupling = C3_PREFACTOR_HZ_UM3 * 1e-9 * r1 * r2 * factor
            if coupling == 0.0:
                continue
            defect = pair_energy(species, final_a, final_b) - e_initial
            if defect != 0.0:
                contribution = coupling * coupling / (-defect * 1e-9)
            else:
                contribution = float("inf")
            channels.append(
                ForsterChannel(
                    initial=pair,
                    final=PairState(final_a, final_b, pair.M),
                    defect_hz=defect,
                    coupling_ghz_um3=coupling,
                    contribution_ghz_um6=contribution,
                    resonant=abs(defect) < resonance_threshold_hz,
                )
            )
    channels.sort(key=lambda ch: (-abs(ch.contribution_ghz_um6), _channel_key(ch)))
    return tuple(channels)


def c6_coefficient(
    species: AtomSpecies,
    level_a: RydbergLevel,
    level_b: RydbergLevel,
    M: float = 0.0,
    *,
    max_delta_n: int = DEFAULT_MAX_DELTA_N,
    max_l: int = DEFAULT_MAX_L,
    resonance_threshold_hz: float = DEFAULT_RESONANCE_THRESHOLD_HZ,
    grid: GridSpec | None = None,
) -> InteractionCoefficients:
    """Van der Waals coefficient from the second-order channel sum.

    C6 = sum over channels of c3_ch^2 / (E_i - E_f), in GHz um^6, averaged
    over the degenerate initial manifold at the given M (RMS angular
    factors). Raises ResonanceError when any channel defect falls below
    the threshold, where the perturbative sum is meaningless.
    """
    pair = PairState(level_a, level_b, M)
    channels = forster_channels(
        species,
        pair,
        max_delta_n,
        max_l,
        resonance_threshold_hz=resonance_threshold_hz,
        grid=grid,
    )
    resonant = [ch for ch in channels if ch.resonant]
    if resonant:
        worst = resonant[0]
        raise ResonanceError(
            f"pair {pair.label} has a near-degenerate channel {worst.final.label} "
            f"with defect {worst.defect_hz / 1e6:.3f} MHz; second-order sum is invalid",
            channel=worst,
        )
    total = 0.0
    for channel in sorted(channels, key=_channel_key):
        total += channel.contribution_ghz_um6
    return InteractionCoefficients(
        c6_ghz_um6=total,
        channels=channels,
        max_delta_n=max_delta_n,
        max_l=max_l,
        resonance_threshold_hz=resonance_threshold_hz,
    )


def _first_shell_manifolds(
    pair: PairState, max_delta_n: int, max_l: int
) -> list[tuple[RydbergLevel, RydbergLevel]]:
    """Initial pair manifold(s) plus every dipole-connected pair, deduplicated."""
    manifolds = [(pair.a, pair.b)]
    if pair.b != pair.a:
        manifolds.append((pair.b, pair.a))
    seen = set(manifolds)
    for initial in list(manifolds):
        for fa in _dipole_finals(initial[0], max_delta_n, max_l):
            for fb in _dipole_finals(initial[1], max_delta_n, max_l):
                key = (fa, fb)
                if key in seen:
                    continue
                if abs(pair.M) > fa.J + fb.J:
                    continue
                if angular_factor(initial[0], initial[1], fa, fb, pair.M) == 0.0:
                    continue
                seen.add(key)
                manifolds.append(key)
    return manifolds


def pair_hamiltonian_shift(
    species: AtomSpecies,
    pair: PairState,
    d_um: float,
    *,
    branch: str = "auto",
    max_delta_n: int = DEFAULT_MAX_DELTA_N,
    max_l: int = DEFAULT_MAX_L,
    grid: GridSpec | None = None,
) -> float:
    """Interaction shift in Hz at separation d from direct diagonalisation.

    Builds the two-atom Hamiltonian on the first shell of dipole-connected
    pair states at the pair's M (same truncation as the channel sum, so
    the two routes are comparable at matched basis) and diagonalises it.
    The returned shift belongs to the eigenspace adiabatically connected
    to the non-interacting pair manifold, identified by overlap.

    branch="mean" averages the shifts of that eigenspace (weights = squared
    overlap with the initial manifold). For a van der Waals pair this is
    the degeneracy-averaged second-order result through O(V^2): the
    gerade/ungerade exchange splitting of distinct-level pairs cancels in
    the manifold mean, exactly as it cancels in the direct channel sum.
    branch="extremal" returns the shift of largest magnitude among
    eigenstates dominated by the initial manifold (single-state overlap
    >= 0.5), matching the +/- C3/d^3 branch a distance fit resolves for
    dipole-coupled pairs. branch="auto" picks "extremal" when the pair is
    exchange-resonant, else "mean".
    """
    if d_um <= 0:
        raise ValueError("separation must be positive")
    if branch not in ("auto", "mean", "extremal"):
        raise ValueError(f"unknown branch {branch!r}")
    if branch == "auto":
        resonant = exchange_singular_value(pair.a, pair.b, pair.M) != 0.0
        branch = "extremal" if resonant else "mean"

    manifolds = _first_shell_manifolds(pair, max_delta_n, max_l)
    n_initial = 2 if pair.b != pair.a else 1

    # Flatten to m-resolved basis states; record each manifold's slice.
    offsets = []
    energies = []
    e_initial = pair_energy(species, pair.a, pair.b)
    for pa, pb in manifolds:
        states = pair_m_states(pa.J, pb.J, pair.M)
        offsets.append((len(energies), len(states)))
        energies.extend([pair_energy(species, pa, pb)] * len(states))
    dim = len(energies)
    hamiltonian = np.diag(np.array(energies) - e_initial)

    scale = C3_PREFACTOR_HZ_UM3 / d_um**3
    for i, (pa, pb) in enumerate(manifolds):
        off_i, len_i = offsets[i]
        for k in range(i + 1, len(manifolds)):
            pc, pd = manifolds[k]
            block = angular_block(pa, pb, pc, pd, pair.M)
            if not block.any():
                continue
            r1 = radial_matrix_element(species, pa, pc, grid)
            r2 = radial_matrix_element(species, pb, pd, grid)
            off_k, len_k = offsets[k]
            sub = scale * r1 * r2 * block
            hamiltonian[off_k : off_k + len_k, off_i : off_i + len_i] = sub
            hamiltonian[off_i : off_i + len_i, off_k : off_k + len_k] = sub.T

    eigvals, eigvecs = np.linalg.eigh(hamiltonian)

    init_dim = sum(offsets[i][1] for i in range(n_initial))
    weights = np.zeros(dim)
    for i in range(n_initial):
        off, length = offsets[i]
        weights += np.sum(eigvecs[off : off + length, :] ** 2, axis=0)

    if branch == "mean":
        # The init_dim eigenstates carrying the most initial-manifold
        # character form the adiabatic continuation of the free manifold.
        top = np.argsort(weights)[::-1][:init_dim]
        coverage = float(np.sum(weights[top])) / init_dim
        if coverage < 0.5:
            raise RydgateError(
                f"initial-manifold weight {coverage:.3f} at d = {d_um} um is "
                f"spread across the basis for {pair.label}; level mixing is too "
                "strong for a perturbative branch (reduce interaction or note "
                "a resonance)"
            )
        return float(np.dot(weights[top], eigvals[top]) / np.sum(weights[top]))

    candidates = np.flatnonzero(weights >= 0.5)
    if candidates.size == 0:
        raise RydgateError(
            f"no eigenstate at d = {d_um} um retains >= 0.5 overlap with the "
            f"{pair.label} manifold; basis mixing is too strong for a branch "
            "assignment"
        )
    extremal = candidates[np.argmax(np.abs(eigvals[candidates]))]
    return float(eigvals[extremal])
