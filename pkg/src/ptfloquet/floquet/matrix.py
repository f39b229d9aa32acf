"""
Truncated Floquet matrix of the driven two-level model.

Basis |alpha n> with alpha in {up, down} and photon block n = -N..N, ordered
by ascending n with up before down:

    index(alpha, n) = 2 (n + N) + (0 for up, 1 for down)

Diagonal entries are +omega0/2 + n omega for |up n> and -omega0/2 + n omega
for |down n>. The drive couples |alpha n> to |beta n+-1> (alpha != beta)
with the uniform value g lambda, g = 1 or i.

The diagonal sign follows the displayed 8x8 block (|up 0> sits at +omega0/2),
not the -omega0/2 sigma_z of the compact block formula; the two differ only
by relabelling the spins.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np
import numpy.typing as npt
import structlog

from ptfloquet.config import get_settings
from ptfloquet.core.constants import FLOQUET_DEFAULTS, SIGMA_Z
from ptfloquet.core.errors import NoConvergence, NotConverged
from ptfloquet.core.model import DriveType, ModelParams, Quasienergy

logger = structlog.get_logger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]


class Spin(IntEnum):
    UP = 0
    DOWN = 1


@dataclass(frozen=True)
class FloquetMatrix:
    """
    Block-tridiagonal Floquet matrix of dimension 2(2N+1).

    Attributes:
        params: Model parameters the matrix was built from
        N: Truncation half-width (photon blocks -N..N)
        entries: Dense complex matrix
    """

    params: ModelParams
    N: int
    entries: ComplexMatrix

    @property
    def dim(self) -> int:
        return 2 * (2 * self.N + 1)

    def index(self, spin: Spin | int, n: int) -> int:
        """Basis index of |spin n>."""
        if abs(n) > self.N:
            raise IndexError(f"photon block {n} outside truncation N={self.N}")
        return 2 * (n + self.N) + int(spin)

    def label(self, index: int) -> tuple[Spin, int]:
        """Inverse of index(): (spin, photon block)."""
        return Spin(index % 2), index // 2 - self.N

    def parity_operator(self) -> ComplexMatrix:
        """P = sigma_z (x) I in this basis ordering."""
        return np.kron(np.eye(2 * self.N + 1), SIGMA_Z)

    def pt_residual(self) -> float:
        """max |P conj(H_F) P - H_F|, zero by construction."""
        P = self.parity_operator()
        return float(np.max(np.abs(P @ self.entries.conj() @ P - self.entries)))


def build_floquet(p: ModelParams, N: int = FLOQUET_DEFAULTS["truncation"]) -> FloquetMatrix:
    """
    Build the truncated Floquet matrix for blocks n = -N..N.

    Example (omega0 = omega = 1, lambda = 0):
        the diagonal reads 0.5 - N, -0.5 - N, ..., 0.5 + N, -0.5 + N

    Raises:
        ValueError: N < 2
    """
    if N < 2:
        raise ValueError(f"truncation N must be at least 2, got {N}")
    dim = 2 * (2 * N + 1)
    H = np.zeros((dim, dim), dtype=np.complex128)
    half = 0.5 * p.omega0
    g_lam = p.coupling

    for block, n in enumerate(range(-N, N + 1)):
        up, down = 2 * block, 2 * block + 1
        H[up, up] = half + n * p.omega
        H[down, down] = -half + n * p.omega
        if n < N:
            # |up n> <-> |down n+1>, |down n> <-> |up n+1>
            H[up, down + 2] = H[down + 2, up] = g_lam
            H[down, up + 2] = H[up + 2, down] = g_lam

    return FloquetMatrix(params=p, N=N, entries=H)


def spectrum(m: FloquetMatrix) -> ComplexVector:
    """
    All 2(2N+1) eigenvalues of the dense non-Hermitian matrix (LAPACK zgeev:
    Hessenberg reduction plus shifted QR), sorted by real then imaginary part.

    Raises:
        NoConvergence: the QR iteration did not converge
    """
    try:
        eigs = np.linalg.eigvals(m.entries)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigenvalue iteration failed for N={m.N}: {exc}") from exc
    order = np.lexsort((eigs.imag, eigs.real))
    return eigs[order]


def _central_pair(eigs: ComplexVector, omega: float) -> tuple[Quasienergy, Quasienergy]:
    """The two eigenvalues whose real part lies closest to the zone centre omega/2."""
    distance = np.abs(eigs.real - 0.5 * omega)
    first, second = np.argsort(distance, kind="stable")[:2]
    a, b = complex(eigs[first]), complex(eigs[second])
    # larger imaginary part first, matching the monodromy convention
    if a.imag < b.imag:
        a, b = b, a
    return Quasienergy.from_complex(a, omega), Quasienergy.from_complex(b, omega)


def _pair_distance(
    x: tuple[Quasienergy, Quasienergy], y: tuple[Quasienergy, Quasienergy]
) -> float:
    straight = max(x[0].distance(y[0]), x[1].distance(y[1]))
    crossed = max(x[0].distance(y[1]), x[1].distance(y[0]))
    return min(straight, crossed)


def central_quasienergies(
    eigs: ComplexVector,
    p: ModelParams,
    N: int,
    *,
    check: bool = True,
    tol: float | None = None,
) -> tuple[Quasienergy, Quasienergy]:
    """
    Physical quasienergy pair from a truncated spectrum.

    Takes the two eigenvalues with real part closest to omega/2, reduces
    them mod omega, and (if check is set and N - 4 >= 2) compares against
    the same pair computed at truncation N - 4.

    Raises:
        NotConverged: the N and N - 4 pairs differ by more than tol
            (default settings.convergence_tol * omega0)
    """
    pair = _central_pair(eigs, p.omega)
    smaller = N - FLOQUET_DEFAULTS["convergence_drop"]
    if check and smaller >= 2:
        tol = get_settings().convergence_tol * p.omega0 if tol is None else tol
        ref_eigs = spectrum(build_floquet(p, smaller))
        drift = _pair_distance(pair, _central_pair(ref_eigs, p.omega))
        if drift > tol:
            raise NotConverged(
                f"central quasienergies moved by {drift:.3e} between N={N} and N={smaller}"
            )
    return pair


def floquet_quasienergies(
    p: ModelParams, N: int | None = None, *, check: bool = True
) -> tuple[Quasienergy, Quasienergy]:
    """build_floquet + spectrum + central_quasienergies in one call (N: settings.truncation)."""
    N = get_settings().truncation if N is None else N
    return central_quasienergies(spectrum(build_floquet(p, N)), p, N, check=check)


def scan_truncation(p: ModelParams) -> int:
    """settings.scan_truncation when lambda <= 0.1 omega0, else settings.truncation."""
    settings = get_settings()
    if abs(p.lam) <= 0.1 * p.omega0:
        return settings.scan_truncation
    return settings.truncation


def scan_quasienergies(p: ModelParams) -> tuple[tuple[Quasienergy, Quasienergy], int]:
    """
    Central pair for one point of a scan, at the cheapest truncation that converges.

    Starts at scan_truncation(p) and falls back to settings.truncation when
    the N versus N - 4 check fails there. Returns the pair and the N used.
    """
    N = scan_truncation(p)
    full = get_settings().truncation
    try:
        return floquet_quasienergies(p, N), N
    except NotConverged:
        if N >= full:
            raise
        logger.debug("scan_truncation_raised", omega=p.omega, lam=p.lam, N=full)
    return floquet_quasienergies(p, full), full


def interior_mask(eigs: ComplexVector, p: ModelParams, N: int, margin: int = 4) -> np.ndarray:
    """
    Eigenvalues whose real part lies within the photon blocks |n| <= N - margin.

    Edge eigenvalues of the truncated matrix are unreliable; only the
    interior ones are expected to carry the full-matrix properties.
    """
    limit = (N - margin) * p.omega
    return np.abs(eigs.real) <= limit


# =============================================================================
# Parity decomposition
# =============================================================================


@dataclass(frozen=True)
class ParityChain:
    """
    One of the two uncoupled sub-lattices of the Floquet matrix.

    Site m is |up m> or |down m>, whichever belongs to the chain. Chain 1
    holds |up 0>, |down 1>, |up 2>, ... with on-site energy
    (-1)^m omega0/2 + m omega; chain 2 holds |down 0>, |up 1>, ... with
    -(-1)^m omega0/2 + m omega. Neighbouring sites hop with g lambda.
    """

    label: int
    sites: tuple[int, ...]
    indices: tuple[int, ...]
    matrix: ComplexMatrix

    def onsite(self) -> npt.NDArray[np.float64]:
        return np.real(np.diag(self.matrix))


def parity_chains(m: FloquetMatrix) -> tuple[ParityChain, ParityChain]:
    """
    Split the Floquet matrix into its two uncoupled chains.

    Together the chains cover every basis index exactly once and the
    matrix has no entries between them.
    """
    chains = []
    for label, first_spin in ((1, Spin.UP), (2, Spin.DOWN)):
        sites = tuple(range(-m.N, m.N + 1))
        indices = tuple(
            m.index(first_spin if n % 2 == 0 else Spin(1 - first_spin), n) for n in sites
        )
        sub = m.entries[np.ix_(indices, indices)].copy()
        chains.append(ParityChain(label=label, sites=sites, indices=indices, matrix=sub))
    return chains[0], chains[1]


def wannier_stark_chain(
    lam: float,
    omega: float,
    M: int,
    drive: DriveType | str = DriveType.ANTI_HERMITIAN,
) -> ComplexMatrix:
    """
    Tight-binding chain with a linear potential, sites m = -M..M:

        H0 = sum_m [ m omega |m><m| + g lambda (|m><m+1| + |m+1><m|) ]

    Its spectrum is the ladder n omega; parity_chains(...) equals H0 plus
    the alternating on-site term +-(-1)^m omega0/2.
    """
    g = DriveType.parse(drive).coupling
    diag = np.arange(-M, M + 1, dtype=np.float64) * omega
    H0 = np.diag(diag.astype(np.complex128))
    hop = np.full(2 * M, g * lam, dtype=np.complex128)
    H0 += np.diag(hop, 1) + np.diag(hop, -1)
    return H0


def dump_matrix(m: FloquetMatrix | ComplexMatrix) -> str:
    """
    Plain-text dump: one line per row, entries as "re,im" separated by
    spaces, row-major, repr precision. Used for fixture comparison.
    """
    entries = m.entries if isinstance(m, FloquetMatrix) else np.asarray(m)
    lines = [
        " ".join(f"{z.real!r},{z.imag!r}" for z in (complex(v) for v in row)) for row in entries
    ]
    return "\n".join(lines) + "\n"
