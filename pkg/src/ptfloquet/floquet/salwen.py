"""
Self-consistent effective two-level Hamiltonian for a nearly degenerate pair.

For the pair P = {a, b} and the rest Q of a Floquet matrix:

    H'(eps) = H_PP + H_PQ (eps - H_QQ)^-1 H_QP

solved as a linear system against (eps - H_QQ), which resums the whole
perturbation series in the off-diagonal elements. eps is iterated to the
eigenvalue of H'(eps) nearest the starting guess.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import structlog

from ptfloquet.core.constants import SALWEN_DEFAULTS
from ptfloquet.core.errors import NoConvergence, SmallDenominator
from ptfloquet.floquet.matrix import ComplexMatrix, FloquetMatrix

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class EffectiveTwoLevel:
    """
    Effective 2x2 Hamiltonian [[h11, h12], [h21, h22]] and its eigenvalue eps.

    In Hermitian mode h12 = conj(h21).
    """

    h11: complex
    h12: complex
    h21: complex
    h22: complex
    eps: complex
    iterations: int = 0

    @property
    def matrix(self) -> ComplexMatrix:
        return np.array([[self.h11, self.h12], [self.h21, self.h22]], dtype=np.complex128)

    def eigenvalues(self) -> tuple[complex, complex]:
        """Both eigenvalues, ordered by descending imaginary then real part."""
        mean = 0.5 * (self.h11 + self.h22)
        root = np.sqrt(complex(0.25 * (self.h11 - self.h22) ** 2 + self.h12 * self.h21))
        a, b = complex(mean + root), complex(mean - root)
        return (a, b) if (a.imag, a.real) >= (b.imag, b.real) else (b, a)


def _reduce(H: ComplexMatrix, p_idx: list[int], q_idx: np.ndarray, eps: complex) -> ComplexMatrix:
    H_pp = H[np.ix_(p_idx, p_idx)]
    H_pq = H[np.ix_(p_idx, q_idx)]
    H_qp = H[np.ix_(q_idx, p_idx)]
    H_qq = H[np.ix_(q_idx, q_idx)]
    resolvent_rhs = scipy.linalg.solve(eps * np.eye(len(q_idx)) - H_qq, H_qp)
    return H_pp + H_pq @ resolvent_rhs


def salwen_effective(
    m: FloquetMatrix,
    a: int,
    b: int,
    eps0: complex | None = None,
    *,
    max_iter: int = SALWEN_DEFAULTS["max_iter"],
    tol: float = SALWEN_DEFAULTS["eps_tol"],
) -> EffectiveTwoLevel:
    """
    Effective Hamiltonian for the basis states a and b.

    Args:
        m: Floquet matrix
        a, b: Basis indices of the nearly degenerate pair (see FloquetMatrix.index)
        eps0: Starting guess; defaults to the diagonal entry at a
        max_iter: Iteration cap
        tol: Convergence threshold on |delta eps|

    Returns:
        Converged H'(eps) and eps

    Raises:
        SmallDenominator: an intermediate diagonal entry lies within
            omega/100 of eps
        NoConvergence: no convergence within max_iter iterations
    """
    if a == b:
        raise ValueError("a and b must be distinct basis states")
    H = m.entries
    p_idx = [a, b]
    q_idx = np.array([k for k in range(m.dim) if k not in (a, b)])
    q_diag = np.diag(H)[q_idx]
    min_gap = SALWEN_DEFAULTS["min_gap_fraction"] * m.params.omega

    eps_start = complex(H[a, a]) if eps0 is None else complex(eps0)
    eps = eps_start
    for iteration in range(1, max_iter + 1):
        gap = float(np.min(np.abs(eps - q_diag)))
        if gap < min_gap:
            raise SmallDenominator(
                f"intermediate level within {gap:.3e} of eps={eps:.6g} (limit {min_gap:.3e})"
            )
        H_eff = _reduce(H, p_idx, q_idx, eps)
        candidates = np.linalg.eigvals(H_eff)
        eps_new = complex(candidates[np.argmin(np.abs(candidates - eps_start))])
        if abs(eps_new - eps) < tol:
            logger.debug("salwen_converged", iterations=iteration, eps=str(eps_new))
            H_eff = _reduce(H, p_idx, q_idx, eps_new)
            return EffectiveTwoLevel(
                h11=complex(H_eff[0, 0]),
                h12=complex(H_eff[0, 1]),
                h21=complex(H_eff[1, 0]),
                h22=complex(H_eff[1, 1]),
                eps=eps_new,
                iterations=iteration,
            )
        eps = eps_new

    raise NoConvergence(f"effective Hamiltonian did not converge in {max_iter} iterations")
