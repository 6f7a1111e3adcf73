"""Generalized parity, charge-conjugation and time-reversal families.

All operators are assembled as dyad sums over the biorthonormal chains of a
``SpectralDecomposition``.  Antilinear operators are concretized as
"matrix followed by entrywise conjugation": ``A v = M conj(v)``.  With that
semantics the algebra is fully determined:

    compose:  L1 L2 | L M | M conj(L) | M1 conj(M2)
    adjoint:  transpose(M)
    square:   M conj(M)

Sign sequences attach one sign per (group, chain) label, with conjugate pair
members sharing their sign.  Index reversal inside a chain (``i -> p+1-i``)
appears wherever the dual chain runs antiparallel to the primal one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    NotDiagonalizableReal,
    NotInvolutory,
    NotPaired,
    UnpairedRealBlocks,
)
from .linalg import DEFAULT_TOL, Tolerance
from .spectral import REAL, SpectralDecomposition


@dataclass(frozen=True)
class AntilinearOp:
    """Antilinear operator ``v -> M conj(v)``."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", linalg.as_cmatrix(self.matrix))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v) -> np.ndarray:
        return self.matrix @ np.conj(linalg.as_vector(v, self.n))

    def square(self) -> np.ndarray:
        """The linear operator ``A^2 = M conj(M)``."""
        return self.matrix @ np.conj(self.matrix)


@dataclass(frozen=True)
class SymmetryOperator:
    """Uniform carrier: a linear matrix or an antilinear ``M . K``."""

    matrix: np.ndarray
    antilinear: bool = False

    def __post_init__(self):
        object.__setattr__(self, "matrix", linalg.as_cmatrix(self.matrix))

    @classmethod
    def linear(cls, m) -> "SymmetryOperator":
        return cls(matrix=m, antilinear=False)

    @classmethod
    def antiunitary_form(cls, op: AntilinearOp) -> "SymmetryOperator":
        return cls(matrix=op.matrix, antilinear=True)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v) -> np.ndarray:
        v = linalg.as_vector(v, self.n)
        return self.matrix @ (np.conj(v) if self.antilinear else v)


def antilinear_compose(a: SymmetryOperator, b: SymmetryOperator) -> SymmetryOperator:
    """Composition ``a . b`` respecting (anti)linearity."""
    if a.n != b.n:
        raise DimensionMismatch(f"cannot compose dimensions {a.n} and {b.n}")
    if not a.antilinear:
        return SymmetryOperator(a.matrix @ b.matrix, antilinear=b.antilinear)
    if not b.antilinear:
        return SymmetryOperator(a.matrix @ np.conj(b.matrix), antilinear=True)
    return SymmetryOperator(a.matrix @ np.conj(b.matrix), antilinear=False)


def antilinear_adjoint(a: AntilinearOp) -> AntilinearOp:
    """Adjoint defined through ``<psi|A phi> = <phi|A^dag psi>``; equals the
    plain transpose of the matrix part."""
    return AntilinearOp(a.matrix.T.copy())


# ---------------------------------------------------------------------------
# sign sequences


@dataclass(frozen=True)
class SignSequence:
    """One sign per (group index, chain index); pair members share signs."""

    signs: dict

    def __post_init__(self):
        for key, val in self.signs.items():
            if val not in (+1, -1):
                raise ValueError(f"sign at {key} must be +1 or -1, got {val}")

    def __call__(self, group: int, chain: int) -> int:
        return self.signs[(group, chain)]


def all_plus(dec: SpectralDecomposition) -> SignSequence:
    return SignSequence({(ng, a): +1
                         for ng, g in enumerate(dec.groups)
                         for a in range(len(g.chains))})


def canonical_sign_sequence(dec: SpectralDecomposition) -> SignSequence:
    """Alternate +/- over the odd-dimensional real-eigenvalue blocks (all
    other labels get +), which drives the congruent involutory metric to
    trace 0 on even-dimensional spaces and trace 1 on odd-dimensional ones."""
    signs = {}
    flip = +1
    for ng, g in enumerate(dec.groups):
        for a, chain in enumerate(g.chains):
            if g.kind == REAL and chain.dim % 2 == 1:
                signs[(ng, a)] = flip
                flip = -flip
            else:
                signs[(ng, a)] = +1
    return SignSequence(signs)


def resolve_sigma(dec: SpectralDecomposition, sigma) -> SignSequence:
    """Accept a SignSequence, the string "canonical", or a sign mapping."""
    if isinstance(sigma, SignSequence):
        seq = sigma
    elif sigma is None or sigma == "canonical":
        seq = canonical_sign_sequence(dec)
    else:
        seq = SignSequence(dict(sigma))
    _check_sigma(dec, seq)
    return seq


def _check_sigma(dec: SpectralDecomposition, sigma: SignSequence):
    labels = {(ng, a) for ng, g in enumerate(dec.groups) for a in range(len(g.chains))}
    if set(sigma.signs) != labels:
        raise ValueError("sign sequence labels do not match the decomposition")
    for ng1, g1, ng2, g2 in dec.iter_pairs():
        for a in range(len(g1.chains)):
            if sigma(ng1, a) != sigma(ng2, a):
                raise ValueError(
                    f"conjugate pair {g1.eigenvalue:.6g} must share its sign at chain {a}")


def _require_paired(dec: SpectralDecomposition):
    if dec.has_unpaired_complex():
        raise NotPaired(
            "decomposition has complex eigenvalues without conjugate partners; "
            "no generalized parity exists")


# ---------------------------------------------------------------------------
# operator constructions


def build_parity(dec: SpectralDecomposition, sigma="canonical") -> np.ndarray:
    """Hermitian metric from phi-dyads with intra-chain index reversal and
    conjugate-pair cross terms; renders H pseudo-Hermitian."""
    _require_paired(dec)
    sigma = resolve_sigma(dec, sigma)
    p = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for ng, g in dec.iter_real():
        for a, c in enumerate(g.chains):
            for i in range(c.dim):
                p += sigma(ng, a) * np.outer(c.phi[c.dim - 1 - i], c.phi[i].conj())
    for ng1, g1, ng2, g2 in dec.iter_pairs():
        for a, (c1, c2) in enumerate(zip(g1.chains, g2.chains)):
            for i in range(c1.dim):
                rev = c1.dim - 1 - i
                p += sigma(ng1, a) * (np.outer(c1.phi[rev], c2.phi[i].conj())
                                      + np.outer(c2.phi[rev], c1.phi[i].conj()))
    return p


def build_charge(dec: SpectralDecomposition, sigma="canonical") -> np.ndarray:
    """Involutory operator commuting with H (signed completeness sum)."""
    _require_paired(dec)
    sigma = resolve_sigma(dec, sigma)
    c_op = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for ng, g in enumerate(dec.groups):
        for a, c in enumerate(g.chains):
            for i in range(c.dim):
                c_op += sigma(ng, a) * np.outer(c.psi[i], c.phi[i].conj())
    return c_op


def build_time_reversal(dec: SpectralDecomposition) -> AntilinearOp:
    """Antilinear Hermitian T with ``T H^dag T^-1 = H`` (psi-dyads with
    index reversal; the matrix part is complex-symmetric)."""
    _require_paired(dec)
    m = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for g in dec.groups:
        for c in g.chains:
            for i in range(c.dim):
                m += np.outer(c.psi[i], c.psi[c.dim - 1 - i])
    return AntilinearOp(m)


def build_tp(dec: SpectralDecomposition, sigma="canonical") -> AntilinearOp:
    """Involutory antilinear symmetry T P_sigma (index reversals cancel;
    conjugate pairs couple crosswise)."""
    _require_paired(dec)
    sigma = resolve_sigma(dec, sigma)
    m = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for ng, g in dec.iter_real():
        for a, c in enumerate(g.chains):
            for i in range(c.dim):
                m += sigma(ng, a) * np.outer(c.psi[i], c.phi[i])
    for ng1, g1, ng2, g2 in dec.iter_pairs():
        for a, (c1, c2) in enumerate(zip(g1.chains, g2.chains)):
            for i in range(c1.dim):
                m += sigma(ng1, a) * (np.outer(c1.psi[i], c2.phi[i])
                                      + np.outer(c2.psi[i], c1.phi[i]))
    return AntilinearOp(m)


def build_ctp(dec: SpectralDecomposition, sigma="canonical",
              sigma_prime="canonical") -> AntilinearOp:
    """Involutory antilinear symmetry C_sigma T P_sigma'."""
    _require_paired(dec)
    sigma = resolve_sigma(dec, sigma)
    sigma_prime = resolve_sigma(dec, sigma_prime)
    m = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for ng, g in dec.iter_real():
        for a, c in enumerate(g.chains):
            coeff = sigma(ng, a) * sigma_prime(ng, a)
            for i in range(c.dim):
                m += coeff * np.outer(c.psi[i], c.phi[i])
    for ng1, g1, ng2, g2 in dec.iter_pairs():
        for a, (c1, c2) in enumerate(zip(g1.chains, g2.chains)):
            coeff = sigma(ng1, a) * sigma_prime(ng1, a)
            for i in range(c1.dim):
                m += coeff * (np.outer(c1.psi[i], c2.phi[i])
                              + np.outer(c2.psi[i], c1.phi[i]))
    return AntilinearOp(m)


def build_positive_metric(dec: SpectralDecomposition) -> np.ndarray:
    """Positive definite metric ``sum |phi><phi|``; exists exactly when the
    spectrum is real and the matrix diagonalizable."""
    bad_complex = [g.eigenvalue for g in dec.groups if g.kind != REAL]
    bad_blocks = [g.eigenvalue for g in dec.groups
                  if any(c.dim > 1 for c in g.chains)]
    if bad_complex or bad_blocks:
        detail = []
        if bad_complex:
            detail.append(f"non-real eigenvalues {bad_complex}")
        if bad_blocks:
            detail.append(f"nontrivial Jordan blocks at {bad_blocks}")
        raise NotDiagonalizableReal(
            "no positive definite metric exists: " + "; ".join(detail),
            reason="Theorem 1")
    p = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for g in dec.groups:
        for c in g.chains:
            p += np.outer(c.phi[0], c.phi[0].conj())
    return p


def _paired_real_layout(dec: SpectralDecomposition, reason: str = "Proposition 4"):
    """For each real group, split its chains into two halves of identical
    dimensions (a paired with a + d/2); raises if impossible."""
    layout = []
    violations = []
    for ng, g in dec.iter_real():
        dims = sorted(range(len(g.chains)), key=lambda a: g.chains[a].dim)
        by_dim = {}
        for a in dims:
            by_dim.setdefault(g.chains[a].dim, []).append(a)
        first, second = [], []
        ok = True
        for d, idxs in sorted(by_dim.items()):
            if len(idxs) % 2 != 0:
                ok = False
                break
            half = len(idxs) // 2
            first.extend(idxs[:half])
            second.extend(idxs[half:])
        if not ok:
            violations.append((g.eigenvalue, g.block_dims))
        else:
            layout.append((ng, g, first, second))
    if violations:
        raise UnpairedRealBlocks(
            f"real-eigenvalue Jordan blocks do not occur in identical pairs: "
            f"{violations}", reason=reason)
    return layout


def reflecting_exists(dec: SpectralDecomposition) -> tuple[bool, list]:
    """Pairing condition of the reflecting-operator theorem, with the
    violating (eigenvalue, block_dims) list when it fails."""
    if dec.has_unpaired_complex():
        return False, [(g.eigenvalue, g.block_dims) for g in dec.groups
                       if g.kind == "unpaired"]
    try:
        _paired_real_layout(dec)
    except UnpairedRealBlocks:
        return False, [(g.eigenvalue, g.block_dims) for _, g in dec.iter_real()
                       if _real_group_unpaired(g)]
    return True, []


def _real_group_unpaired(g) -> bool:
    counts = {}
    for c in g.chains:
        counts[c.dim] = counts.get(c.dim, 0) + 1
    return any(v % 2 for v in counts.values())


def build_reflecting(dec: SpectralDecomposition):
    """Reflecting symmetry R (involutory, commutes with H, metric-reversing)
    together with the paired parity it reverses.

    Requires every real eigenvalue's Jordan blocks to occur in identical
    pairs; the paired parity puts opposite signs on the two halves of each
    real block pair.
    """
    _require_paired(dec)
    layout = _paired_real_layout(dec)
    n = dec.n
    r = np.zeros((n, n), dtype=np.complex128)
    p = np.zeros((n, n), dtype=np.complex128)
    for ng, g, first, second in layout:
        for a, b in zip(first, second):
            ca, cb = g.chains[a], g.chains[b]
            for i in range(ca.dim):
                r += np.outer(ca.psi[i], cb.phi[i].conj())
                r += np.outer(cb.psi[i], ca.phi[i].conj())
                rev = ca.dim - 1 - i
                p += np.outer(ca.phi[rev], ca.phi[i].conj())
                p -= np.outer(cb.phi[rev], cb.phi[i].conj())
    for ng1, g1, ng2, g2 in dec.iter_pairs():
        for a, (c1, c2) in enumerate(zip(g1.chains, g2.chains)):
            for i in range(c1.dim):
                r += np.outer(c1.psi[i], c1.phi[i].conj())
                r -= np.outer(c2.psi[i], c2.phi[i].conj())
                rev = c1.dim - 1 - i
                p += np.outer(c1.phi[rev], c2.phi[i].conj())
                p += np.outer(c2.phi[rev], c1.phi[i].conj())
    return r, p


def build_quaternionic_T(dec: SpectralDecomposition) -> AntilinearOp:
    """Antilinear symmetry squaring to -1 (fermionic-type time reversal);
    coincides with R T P for the paired parity."""
    _require_paired(dec)
    layout = _paired_real_layout(dec, reason="Theorem 2")
    m = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for ng, g, first, second in layout:
        for a, b in zip(first, second):
            ca, cb = g.chains[a], g.chains[b]
            for i in range(ca.dim):
                m += np.outer(ca.psi[i], cb.phi[i])
                m -= np.outer(cb.psi[i], ca.phi[i])
    for ng1, g1, ng2, g2 in dec.iter_pairs():
        for a, (c1, c2) in enumerate(zip(g1.chains, g2.chains)):
            for i in range(c1.dim):
                m += np.outer(c1.psi[i], c2.phi[i])
                m -= np.outer(c2.psi[i], c1.phi[i])
    return AntilinearOp(m)


def involutory_symmetry_exists(dec: SpectralDecomposition) -> bool:
    """A nontrivial involutory symmetry commuting with H exists iff H has at
    least two independent eigenvectors."""
    return sum(len(g.chains) for g in dec.groups) >= 2


def canonical_involution(c, tol: Tolerance = DEFAULT_TOL) -> tuple[int, int]:
    """(+1, -1) eigenvalue multiplicities of an involutory operator.

    Also certifies diagonalizability via ``rank(C-1) + rank(C+1) = n``
    (an involution cannot carry a nilpotent part).
    """
    c = linalg.as_cmatrix(c)
    n = c.shape[0]
    eye = np.eye(n)
    if np.linalg.norm(c @ c - eye) > tol.scaled(c, c):
        raise NotInvolutory("operator does not square to the identity at tolerance")
    r_minus = linalg.rank(c - eye, tol)
    r_plus = linalg.rank(c + eye, tol)
    if r_minus + r_plus != n:
        raise NotInvolutory(
            f"rank(C-1)+rank(C+1) = {r_minus + r_plus} != {n}; "
            "involution check inconsistent at tolerance")
    return n - r_minus, n - r_plus
