"""Indefinite-metric (Krein) structure and the fourfold symmetry taxonomy.

A Hermitian invertible metric splits the space into its positive and negative
spectral subspaces and defines the indefinite product ``<psi| eta |phi>``.
Congruence by the chain basis turns any generalized parity into an involutory
Hermitian canonical metric whose ±1 projectors realize the splitting.

Invertible operators fall into four classes relative to a metric P:

    linear      U:      U^dag P U = +P   (unitary)      | -P (pseudounitary)
    antilinear  M o K:  M^dag P M = +P^T (antiunitary)  | -P^T (pseudoantiunitary)

The antilinear conditions are the matrix form of "preserves the indefinite
product up to complex conjugation (and sign)".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import linalg, operators, spectral
from .errors import (
    NonHermitianMetric,
    NotAntiunitary,
    SingularMetric,
    SingularOperator,
    ZeroLeadingCoefficient,
)
from .linalg import DEFAULT_TOL, Tolerance
from .operators import AntilinearOp, SymmetryOperator, antilinear_compose
from .spectral import SpectralDecomposition


@dataclass(frozen=True)
class KreinSpace:
    """Metric with its ± spectral projectors and signature."""

    metric: np.ndarray
    plus_projector: np.ndarray
    minus_projector: np.ndarray
    signature: tuple[int, int]


@dataclass(frozen=True)
class CongruenceResult:
    """Chain-basis congruence: the metric becomes involutory Hermitian."""

    s: np.ndarray
    h_tilde: np.ndarray
    p_tilde: np.ndarray
    c_tilde: np.ndarray
    t_tilde: AntilinearOp
    pi_plus: np.ndarray
    pi_minus: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.p_tilde).real)


class SymmetryClass(enum.Enum):
    P_UNITARY = "PUnitary"
    P_ANTIUNITARY = "PAntiunitary"
    P_PSEUDOUNITARY = "PPseudounitary"
    P_PSEUDOANTIUNITARY = "PPseudoantiunitary"
    NONE = "None"


@dataclass(frozen=True)
class ClassificationResult:
    symmetry_class: SymmetryClass
    residuals: dict
    threshold: float
    antilinear: bool


@dataclass(frozen=True)
class PseudounitaryExistence:
    """Decision + witnesses for the existence of metric-reversing symmetries."""

    exists: bool
    reflecting: np.ndarray | None
    quaternionic: AntilinearOp | None
    paired_metric: np.ndarray | None
    canonical_trace: float
    violations: list


def krein_inner(psi, phi, metric) -> complex:
    """Indefinite inner product ``<psi| metric |phi>`` (conjugate-linear in
    the first argument)."""
    metric = linalg.as_cmatrix(metric)
    psi = linalg.as_vector(psi, metric.shape[0])
    phi = linalg.as_vector(phi, metric.shape[0])
    return complex(psi.conj() @ metric @ phi)


def build_krein_space(metric, tol: Tolerance = DEFAULT_TOL) -> KreinSpace:
    """Spectral splitting of a Hermitian invertible metric."""
    metric = linalg.as_cmatrix(metric)
    if not linalg.is_hermitian(metric, tol):
        raise NonHermitianMetric("metric is not Hermitian at tolerance")
    w, v = np.linalg.eigh(0.5 * (metric + metric.conj().T))
    thr = tol.scaled(metric)
    if np.abs(w).min() <= thr:
        raise SingularMetric(
            f"metric eigenvalue {w[np.abs(w).argmin()]:.3e} within tolerance of zero")
    pos = v[:, w > 0]
    neg = v[:, w < 0]
    return KreinSpace(
        metric=metric,
        plus_projector=pos @ pos.conj().T,
        minus_projector=neg @ neg.conj().T,
        signature=(pos.shape[1], neg.shape[1]),
    )


def congruence_to_involutory(dec: SpectralDecomposition, sigma="canonical",
                             basis_f=None) -> CongruenceResult:
    """Transform to the chain basis, where the generalized parity becomes the
    signed block-reversal matrix (involutory and Hermitian).

    ``s`` maps the chosen orthonormal basis (default: standard) onto the
    psi-chains; linear operators transform by similarity, the metric by
    congruence, and the antilinear time reversal by
    ``M -> s^-1 M transpose(s^-1)`` so its matrix part stays symmetric.
    """
    sigma = operators.resolve_sigma(dec, sigma)
    psi = dec.psi_matrix()
    if basis_f is not None:
        f = linalg.as_cmatrix(basis_f)
        if np.linalg.norm(f.conj().T @ f - np.eye(dec.n)) > DEFAULT_TOL.scaled(f):
            raise ValueError("basis_f must be orthonormal")
        s = psi @ f.conj().T
    else:
        s = psi
    s_inv = linalg.inv(s)
    h = spectral.reconstruct(dec)
    p = operators.build_parity(dec, sigma)
    c = operators.build_charge(dec, sigma)
    t = operators.build_time_reversal(dec)
    p_tilde = s.conj().T @ p @ s
    eye = np.eye(dec.n)
    return CongruenceResult(
        s=s,
        h_tilde=s_inv @ h @ s,
        p_tilde=p_tilde,
        c_tilde=s_inv @ c @ s,
        t_tilde=AntilinearOp(s_inv @ t.matrix @ s_inv.T),
        pi_plus=0.5 * (eye + p_tilde),
        pi_minus=0.5 * (eye - p_tilde),
    )


def _as_symmetry(op) -> SymmetryOperator:
    if isinstance(op, SymmetryOperator):
        return op
    if isinstance(op, AntilinearOp):
        return SymmetryOperator(op.matrix, antilinear=True)
    return SymmetryOperator(linalg.as_cmatrix(op), antilinear=False)


def classification_report(op, metric, tol: Tolerance = DEFAULT_TOL) -> ClassificationResult:
    """Residuals of the four class conditions; a class is assigned only when
    its residual is below tolerance and the runner-up is at least ten times
    larger (otherwise NONE, with the residuals reported)."""
    sym = _as_symmetry(op)
    metric = linalg.as_cmatrix(metric)
    if not linalg.is_hermitian(metric, tol):
        raise NonHermitianMetric("metric is not Hermitian at tolerance")
    if linalg.rank(metric, tol) < metric.shape[0]:
        raise SingularMetric("metric is singular at tolerance")
    m = sym.matrix
    if linalg.rank(m, tol) < m.shape[0]:
        raise SingularOperator("operator is singular at tolerance; classification "
                               "is defined for invertible operators only")
    gram = m.conj().T @ metric @ m
    target = metric.T if sym.antilinear else metric
    residuals = {
        SymmetryClass.P_UNITARY: float(np.linalg.norm(gram - metric)),
        SymmetryClass.P_PSEUDOUNITARY: float(np.linalg.norm(gram + metric)),
        SymmetryClass.P_ANTIUNITARY: float(np.linalg.norm(gram - metric.T)),
        SymmetryClass.P_PSEUDOANTIUNITARY: float(np.linalg.norm(gram + metric.T)),
    }
    if sym.antilinear:
        eligible = [SymmetryClass.P_ANTIUNITARY, SymmetryClass.P_PSEUDOANTIUNITARY]
    else:
        eligible = [SymmetryClass.P_UNITARY, SymmetryClass.P_PSEUDOUNITARY]
    thr = tol.scaled(metric, m, gram)
    ranked = sorted(eligible, key=lambda k: residuals[k])
    best, runner = ranked[0], ranked[1]
    cls = SymmetryClass.NONE
    if residuals[best] <= thr and residuals[runner] >= 10.0 * thr:
        cls = best
    return ClassificationResult(symmetry_class=cls,
                                residuals={k.value: v for k, v in residuals.items()},
                                threshold=thr, antilinear=sym.antilinear)


def classify(op, metric, tol: Tolerance = DEFAULT_TOL) -> SymmetryClass:
    return classification_report(op, metric, tol).symmetry_class


def factor_antiunitary(v: AntilinearOp, dec: SpectralDecomposition, sigma, metric,
                       sigma_prime=None, tol: Tolerance = DEFAULT_TOL):
    """Split a metric-antiunitary V into involutory-antilinear times linear:
    ``V = (CTP) U = (TP) U'`` with U, U' metric-unitary.  Since CTP and TP
    are involutions, ``U = (CTP) o V`` and ``U' = (TP) o V``."""
    if classify(v, metric, tol) is not SymmetryClass.P_ANTIUNITARY:
        raise NotAntiunitary("operator is not metric-antiunitary; no such factorization")
    if sigma_prime is None:
        sigma_prime = sigma
    ctp = operators.build_ctp(dec, sigma, sigma_prime)
    tp = operators.build_tp(dec, sigma_prime)
    v_sym = SymmetryOperator(v.matrix, antilinear=True)
    u = antilinear_compose(SymmetryOperator(ctp.matrix, antilinear=True), v_sym)
    u_prime = antilinear_compose(SymmetryOperator(tp.matrix, antilinear=True), v_sym)
    return u.matrix, u_prime.matrix


def commutant_element(dec: SpectralDecomposition, params) -> np.ndarray:
    """Element of the commutant of H from per-block Toeplitz coefficients.

    ``params`` lists, for each Jordan chain in storage order, a coefficient
    sequence ``(c_0, ..., c_{p-1})``; the block contribution is
    ``sum_k c_k sum_i |psi_i><phi_{i+k}|`` (upper-triangular Toeplitz in the
    chain basis).  The leading coefficient of every block must be nonzero so
    the result is invertible.  Cross-block mixing is not generated.
    """
    chains = [c for g in dec.groups for c in g.chains]
    if len(params) != len(chains):
        raise ValueError(f"expected {len(chains)} coefficient lists, got {len(params)}")
    x = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for c, coeffs in zip(chains, params):
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        if coeffs.shape[0] != c.dim:
            raise ValueError(
                f"coefficient list of length {coeffs.shape[0]} for a block of dim {c.dim}")
        if coeffs[0] == 0:
            raise ZeroLeadingCoefficient(
                "leading Toeplitz coefficient is zero; the element would be singular")
        for k in range(c.dim):
            for i in range(c.dim - k):
                x += coeffs[k] * np.outer(c.psi[i], c.phi[i + k].conj())
    return x


def pseudounitary_symmetries_exist(dec: SpectralDecomposition) -> PseudounitaryExistence:
    """Metric-reversing (pseudounitary/pseudoantiunitary) symmetries exist
    exactly when every real eigenvalue's Jordan blocks occur in identical
    pairs, which also forces the canonical involutory metric to be traceless."""
    cong_trace = float(np.trace(
        _canonical_p_tilde(dec)).real)
    ok, violations = operators.reflecting_exists(dec)
    if not ok or abs(cong_trace) > 0.5:
        if ok:
            violations = []
        return PseudounitaryExistence(exists=False, reflecting=None, quaternionic=None,
                                      paired_metric=None, canonical_trace=cong_trace,
                                      violations=violations)
    r, p_paired = operators.build_reflecting(dec)
    t_frak = operators.build_quaternionic_T(dec)
    return PseudounitaryExistence(exists=True, reflecting=r, quaternionic=t_frak,
                                  paired_metric=p_paired, canonical_trace=cong_trace,
                                  violations=[])


def _canonical_p_tilde(dec: SpectralDecomposition) -> np.ndarray:
    """Canonical-sign involutory metric directly in the chain basis (signed
    block reversal), avoiding a full congruence when only its trace matters."""
    sigma = operators.canonical_sign_sequence(dec)
    p = np.zeros((dec.n, dec.n), dtype=np.complex128)
    offset = {}
    pos = 0
    for ng, g in enumerate(dec.groups):
        for a, c in enumerate(g.chains):
            offset[(ng, a)] = pos
            pos += c.dim
    for ng, g in enumerate(dec.groups):
        if g.kind != "real":
            continue
        for a, c in enumerate(g.chains):
            o = offset[(ng, a)]
            for i in range(c.dim):
                p[o + c.dim - 1 - i, o + i] = sigma(ng, a)
    for ng1, g1, ng2, g2 in dec.iter_pairs():
        for a, (c1, c2) in enumerate(zip(g1.chains, g2.chains)):
            o1, o2 = offset[(ng1, a)], offset[(ng2, a)]
            for i in range(c1.dim):
                p[o1 + c1.dim - 1 - i, o2 + i] = sigma(ng1, a)
                p[o2 + c1.dim - 1 - i, o1 + i] = sigma(ng1, a)
    return p
