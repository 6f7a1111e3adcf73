"""Jordan structure and biorthonormal chain bases.

A Hamiltonian with discrete spectrum decomposes into Jordan chains: for each
eigenvalue group ``n`` and degeneracy label ``a`` a chain of vectors
``psi[a][0..p-1]`` with

    H psi[0] = E psi[0],        H psi[i] = E psi[i] + psi[i-1],

together with the dual (``phi``) chains of the adjoint, normalized so that
``<psi_m,a,i | phi_n,b,j> = delta`` and ``sum |psi><phi| = 1``.  This module
extracts that structure from a raw matrix (``analyze``), builds matrices from
a prescribed structure (``synthesize``), and verifies the chain-basis
invariants.

Eigenvalues are classified as real or as conjugate (+/-) pair members; a
complex eigenvalue without a conjugate partner of identical block structure
admits no generalized-parity treatment and is rejected with ``NotPaired``
unless explicitly tolerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    ClusterAmbiguity,
    NotPaired,
    SingularBasis,
    SingularMetric,
    NonHermitianMetric,
)
from .linalg import DEFAULT_TOL, Tolerance

REAL = "real"
PLUS = "plus"       # complex eigenvalue, positive imaginary part
MINUS = "minus"     # its conjugate partner
UNPAIRED = "unpaired"


@dataclass(frozen=True)
class JordanBlockSpec:
    """Eigenvalue with its Jordan block dimensions ``p_{n,a}``."""

    eigenvalue: complex
    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(p) for p in self.block_dims)
        if not dims or any(p < 1 for p in dims):
            raise ValueError("block_dims must be a non-empty list of positive integers")
        object.__setattr__(self, "block_dims", dims)
        object.__setattr__(self, "eigenvalue", complex(self.eigenvalue))

    @property
    def algebraic_multiplicity(self) -> int:
        return sum(self.block_dims)

    @property
    def geometric_multiplicity(self) -> int:
        return len(self.block_dims)


@dataclass(frozen=True)
class JordanChain:
    """One chain: rows of ``psi``/``phi`` are the vectors at heights 1..p."""

    psi: np.ndarray  # (p, n)
    phi: np.ndarray  # (p, n)

    @property
    def dim(self) -> int:
        return self.psi.shape[0]


@dataclass(frozen=True)
class EigenGroup:
    eigenvalue: complex
    kind: str                      # REAL | PLUS | MINUS | UNPAIRED
    pair_id: int | None
    chains: tuple[JordanChain, ...]

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(c.dim for c in self.chains)

    @property
    def algebraic_multiplicity(self) -> int:
        return sum(self.block_dims)


@dataclass(frozen=True)
class SpectralDecomposition:
    n: int
    groups: tuple[EigenGroup, ...]

    def psi_matrix(self) -> np.ndarray:
        """Chain vectors as columns, in group/chain/height order (= S)."""
        cols = [c.psi[i] for g in self.groups for c in g.chains for i in range(c.dim)]
        return np.array(cols, dtype=np.complex128).T

    def phi_matrix(self) -> np.ndarray:
        cols = [c.phi[i] for g in self.groups for c in g.chains for i in range(c.dim)]
        return np.array(cols, dtype=np.complex128).T

    def iter_real(self):
        for ng, g in enumerate(self.groups):
            if g.kind == REAL:
                yield ng, g

    def iter_pairs(self):
        """Yield ``(ng_first, first, ng_second, second)`` once per pair,
        in the members' storage order."""
        seen = set()
        for ng, g in enumerate(self.groups):
            if g.pair_id is None or g.pair_id in seen:
                continue
            seen.add(g.pair_id)
            for mg in range(ng + 1, len(self.groups)):
                if self.groups[mg].pair_id == g.pair_id:
                    yield ng, g, mg, self.groups[mg]
                    break

    def has_unpaired_complex(self) -> bool:
        return any(g.kind == UNPAIRED for g in self.groups)

    def eigenvalues(self) -> np.ndarray:
        return np.array(
            [g.eigenvalue for g in self.groups for c in g.chains for _ in range(c.dim)]
        )


@dataclass(frozen=True)
class SynthesisSpec:
    groups: tuple[JordanBlockSpec, ...]
    basis_seed: int | None = None
    basis: np.ndarray | None = None
    basis_cond: float = 100.0

    @property
    def n(self) -> int:
        return sum(g.algebraic_multiplicity for g in self.groups)


@dataclass(frozen=True)
class BiorthonormalityReport:
    gram_residual: float          # max deviation of <psi|phi> from identity
    completeness_residual: float  # max deviation of sum |psi><phi| from identity


# ---------------------------------------------------------------------------
# reconstruction and checks


def reconstruct(dec: SpectralDecomposition) -> np.ndarray:
    """Assemble H from its chain dyads (eigenvalue part + chain shift part)."""
    h = np.zeros((dec.n, dec.n), dtype=np.complex128)
    for g in dec.groups:
        for c in g.chains:
            for i in range(c.dim):
                h += g.eigenvalue * np.outer(c.psi[i], c.phi[i].conj())
            for i in range(c.dim - 1):
                h += np.outer(c.psi[i], c.phi[i + 1].conj())
    return h


def check_biorthonormal(dec: SpectralDecomposition,
                        tol: Tolerance = DEFAULT_TOL) -> BiorthonormalityReport:
    psi = dec.psi_matrix()
    phi = dec.phi_matrix()
    eye = np.eye(dec.n)
    gram = psi.conj().T @ phi
    complete = psi @ phi.conj().T
    return BiorthonormalityReport(
        gram_residual=float(np.abs(gram - eye).max()),
        completeness_residual=float(np.abs(complete - eye).max()),
    )


def is_pseudo_hermitian(h, eta, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``eta H eta^-1 = H^dag`` at tolerance."""
    h = linalg.as_cmatrix(h)
    eta = linalg.as_cmatrix(eta)
    if not linalg.is_hermitian(eta, tol):
        raise NonHermitianMetric("metric is not Hermitian at tolerance")
    try:
        eta_inv = linalg.inv(eta, tol)
    except Exception as exc:
        raise SingularMetric(f"metric not invertible: {exc}") from exc
    resid = np.linalg.norm(eta @ h @ eta_inv - h.conj().T)
    return bool(resid <= tol.scaled(h, eta))


# ---------------------------------------------------------------------------
# synthesis


def _random_basis(n: int, rng: np.random.Generator, cond: float) -> np.ndarray:
    """Random invertible basis with condition number exactly ``cond``."""
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q1, _ = np.linalg.qr(a)
    b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q2, _ = np.linalg.qr(b)
    if n == 1:
        s = np.ones(1)
    else:
        s = np.geomspace(np.sqrt(cond), 1.0 / np.sqrt(cond), n)
    return q1 @ np.diag(s) @ q2.conj().T


def _pair_up(specs, realness_tol: float, allow_unpaired: bool):
    """Classify spec groups as real / conjugate pairs; returns kind/pair tags."""
    kinds = [None] * len(specs)
    pair_ids = [None] * len(specs)
    next_pair = 0
    unmatched = []
    for idx, g in enumerate(specs):
        if abs(g.eigenvalue.imag) <= realness_tol:
            kinds[idx] = REAL
            continue
        partner = None
        for jdx in unmatched:
            other = specs[jdx]
            if (abs(np.conj(other.eigenvalue) - g.eigenvalue) <= realness_tol
                    and tuple(sorted(other.block_dims)) == tuple(sorted(g.block_dims))):
                partner = jdx
                break
        if partner is None:
            unmatched.append(idx)
        else:
            unmatched.remove(partner)
            pid = next_pair
            next_pair += 1
            for k in (partner, idx):
                pair_ids[k] = pid
                kinds[k] = PLUS if specs[k].eigenvalue.imag > 0 else MINUS
    if unmatched:
        if not allow_unpaired:
            bad = [specs[i].eigenvalue for i in unmatched]
            raise NotPaired(
                f"complex eigenvalues without conjugate partner of equal block "
                f"structure: {bad}")
        for i in unmatched:
            kinds[i] = UNPAIRED
    return kinds, pair_ids


def synthesize(spec: SynthesisSpec, *, allow_unpaired: bool = False,
               tol: Tolerance = DEFAULT_TOL):
    """Build ``(H, decomposition)`` with prescribed Jordan structure.

    ``H = S J S^-1`` where J carries the requested blocks; the psi-chains are
    the columns of S and the phi-chains the conjugated rows of its inverse,
    so every chain-basis invariant holds by construction.
    """
    n = spec.n
    if spec.basis is not None:
        s_mat = linalg.as_cmatrix(spec.basis)
        if s_mat.shape[0] != n:
            raise SingularBasis(f"basis is {s_mat.shape[0]}x{s_mat.shape[0]}, need {n}")
    else:
        rng = np.random.default_rng(spec.basis_seed)
        s_mat = _random_basis(n, rng, spec.basis_cond)

    jordan = np.zeros((n, n), dtype=np.complex128)
    offset = 0
    slices = []  # (group index, [chain slices])
    for g in spec.groups:
        chain_slices = []
        for p in g.block_dims:
            sl = slice(offset, offset + p)
            jordan[sl, sl] = g.eigenvalue * np.eye(p)
            for i in range(p - 1):
                jordan[offset + i, offset + i + 1] = 1.0
            chain_slices.append(sl)
            offset += p
        slices.append(chain_slices)

    try:
        s_inv = linalg.inv(s_mat, tol)
    except Exception as exc:
        raise SingularBasis(f"basis not invertible: {exc}") from exc
    h = s_mat @ jordan @ s_inv

    kinds, pair_ids = _pair_up(spec.groups, tol.abs, allow_unpaired)
    groups = []
    for gi, g in enumerate(spec.groups):
        chains = tuple(
            JordanChain(psi=s_mat[:, sl].T.copy(), phi=s_inv[sl, :].conj().copy())
            for sl in slices[gi]
        )
        groups.append(EigenGroup(eigenvalue=complex(g.eigenvalue), kind=kinds[gi],
                                 pair_id=pair_ids[gi], chains=chains))
    dec = SpectralDecomposition(n=n, groups=tuple(groups))
    return h, dec


# ---------------------------------------------------------------------------
# analysis


def _cluster(eigs: np.ndarray, delta: float):
    """Single-linkage clustering of eigenvalues at link distance ``delta``."""
    order = np.lexsort((eigs.imag, eigs.real))
    remaining = list(order)
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        grew = True
        while grew:
            grew = False
            for idx in list(remaining):
                if min(abs(eigs[idx] - eigs[m]) for m in members) <= delta:
                    members.append(idx)
                    remaining.remove(idx)
                    grew = True
        clusters.append(np.array([eigs[m] for m in members]))
    return clusters


def _nullspace(a: np.ndarray, thresh: float) -> np.ndarray:
    """Orthonormal basis of the numerical kernel (columns)."""
    u, s, vh = np.linalg.svd(a)
    nullity = int(np.count_nonzero(s <= thresh)) + (a.shape[1] - s.size)
    if nullity == 0:
        return np.zeros((a.shape[1], 0), dtype=np.complex128)
    return vh[-nullity:].conj().T


def _extract_chains(b: np.ndarray, mult: int, tol: Tolerance):
    """Jordan chains of the (numerically) nilpotent action of ``b``.

    Uses the rank-of-powers staircase: ``w_k = nullity(b^k) - nullity(b^(k-1))``
    counts blocks of size >= k; generators of height k are picked in
    ``ker(b^k)`` independent of ``ker(b^(k-1))`` and of the height-k vectors
    of longer chains already built.
    """
    n = b.shape[0]
    powers = [np.eye(n, dtype=np.complex128)]
    nullspaces = [np.zeros((n, 0), dtype=np.complex128)]
    nullities = [0]
    k = 0
    while nullities[-1] < mult and k < n:
        k += 1
        powers.append(powers[-1] @ b)
        s = np.linalg.svd(powers[-1], compute_uv=False)
        thresh = tol.abs + tol.rel * (s[0] if s.size else 0.0)
        nullspaces.append(_nullspace(powers[-1], thresh))
        nullities.append(nullspaces[-1].shape[1])
    if nullities[-1] != mult:
        raise ClusterAmbiguity(
            f"rank staircase saturates at nullity {nullities[-1]}, but the "
            f"eigenvalue cluster has multiplicity {mult}; the cluster is not "
            f"resolvable at this tolerance")
    depth = k
    weyr = [nullities[j] - nullities[j - 1] for j in range(1, depth + 1)]
    if any(weyr[j] < weyr[j + 1] for j in range(depth - 1)) or sum(weyr) != mult:
        raise ClusterAmbiguity("inconsistent rank staircase for eigenvalue cluster")

    chains = []          # list of lists of vectors, heights 1..p (index 0 = eigvec)
    height_vectors = []  # vectors at the current height from longer chains
    for kk in range(depth, 0, -1):
        new_count = weyr[kk - 1] - (weyr[kk] if kk < depth else 0)
        if new_count > 0:
            blockers = [nullspaces[kk - 1]] + (
                [np.array(height_vectors).T] if height_vectors else [])
            m = np.hstack(blockers)
            vk = nullspaces[kk]
            if m.shape[1]:
                q, _ = np.linalg.qr(m)
                proj = vk - q @ (q.conj().T @ vk)
            else:
                proj = vk
            _, sv, wh = np.linalg.svd(proj, full_matrices=False)
            for j in range(new_count):
                gen = vk @ wh[j].conj()
                chain = [gen]
                for _ in range(kk - 1):
                    chain.append(b @ chain[-1])
                chain.reverse()  # heights 1..kk
                chains.append(chain)
        # descend: height-(kk-1) vectors of all chains of length >= kk
        height_vectors = [c[kk - 2] for c in chains if len(c) >= kk] if kk >= 2 else []
    chains.sort(key=len, reverse=True)
    return chains


def _fix_gauge(chain):
    """Scale so the chain-top eigenvector has unit norm and a real-positive
    leading significant entry."""
    head = chain[0]
    norm = np.linalg.norm(head)
    if norm == 0:
        return chain
    lead = np.argmax(np.abs(head) > 1e-8 * norm)
    phase = head[lead] / abs(head[lead]) if head[lead] != 0 else 1.0
    scale = 1.0 / (norm * phase)
    return [v * scale for v in chain]


def default_cluster_tol(h: np.ndarray) -> float:
    """Link distance for eigenvalue clustering.

    Eigenvalues of a defective cluster scatter like a cube root of the
    backward error for blocks up to size 3, hence the exponent.
    """
    n = h.shape[0]
    scale = max(1.0, float(np.linalg.norm(h)))
    return 25.0 * (n * n * np.finfo(float).eps * scale) ** (1.0 / 3.0)


def analyze(h, tol: Tolerance = DEFAULT_TOL, *, cluster_tol: float | None = None,
            allow_unpaired: bool = False) -> SpectralDecomposition:
    """Extract eigenvalue groups, Jordan block dimensions and chain bases.

    Raises ``ClusterAmbiguity`` when distinct eigenvalue clusters cannot be
    separated at the requested tolerance, and ``NotPaired`` when a complex
    eigenvalue lacks a conjugate partner of identical block structure.
    """
    h = linalg.as_cmatrix(h)
    n = h.shape[0]
    eigs = linalg.eigenvalues(h, tol)
    delta = default_cluster_tol(h) if cluster_tol is None else float(cluster_tol)

    clusters = _cluster(eigs, delta)
    centers = [c.mean() for c in clusters]
    radii = [float(np.abs(c - c.mean()).max()) for c in clusters]
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            gap = abs(centers[i] - centers[j])
            if gap < 10.0 * max(radii[i] + radii[j], delta):
                raise ClusterAmbiguity(
                    f"eigenvalue clusters at {centers[i]:.6g} and {centers[j]:.6g} "
                    f"are separated by {gap:.3e}, below 10x the cluster scale")

    # snap near-real centers to the real axis before pairing
    real_thresh = max(tol.abs, 0.1 * delta)
    snapped = []
    for c in centers:
        thr = real_thresh + tol.rel * abs(c)
        snapped.append(complex(c.real, 0.0) if abs(c.imag) <= thr else c)

    raw_groups = []
    for c, center in zip(clusters, snapped):
        chains = _extract_chains(h - center * np.eye(n), len(c), tol)
        raw_groups.append((center, chains))

    # deterministic ordering: by real part, then |Im|, plus member first
    raw_groups.sort(key=lambda t: (round(t[0].real, 9), round(abs(t[0].imag), 9),
                                   -t[0].imag))

    specs = [JordanBlockSpec(center, tuple(len(ch) for ch in chains))
             for center, chains in raw_groups]
    kinds, pair_ids = _pair_up(specs, max(real_thresh, delta), allow_unpaired)

    # assemble S from gauge-fixed chains, invert for the dual chains
    cols = []
    layout = []  # (group, chain) -> slice
    offset = 0
    fixed_chains = []
    for center, chains in raw_groups:
        per_group = []
        for ch in chains:
            ch = _fix_gauge(ch)
            cols.extend(ch)
            per_group.append(slice(offset, offset + len(ch)))
            offset += len(ch)
        fixed_chains.append(per_group)
    s_mat = np.array(cols, dtype=np.complex128).T
    try:
        s_inv = linalg.inv(s_mat, tol)
    except Exception as exc:
        raise ClusterAmbiguity(f"chain basis numerically singular: {exc}") from exc

    groups = []
    for gi, (center, _) in enumerate(raw_groups):
        chains = tuple(
            JordanChain(psi=s_mat[:, sl].T.copy(), phi=s_inv[sl, :].conj().copy())
            for sl in fixed_chains[gi]
        )
        groups.append(EigenGroup(eigenvalue=center, kind=kinds[gi],
                                 pair_id=pair_ids[gi], chains=chains))
    return SpectralDecomposition(n=n, groups=tuple(groups))
