"""Generalized symmetry operators and the fourfold classification.

For each regime of the two-level model we build the metric (generalized
parity), the charge-like involution, and the antilinear companions, verify
their defining algebra, and classify operators against the metric: linear
operators are metric-unitary or metric-pseudounitary, antilinear ones are
metric-antiunitary or metric-pseudoantiunitary.
"""

import numpy as np

from pseudoherm import (
    MashhoonPapiniParams,
    build_charge,
    build_ctp,
    build_parity,
    build_quaternionic_T,
    build_reflecting,
    build_time_reversal,
    build_tp,
    classify,
    mashhoon_papini,
    propagator,
)

# --- oscillatory regime: the full operator family exists -------------------
h, _, dec = mashhoon_papini(MashhoonPapiniParams(1.0, 1.0, 1.0))
p = build_parity(dec)
c = build_charge(dec)
t = build_time_reversal(dec)
tp = build_tp(dec)
ctp = build_ctp(dec)

print("oscillatory regime:")
print(f"  P =\n{np.array_str(p, precision=3)}")
print(f"  C^2 - 1: {np.linalg.norm(c @ c - np.eye(2)):.2e}")
print(f"  [C, H]:  {np.linalg.norm(c @ h - h @ c):.2e}")
print(f"  (TP)^2 - 1:  {np.linalg.norm(tp.square() - np.eye(2)):.2e}")
print(f"  (CTP)^2 - 1: {np.linalg.norm(ctp.square() - np.eye(2)):.2e}")
print(f"  T matrix is symmetric: {np.allclose(t.matrix, t.matrix.T)}")

u = propagator(h, 0.8)
print(f"  classify(exp(-iHt), P) -> {classify(u, p).value}")
print(f"  classify(TP, P)        -> {classify(tp, p).value}")

# --- dissipative regime: metric-reversing symmetries appear ----------------
h, _, dec = mashhoon_papini(MashhoonPapiniParams(1.0, 1.0, -1.0))
p = build_parity(dec)
r, p_paired = build_reflecting(dec)
t_frak = build_quaternionic_T(dec)

print("\ndissipative regime:")
print(f"  R =\n{np.array_str(r.real, precision=3)}")
print(f"  classify(R, P)      -> {classify(r, p).value}")
print(f"  classify(Tfrak, P)  -> {classify(t_frak, p).value}")
print(f"  Tfrak^2 + 1: {np.linalg.norm(t_frak.square() + np.eye(2)):.2e}"
      "  (quaternionic: squares to -1)")
