"""Tour of the two-level model's three spectral regimes.

The effective Hamiltonian H = [[E, ir], [-is, E]] changes character with the
sign of r*s: two real eigenvalues, a complex-conjugate pair, or a single 2x2
Jordan block exactly on the boundary.  This script prints the spectral
decomposition in each regime and shows that the chain basis reproduces H.
"""

import numpy as np

from pseudoherm import MashhoonPapiniParams, mashhoon_papini, reconstruct

CASES = [
    ("oscillatory (r*s > 0)", MashhoonPapiniParams(e=1.0, r=1.0, s=1.0)),
    ("dissipative (r*s < 0)", MashhoonPapiniParams(e=1.0, r=1.0, s=-1.0)),
    ("critical (s = 0)", MashhoonPapiniParams(e=1.0, r=1.0, s=0.0)),
    ("trivial (r = s = 0)", MashhoonPapiniParams(e=2.0, r=0.0, s=0.0)),
]

for label, params in CASES:
    h, regime, dec = mashhoon_papini(params)
    print(f"--- {label}: regime={regime}")
    print(f"H =\n{np.array_str(h, precision=3)}")
    for g in dec.groups:
        dims = tuple(c.dim for c in g.chains)
        print(f"  eigenvalue {g.eigenvalue:.3f}  kind={g.kind}  block dims {dims}")
    err = np.linalg.norm(reconstruct(dec) - h)
    print(f"  chain-basis reconstruction error: {err:.2e}\n")
