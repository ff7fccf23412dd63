"""Central tolerance and reference-constant table.

Structural residuals (unitarity, trace, Hermiticity) are deterministic and
tight; statistical tolerances (Monte Carlo, KS) are fixed here so every test
and CLI command pulls the same numbers.
"""

import numpy as np

# structural residuals
TOL_UNITARY = 1e-10          # max-abs elementwise |U U+ - 1|
TOL_TRACE = 1e-10
TOL_HERMITIAN = 1e-10
TOL_EIG_NEG = 1e-8           # density-matrix eigenvalues may dip this far below 0
TOL_PARITY_COMMUTATOR = 1e-6  # above this, parity splitting refuses to run
TOL_FFT_VS_DENSE = 1e-9
TOL_CHANNEL_ROUNDTRIP = 1e-8
TOL_BLOCH_SPECTRUM = 1e-7

# statistical defaults
MC_SIGMA = 3.0               # Monte-Carlo acceptance band in standard errors
KS_DEFAULT = 0.05

# mean spacing-ratio values (closed forms, exact N=3 surmises)
R_MEAN_POISSON = 2.0 * np.log(2.0) - 1.0
R_MEAN_GOE = 4.0 - 2.0 * np.sqrt(3.0)
R_MEAN_GUE = 2.0 * np.sqrt(3.0) / np.pi - 0.5
R_MEAN_GSE = 32.0 * np.sqrt(3.0) / (15.0 * np.pi) - 0.5

# golden-mean boundary phase used to break time reversal in the torus maps
GOLDEN_PHASE = (np.sqrt(5.0) - 1.0) / 2.0

EULER_GAMMA = float(np.euler_gamma)
