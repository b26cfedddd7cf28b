"""
Numerical tolerances shared by all computational modules
"""

# Structural identities (Hermiticity, Kronecker algebra, transpose swap on Φ+, projectors)
STRUCTURAL_TOL = 1e-12

# Spectral conditions (O^2 = I, eigenvalues, PSD)
SPECTRAL_TOL = 1e-10

# Weights below this are treated as zero
DEGENERACY_TOL = 1e-12

# Residual norms and identity gaps at saturation
SATURATION_TOL = 1e-10

# Closed form vs brute force agreement
VERIFY_TOL = 1e-10
