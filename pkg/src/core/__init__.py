"""
Computational modules: two-qubit algebra, Bell families, SOS certificates,
randomness and independent verification
"""
