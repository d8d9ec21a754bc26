"""
Algebraic data structures: polynomials, the character-lattice grading,
derivations and the polyhedral-divisor model.
"""
