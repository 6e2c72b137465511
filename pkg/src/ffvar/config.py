"""Tolerances and frozen empirical constants.

Float tolerances guard numerical identities. The ``C_*`` values multiply
q^{-1/2} in the large-q checks: the underlying results only give O(.)
bounds, so each constant was calibrated once from a reference run and then
frozen (with headroom) below a declared ceiling. They are engineering
choices, not proven constants.
"""

# numerical identities
ROOT_TOL = 1e-6             # |u| classification of L-function zeros
EXPLICIT_FORMULA_TOL = 1e-6
FROBENIUS_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-10   # sum of a nontrivial character over the units
IDENTITY_REL_TOL = 1e-8     # exact short-interval/character identity
COEFF_ZERO_TOL = 1e-8       # L-coefficients below this (relative) count as 0

# ceiling for every calibrated constant below
C_CEILING = 5.0

C_EMPIRICAL = 5.0           # |emp/q^{h+1} - prediction| <= C q^{-1/2}
C_SCHUR_OF_ZEROS = 5.0      # family max residual
C_FAMILY_DELTA = 5.0
C_SQUAREFUL_DECAY = 5.0
C_SHIFT = 3.0
C_MEAN = 5.0                # |E a - a_hat_(n)| <= C / q

# default enumeration budget (number of polynomials factored)
DEFAULT_BUDGET = 10**8
