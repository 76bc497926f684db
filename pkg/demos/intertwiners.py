"""
Intertwiners and fixed spaces by hand
=====================================

The matrix-level machinery behind ``descend``: an intertwiner S with
S M = conj(M) S and S conj(S) = I, and the fixed vectors of x -> conj(x) S.
"""

from mmdescend import ExactMat, Field
from mmdescend.fixtures import diag_i_minus_i, diag_i_one, g444_S_basis
from mmdescend.rationalize import fixed_space, involution, solve_family, solve_intertwiner

K = Field(-1)

# diag(i,-i) is similar to its conjugate; the intertwiner space is 2-dimensional
D = diag_i_minus_i()
sol = solve_intertwiner([D])
print(sol.uniqueness, [str(B) for B in sol.basis])
print("normalized S:", sol.normalized_S)

# rows of X span the fixed space, and X D X^-1 has rational entries
X = fixed_space(sol.normalized_S)
print(X)
print(X @ D @ X.inv())

# the map is an anti-linear involution: applying it twice gives back x
x = (K("2-i"), K("1/3+i"))
print(involution(sol.normalized_S, involution(sol.normalized_S, x)) == x)

# diag(i,1) is not similar to diag(-i,1): the only intertwiner is singular
report = solve_family([diag_i_one()])
print(report.status, "-", report.note)

# the 4x4 intertwiner of a published <4,4,4,48> scheme already squares to I
S = g444_S_basis()
print((S @ S.conj()).is_identity())
print(fixed_space(S))
# another choice of basis differs only by a rational matrix
print((fixed_space(S, reverse=True) @ fixed_space(S).inv()).is_rational)
