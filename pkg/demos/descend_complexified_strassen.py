"""
Bringing a complex scheme back to Q
===================================

Conjugate Strassen's scheme by Gaussian-integer matrices so every factor
picks up imaginary parts, then let ``descend`` find a De Groote transform
that makes all coefficients rational again.
"""

import random

from mmdescend import Field
from mmdescend.fixtures import strassen
from mmdescend.formats import format_matrix_literal
from mmdescend.linalg import random_invertible
from mmdescend.rationalize import descend
from mmdescend.scheme import TransformTriple, apply_transform, brent_verify, detect_ring

K = Field(-1)
rng = random.Random(7)

# a random invertible (X0, Y0, Z0) over Q[i]
t0 = TransformTriple(*(random_invertible(2, K, rng, 3) for _ in range(3)))
s = apply_transform(strassen(), t0)
print(s.label(), "over", detect_ring(s))
print(s.triples[0].O)

# three product families, three intertwiners, three fixed-space bases
outcome = descend(s)
print(outcome.status, "/", outcome.certificate.reason)
for v in outcome.variants:
    print(v.variant, "nullspace dim", v.nullspace_dim, "S =", v.S and format_matrix_literal(v.S))

# the transform found is not (X0, Y0, Z0)^-1, yet its output is rational
for name in "XYZ":
    print(name, "=", format_matrix_literal(getattr(outcome.transform, name)))
r = outcome.result_scheme
print(brent_verify(r), "| ring", detect_ring(r))

# the whole outcome serializes as a machine-readable report
print(outcome.to_json()[:400])
