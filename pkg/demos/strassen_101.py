"""
Exact arithmetic and Strassen's scheme
======================================

A first tour: numbers in Q[i], exact matrices, and the Brent equations
that certify a bilinear scheme multiplies matrices correctly.
"""

from mmdescend import Field, ExactMat
from mmdescend.fixtures import strassen
from mmdescend.scheme import brent_verify, to_encoding, product_traces, cyclic_shift

# Field(d) is Q[sqrt(d)]; for d = -1 the root prints as i
K = Field(-1)
z = K("1+i")
print(z * z.conj(), z.norm(), z.inverse())

# matrices are immutable and exact; @ multiplies, .conj() conjugates entrywise
A = ExactMat([["i", 1], [0, "1-i"]], K)
print(A @ A.inv())
print(A.det(), A.trace())

# Strassen's <2,2,2,7> scheme, built from its U, V, W encoding matrices
s = strassen()
print(s.label())
report = brent_verify(s)
print(report)

# a single wrong entry shows up as the first violated Brent sum (1-based)
t0 = s.triples[0]
broken = s.replace_triples([t0._replace(O=t0.O.scale(K(2)))] + list(s.triples[1:]))
print(brent_verify(broken))

# the encoding matrices hold vec(O_j), vec(P_j) and vec(Q_j^T) as rows
enc = to_encoding(s)
print(enc.W)

# traces of the products O_j P_j Q_j are invariants of the De Groote orbit
print([str(t) for t in product_traces(s)])
print([str(t) for t in product_traces(cyclic_shift(s), "QOP")])
