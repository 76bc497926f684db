"""
Why some rational schemes never become integral
===============================================

If a product M_j1 ... M_jk of the square products of a scheme has a
non-integer trace, no simultaneous conjugation makes every M_j integral.
"""

from mmdescend.fixtures import half_trace_scheme, strassen
from mmdescend.obstruct import integer_obstruction, trace_profile
from mmdescend.scheme import detect_ring, product_traces

# a small <2,1,1,4> scheme over Z[1/2]
s = half_trace_scheme()
print(s.label(), detect_ring(s))

# each single trace is an integer, so depth 1 proves nothing
print([str(t) for t in product_traces(s)])

# the product of the first two has trace 1/2
rep = integer_obstruction(s)
print(rep.summary())

# a census of non-integral traces per depth
for row in trace_profile(s, 3):
    print(row.depth, row.non_integer, "of", row.examined)

# Strassen is integral, so the search comes back empty
print(integer_obstruction(strassen(), k_max=3).summary())
