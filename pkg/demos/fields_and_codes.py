"""
Finite fields and the reference codes
=====================================

"""

import numpy as np

from rbclab import GF, construct_block_rs, construct_mds, construct_repetition, is_mds, min_distance

# GF(8) is built from the smallest irreducible cubic, x^3 + x + 1
F = GF(8)
print(F, "poly coefficients:", F.poly)
print("3 * 5 =", F.mul(3, 5), "  inverse of 3 =", F.inv(3))

# the full multiplication table is a plain numpy array
print(F.mul_table[:4, :4])

# repetition: each message symbol copied d+1 times
rep = construct_repetition(GF(2), 3, 2)
print(rep.G.data)
print("rate", rep.rate, "distance", min_distance(rep))

# a Vandermonde code over GF(7) has n = k + d and meets Singleton
mds = construct_mds(GF(7), 3, 2)
print(mds.G.data)
print("MDS:", is_mds(mds), "distance", min_distance(mds))

# lambda MDS blocks side by side
brs = construct_block_rs(GF(5), 4, 2, 2)
print(brs.G.data)
print("codeword of (1,2,3,4):", np.array(brs.encode([1, 2, 3, 4])))
