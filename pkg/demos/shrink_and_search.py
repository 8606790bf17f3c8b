"""
Shrinking a code and searching for the shortest one
===================================================

"""

from rbclab import GF, RbcParams, enumerate_rbcs, exists_rbc, min_blocklength, shrink_chain, theorem_bound

F2 = GF(2)

# no binary (2,2,1) code with k = 3 fits in 5 columns; 6 is the minimum
params = RbcParams(2, 2, 1)
print(exists_rbc(F2, 3, 5, params).render())
print("shortest:", min_blocklength(F2, 3, params, n_max=6), " bound:", theorem_bound(3, 2, 1).lower_bound)

# beating repetition: four inequivalent k = 4, n = 7 codes for (3,3,1)
codes = list(enumerate_rbcs(F2, 4, 7, RbcParams(3, 3, 1)))
print(len(codes), "codes; repetition would need", 4 * 2)
print(codes[0].G.data)

# shrinking drops d + 1 + (k - r) columns per step until k = r
trace = shrink_chain(codes[0], RbcParams(3, 3, 1), verify_each=True)
print(trace.render())
