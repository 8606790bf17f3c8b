"""
Checking the robust batch property
==================================

"""

from rbclab import GF, LinearCode, RbcParams, construct_repetition, find_repair_set, verify_rbc

F2 = GF(2)

# a single parity column lets any 3 symbols be read even with one column lost
parity = LinearCode.from_rows(F2, [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
report = verify_rbc(parity, RbcParams(3, 3, 1))
print(report.to_json())

# which columns recover x_1 and x_2 once column 1 (0-based 0) is gone?
print(find_repair_set(parity, [0, 1], [0], 3))
print(find_repair_set(parity, [0, 1], [0], 2))  # two columns are not enough

# the identity has no redundancy at all; the counterexample is 1-based
ident = LinearCode.from_rows(F2, [[1, 0], [0, 1]])
bad = verify_rbc(ident, RbcParams(1, 1, 1))
print(bad.holds, bad.to_dict()["counterexample"])

# both strategies agree; the second only tries columns supported inside I
rep = construct_repetition(F2, 3, 1)
for strategy in ("naive", "lemma1"):
    r = verify_rbc(rep, RbcParams(2, 2, 1), strategy)
    print(strategy, r.holds, r.pairs_checked, r.candidates_examined)
