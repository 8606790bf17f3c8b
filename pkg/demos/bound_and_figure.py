"""
The block-length bound and the rate curves
==========================================

"""

from rbclab import figure_csv, figure_table, repetition_threshold, theorem_bound

# both ends: r = 1 gives repetition length, r = k gives k + d
print(theorem_bound(100, 1, 2).lower_bound, theorem_bound(100, 100, 2).lower_bound)

# half-integral values appear; the integer bound rounds up
b = theorem_bound(3, 2, 1)
print(b.render())

# with d = r the penalty switches on at r = 42 for k = 100
first = next(r for r in range(1, 101) if theorem_bound(100, r, r).regime.value == "penalty_active")
print("penalty from r =", first)

# the closed-form cut-off is only a sufficient condition; the exact test
# keeps d = 2 flat one step longer, through r = 82
print("closed form:", round(repetition_threshold(100, 2), 3))
rows = figure_table(100, [2], range(79, 85))
for row in rows:
    print(row.r, row.rate_upper_bound)

# the CSV the CLI writes
print(figure_csv(figure_table(100, [2, 100], [1, 50, 100])))
