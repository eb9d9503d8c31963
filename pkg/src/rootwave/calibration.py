"""Committed empirical calibration maxima for the bound-shape checks.

Each constant is the maximum of |sum| / bound observed on a fixed,
documented sweep (deterministic grid or seeded RNG).  The verification
suites and the acceptance gate assert that re-runs stay within 5% of these
values, so a regression in the sum kernels or the bound formulas shows up
as a calibration drift.
"""

# Incomplete inverse sums (expsums.lemma1_error_ratio): deterministic grid
# q in [10, 5000], t in {0, 1, 2, q//2}, m in {1, 2, 3} with (m, q) = 1,
# u = 1, over the range (0, floor(q^1.5)].
LEMMA1_RATIO_MAX = 0.14720065469434496
LEMMA1_RATIO_WITNESS = {"q": 13, "t": 2, "m": 1, "u": 1}

# Differencing inequality (vdc.a_process_check): 250 seeded random trials
# (seed 20240817), unimodular psi with q1 in {3,5,7,11,13}, q2 in [2,10)
# coprime, N in [20, 200), L in [1, N/q2].  The inequality itself holds
# with constant 1; this records how much slack typical data leaves.
APROCESS_RATIO_MAX = 0.48858401392386197
APROCESS_RATIO_WITNESS = {"q1": 11, "q2": 2, "N": 185, "L": 25}

# Short twisted inverse sums vs the three-modulus bound shape
# (vdc.lemma_exp_bound): 200 seeded trials (same seed, continued stream),
# pairwise-coprime squarefree q1, q2, q3 < 40 with q <= N^1.5,
# N in [50, 1500), delta in [1, 5], random small rational weights.
EXP_BOUND_RATIO_MAX = 0.0197799554065235
EXP_BOUND_RATIO_WITNESS = {"N": 271, "q1": 37, "q2": 7, "q3": 10, "delta": 1}

# Short sums vs the iterated k-fold bound (vdc.lemma_akb_bound): 150 seeded
# trials (same stream), k in {1, 2, 3}, coprime squarefree moduli < 40.
AKB_BOUND_RATIO_MAX = 0.018511532796825093
AKB_BOUND_RATIO_WITNESS = {"N": 130, "qs": (37, 39), "delta": 2}
