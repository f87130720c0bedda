# # Refitting the zeros for a fixed set of poles
#
# Once a denominator is chosen, the numerator that minimizes the actual
# impulse-response error is a linear least-squares problem.

import numpy as np

from pronyiir import (
    TimeDesignProblem,
    ZeroDesignProblem,
    build_partition,
    design_time,
    design_zeros,
    solution_error,
    solve_numerator,
)

rng = np.random.default_rng(7)
K, M, N = 30, 3, 4
h_d = 0.9 ** np.arange(K) * np.sin(0.4 * np.arange(K)) + 0.05 * rng.standard_normal(K)

# ## Poles from the least-squares equation-error design

filt, _ = design_time(TimeDesignProblem(h_d, M, N), "ls")
a = filt.a

# ## Numerators from the two criteria

b_eq = solve_numerator(build_partition(TimeDesignProblem(h_d, M, N)), a)
p = ZeroDesignProblem(a, h_d, M)
b_sol, report = design_zeros(p)

print("impulse error, equation-error zeros:", np.linalg.norm(solution_error(p, b_eq)))
print("impulse error, solution-error zeros:", report.solution_error_norm)
print("equation error of the refit:", report.equation_error_norm)
