"""skewspec: spectral methods built on orthonormal bases whose
differentiation matrices are skew-Hermitian and structured.

Bases: the Malmquist-Takenaka and Hermite-function T-systems on the real
line (tridiagonal differentiation), and the Laguerre / ultraspherical
W-systems on [0, inf) and [-1, 1] (rank-1 semiseparable differentiation).
On top of them: O(N) structured algebra, FFT/quadrature transforms, Krylov
and resolvent-contour matrix functions, and Galerkin solvers for the
diffusion and linear Schrodinger model problems with their structural
norm guarantees enforced.
"""

from .orthopoly import (NumericalError, Quadrature, RecurrenceCoeffs,
                        eval_orthonormal, eval_weighted, gauss_quadrature,
                        recurrence_coeffs, tridiag_eigenvalues)
from .tsystems import (BasisSpec, TridiagonalSkew, hermite_fn_basis,
                       hermite_fn_eval, hermite_fn_table, laguerre_w_basis,
                       mt_basis, mt_eval, mt_eval_table, t_diff_matrix,
                       ultraspherical_w_basis)
from .wsystems import (SemiseparableRank1, laguerre_w_diff, laguerre_w_eval,
                       laguerre_w_table, ultra_w_diff, ultra_w_eval,
                       ultra_w_table, w_diff_matrix, weight_index)
from .structmat import (DiffMatrix, SingularMatrixError, diff_matrix, matvec,
                        op_norm_estimate, semisep_solve, shift_solve,
                        to_dense, tridiag_solve)
from .transforms import (CoeffVec, GridSamples, analyze, basis_table,
                         dft_unitary, mt_analysis, parseval_norm,
                         quad_analysis, synthesis)
from .matfun import (ContourError, ContourSpec, KrylovInfo, KrylovOptions,
                     dunford_apply, enclosing_contour, krylov_apply)
from .pde import (AliasingError, DiffusionProblem, DissipativityError,
                  SchrodingerProblem, SolveReport, UnitarityError,
                  solve_diffusion, solve_schrodinger)
from .experiments import (ExperimentRecord, RateFit, fit_decay,
                          index_growth_study, mt_rational_rate,
                          pointwise_error_curve, pointwise_error_study)
from .functions import FUNCTION_REGISTRY, UnknownFunctionError, resolve_function

__version__ = "0.1.0"
