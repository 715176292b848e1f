"""Hoffman constants of linear inequality systems under the l1/l-infinity norms."""
from .core import (METHODS, NORMS, TOL_FEAS, TOL_ZERO, BudgetExceeded,
                   CoverCertificate, EmptyPolyhedronError, EmptySetError,
                   HoffmanError, HoffmanResult, IndexSet, InvalidWitnessError,
                   Membership, NumericalFailure, PreconditionFailed,
                   TooLargeError, ZeroMatrixError, scale)
from .cover import (SeparationInstance, Verification, cover_algorithm,
                    separate, verify_certificate)
from .enumeration import brute_force, enum_solve, row_rank
from .generators import (box, l1ball, random_instance, simplex,
                         strictly_feasible_instance)
from .lp import LpProblem, LpSolution, SimplexSolver, solve
from .lpcc import BnbNode, lpcc_solve, node_relaxation
from .relative import (ConicReference, equation_distance, relative_cone_eq,
                       relative_cone_ineq, relative_distance)
from .subproblems import (bound_check, distance_to_polyhedron, fast_path,
                          hj_primal, hj_vertex, membership, minimal_support,
                          residual, rho)

simplex_gen = simplex

__version__ = "0.1.0"
