"""diolab: an exact-arithmetic laboratory for Diophantine approximation scans.

Exact S-part decompositions and budgeted factorization, real algebraic
numbers of small degree with certified enclosures, evaluators for the
standard lower-bound shapes on linear forms in logarithms, continued
fractions with three exact expansion backends, p-adic quadratic numbers, and
the scan harness tying them together behind a CLI.
"""

__version__ = "0.1.0"

from .exactarith import (FactorizationBudget, FactorMap, PrimeSet,
                         SPartDecomposition, factorize, greatest_prime_factor,
                         is_prime, perfect_power_split, s_part, v_p_rational)
from .algebraic import (Enclosure, QuadraticReal, RootOfInteger, evaluate,
                        fracpart_power_rational, h_star, height,
                        liouville_constant, nearest_int_distance, power_exact)
from .bounds import (BoundConstants, BoundReport, LogFormInput, baker73_B_bound,
                     bula_bound, invert_linear_log, lower_bound, quantity_B,
                     quantity_Bdoubleprime, quantity_Bprime, yu_bound)
from .cfrac import (CFExpansion, ConvergentRecord, ExponentSeries, cf_expand,
                    cf_period, irrationality_exponent_series, legendre_filter,
                    nu_series, simultaneous_scan, vb_series)
from .padic import (PadicQuadratic, hensel_root, mult_exponent_scan,
                    v_p_linear_form)
from .sequences import (RecurrenceSpec, SparseDigitSpec, almost_power_frontier,
                        dominant_root, poly_value_scan, power_sum_grid,
                        recurrence_values, sparse_digit_sequence, srl_delta,
                        sunit_solve, t_unit_sum_scan)
from .convergents import (convergent_spart_scan, lambda_q_decompose,
                          triple_decompose_scan)
