"""Exact-arithmetic toolkit for braid varieties, double Bott-Samelson cells,
their cluster seeds, and the splicing maps between them."""

from .combinat import (BraidWord, Permutation, bruhat_leq, coxeter_length,
                       delta_word, demazure_product, demazure_star,
                       lift_with_prefix, positive_lift)
from .exactalg import (Polynomial, Rational, RationalFunction,
                       factor_against_pool, parse_poly, parse_rf, poly_gcd,
                       rat, rf_normalize)
from .symmat import (braid_letter_matrix, braid_word_matrix,
                     delta_matrix_closed_form, generalized_lu, lu_decompose,
                     minor, slide_upper_through)
from .flags import (chart_membership, in_braid_variety, in_dbs,
                    is_transverse, relative_position)
from .cluster import (Quiver, Seed, dbs_seed, exchange_ratio,
                      extended_exchange_matrix, freeze, frozen_diag_units,
                      mutate, quiver_from_braid)
from .splice import (braid_splice_forward, braid_splice_inverse,
                     dbs_splice_forward, dbs_splice_inverse, phi1, phi2,
                     splice_monomial, verify_compat_diagrams,
                     verify_exchange_ratios, verify_variable_transport)
from .richardson import (frozen_count, frozen_count_base, richardson_braid,
                         richardson_splice, s_count)
from .latticeiso import (WitnessMatrix, find_witness,
                         variable_map_from_witness, verify_witness)

__version__ = "0.1.0"
