"""Knot colouring polynomials over finite groups, with quandle state sums and
Yang-Baxter traces as independent cross-checks."""
from .colouring import (check_prime_congruence, colouring_number, colouring_polynomial, enumerate_colourings,
                        quandle_colourings, total_colouring_number)
from .diagram import (BraidWord, PDCode, WirtingerCode, braid_symmetry, braid_to_long_wirtinger,
                      bretzel_diagram, connected_sum, load_fixture, parse_braid_word, parse_pd,
                      pd_to_long_wirtinger, wirtinger_symmetry)
from .errors import ColpolyError, HypothesisError, ParseError, SearchLimitExceeded, VerificationFailure
from .group_ring import RingElement, augmentation, polynomial, render
from .groups import PointedGroup, build_named_group, find_obversion
from .quandle import (FiniteQuandle, cocycle_from_section, conjugation_quandle, covering_quandle,
                      verify_quandle_axioms)
from .state_sum import crosscheck_cp_equals_ss, specialize_ss_to_cp, state_sum
from .yang_baxter import build_yb_operator, closed_trace, long_partial_trace, markov_spot_check

__version__ = "0.1.0"
