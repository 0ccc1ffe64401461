"""Exact computation of polynomial H-identity invariants of finite-dimensional algebras."""

from .action import (ANTIAUTOMORPHISM, AUTOMORPHISM, DERIVATION, Generator, HActionData, ProductRule,
                     generalized, h_simple_grouping, induced_quotient_action, is_h_invariant,
                     operator_algebra_basis, trivial_action, verify_product_rule)
from .algebra import (Algebra, center, check_associativity, jacobson_radical, lift_idempotent, quotient,
                      simple_decomposition, wedderburn_section)
from .invariants import (codimension_rank, cocharacter_multiplicities, growth_report, pi_exponent,
                         verify_cocharacter_vanishing, verify_witness)
from .linalg import Subspace, multimodular_rank, rank
from .polynomials import HMonomial, HPolynomial, alternate, enumerate_basis, evaluate, is_identity, sn_act

__version__ = "0.1.0"
