"""hopfzeta: diagram Hopf algebras, shuffle/stuffle algebras, Lyndon bases,
polylogarithms, polyzetas and the Drinfel'd KZ associator (truncated, exact
where possible and with rigorous error bounds where not)."""

from .words import Alphabet, AlphabetError, X, Y, words_upto, words_of_weight, is_convergent
from .poly import Poly
from .series import NCSeries, Domain, DomainError, QQ, POLY, RR, CC, letter, bracket, ad_power
from .shuffle import (
    SHUFFLE, STUFFLE, ProductKind, shuffle, stuffle, series_product, unshuffle_coproduct,
    is_group_like, is_primitive, project,
)
from .lyndon import (
    GroupLikeError, is_lyndon, lyndon_words, cfl_factorize, standard_factorization, pbw, dual_pbw,
    exp_factorize, exp_product, lyndon_rewrite, necklace_count,
)
from .bell import SetPartition, set_partitions, bell_number, bell_polynomial, EGFSeries, hadamard_exp
from .diagrams import (
    LabeledDiagram, Diagram, DeformParams, product as diagram_product, coproduct_bs, multiplicity,
    diagrams_with_edges, hadamard_expansion_check,
)
from .polylog import (
    Approx, NumericError, DivergentWordError, polylog, harmonic_sum, zeta_value, generating_series,
    chen_series,
)
from .associator import (
    zeta_reg, z_series, adjoint_expansion, monodromy_series, act_by_exp, functional_equation_check,
    bridge_relations,
)
from .zetacache import ZetaCache, ZetaCacheEntry

__version__ = "0.1.0"
