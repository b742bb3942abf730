"""Finite non-symmetric cost spaces: axioms, betweenness, chains, pair-generator
groups, preclosures, directed curvature, and tight-span function pairs."""
from ._numeric import DEFAULT_TOLERANCE, FLOAT, INF, RATIONAL
from .betweenness import (BetweennessRelation, betweenness_from_order, check_axioms,
                          derive_betweenness)
from .chains import (PathChainSum, boundary, chain_length, compose_chains,
                     enumerate_tachistic_chains, is_chronodesic_tight, is_tachistic,
                     path_cost_closure)
from .core import (CostInputError, CostSpace, ParameterError, ValidationReport,
                   asymptotic_constants, is_B_cost, is_cost_morphism, lawvere_from_weights,
                   product, reverse, symmetrize, validate_cost)
from .dress import (CycleStructure, DigraphStructure, GroupWord, cost_hom, free_reduce, psi,
                    psi_preimage, relator, rewrite_to_base, words_equal)
from .geometry import (ball, convexity_checks, directed_curvature, find_medians,
                       grid_oracle_curvature, gromov_radii, hyperconvexity_deviation,
                       symmetrized_curvature)
from .io import load_space, space_from_json, space_to_json
from .pretop import (AdditivePreclosure, GeneralPreclosure, is_continuous,
                     preclosure_from_cost, preclosure_from_digraph, product_preclosure)
from .tightspan import (FunctionPair, is_admissible_pair, is_bitight_pair, iterate_tight_pairs,
                        kuratowski_pair, tighten_f, tighten_g)

__version__ = "0.1.0"
