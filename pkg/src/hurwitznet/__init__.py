"""hurwitznet: exact Hurwitz numbers, chord-diagram networks, and
Ginibre matrix-model verification.

The package computes Hurwitz numbers for any base Euler characteristic by
the symmetric-group character formula, models networks of chord diagrams
and their ribbon graphs, evaluates the associated Schur series exactly at
a fixed weight, and verifies the resulting identities against an exact
Wick-contraction oracle and Monte Carlo sampling.
"""

from .exact import GaussianRational, identity, matrix
from .partitions import (ContentProductSpec, Partition, conjugate,
                         content_product, enumerate_partitions, partition,
                         rational_content_weight, z_of)
from .characters import (CharacterTable, PowerSumPoint, character, chi_sqrt,
                         dimension, phi, schur_at, schur_at_via_characters,
                         schur_of_matrix, schur_special)
from .network import (ChordNetwork, Dart, Label, RibbonGraphSummary,
                      contract, parse_network, random_network, ribbon_summary,
                      verify_order_independence)
from .hurwitz import (HurwitzQuery, aggregate, brute_force_klein,
                      brute_force_orientable, degree_lowering_check, mednykh)
from .series import (MOBIUS, MobiusFace, PowerSumFace, SchurSeriesSpec,
                     beta_weights, expect_traces_formula, miwa_specialize,
                     series_degree, tau_B_truncated, tau_hyp_truncated,
                     theorem1_rhs, theorem2_rhs, word_matrix)
from .rmt import (LemmaCheckResult, MCReport, TraceObservable, lemma_check,
                  mc_ginibre, mc_unitary, wick_expectation, within_sigma)

__version__ = "0.1.0"
