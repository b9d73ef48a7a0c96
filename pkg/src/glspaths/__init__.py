"""Exact-arithmetic path model for crystals of generalized Kac-Moody algebras."""

from .rootdata import (BorcherdsCartanMatrix, MatrixError, AxisViolation,
                       AsymmetricZero, MatrixFormatError, Weight, WeightContext,
                       alpha, context_with_base, format_weight, load_context,
                       parse_context_text, validate_matrix, weight)
from .torbit import (AChain, OrbitRoot, apply_word, dist, find_a_chain,
                     minimal_words, orbit, positive_wpi_roots,
                     reduced_word_search)
from .paths import (HProfile, PiecewisePath, apply_e, apply_f, concatenate,
                    equal_up_to_reparametrization, h_profile, is_integral,
                    is_monotone, linear_path, trivial_path)
from .gls import (CrystalGraph, GLSPath, JoinRejected, JoinResult,
                  enumerate_crystal, export_dot, gls_e, gls_f, properly_join,
                  verify_gls)
from .crystals import (NEG_INF, BJWord, DepthMismatch, ElementaryElement,
                       GeneratorSequence, TensorElement, bj_apply, bj_word,
                       elementary, generate_from, hw_crystal_isomorphic,
                       tensor_e, tensor_f, validate_axioms,
                       validate_category_B, validate_normality)
from .character import (CharacterSeries, NonIntegralOffset, OrthogonalSet,
                        char_of_graph, compare_characters, divide, multiply,
                        orthogonal_subsets, series_text, wkb_series)

__version__ = "0.1.0"
