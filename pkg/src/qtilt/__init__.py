"""Exact computations with bound quiver algebras: tensor products, higher
translates, and higher APR/BB tilting modules."""

from .errors import (AlgebraMismatchError, FieldMismatchError,
                     InconclusiveError, NonSplitError, NotAdmissibleError,
                     ParseError, QtiltError, ShapeMismatchError,
                     UndecidedIsomorphismError, UnsupportedCharacteristicError,
                     WorkspaceError)
from .exactla import Matrix, PrimeField, QQ, kernel_basis, kron, rref, solve
from .quivercore import (Arrow, BoundQuiverAlgebra, Path, PathSum, Quiver,
                         StructureConstantAlgebra, abstract_radical,
                         build_algebra, multiply, opposite,
                         primitive_orthogonal_idempotents, radical_basis,
                         regular_structure_algebra, semisimple_and_basic_flags)
from .repcore import (Decomposition, ModuleMap, Representation, decompose,
                      direct_sum, dual, endomorphism_algebra, hom_space, inj,
                      injective_cogenerator, is_isomorphic, kernel_rep,
                      cokernel_rep, proj, proj_sum, projective_cover,
                      random_module, regular, simple, top_and_radical,
                      zero_rep)
from .homengine import (ExtResult, InfinityMarker, MinimalResolution,
                        ProbeResult, ext, ext_dim, ext_module, gldim, injd,
                        is_finite, min_proj_resolution, pd,
                        tau_finiteness_probe, tau_n, tau_n_ext, tau_n_minus,
                        tau_n_minus_ext, transpose)
from .tensorcon import (KunnethReport, TensorAlgebraResult, kunneth_verify,
                        structural_suite, tensor_algebras, tensor_maps,
                        tensor_modules, tensor_total_complex)
from .tilting import (AlgebraPresentation, AprReport, BbReport, CotiltReport,
                      TiltingCertificate, apr_check, apr_cotilting_check,
                      bb_check, count_apr, endo_algebra, endo_idempotents,
                      minimal_left_approximation, present_algebra,
                      verify_tilting)
from .cli import (Workspace, dispatch, main, parse_algebra_file,
                  parse_module_file, serialize_algebra, serialize_module)

__version__ = "0.1.0"
