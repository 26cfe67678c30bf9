"""Exact jet derivatives, Wronskians, Fermat-type families and their bookkeeping."""

__version__ = "0.1.0"

from .errors import (DivisionFails, FrameDegenerate, GcdError, IndexSetTooLarge, JetWronskError,
                     OrderOverflow, ParseError, SingularPoint, TooSmall, TruncationMismatch)
from .polynomial import Polynomial
from .parsing import parse_polynomial
from .series import TruncatedSeries, series_compose
from .jets import (CurveGerm, JetContext, JetPoint, JetPolynomial, evaluate, jet_derivative,
                   jet_of_curve, leibniz_check)
from .reparam import Reparam, act, act_on_polynomial, compose_reparam, faa_di_bruno_coeffs
from .wronskian import (WronskianSpec, cocycle_check, invariance_check, multiplicativity_check,
                        nondegeneracy_witness, wronskian, wronskian_at)
from .family import (FamilySpec, assemble_F, germ_in_hypersurface, reduced_jet_derivative,
                     reduced_wronskian, stratum_data)
from .grassmann import (IncidencePoint, PluckerVector, incidence_check, local_frame_determinant,
                        phi_matrix, plucker_of)
from .bounds import (DegreeDecomposition, ParamSet, decompose_degree, delta_conditions, deng_bound,
                     index_counts, jet_dim, kprime, r_threshold)
