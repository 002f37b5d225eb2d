"""Exact computations with minimal Horrocks monads on P^3 (rank 2, c1 = 0)."""

from .enumerator import MonadCandidate, MonadShape, rho_bounds, shapes_for, table3_report
from .family import build_ein_x11, build_family_monad, component_report, family_dimension
from .graded import MonadPresentation, h0_E, h1_E, h2_E, h3_E, spectrum_of, validate_monad
from .polyring import Ideal, Poly, PolyMatrix, buchberger, empty_projective_zero_locus, parse_poly
from .spectra import Spectrum, enumerate_spectra

__version__ = "0.1.0"
