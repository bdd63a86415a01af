"""Relativistic Landau eigenmodes, free-space Laguerre-Gauss beams, paraxial
Crank-Nicolson propagation in a uniform magnetic field, and Gouy-phase
diagnostics. Natural units hbar = c = m = 1 throughout."""

__version__ = "0.1.0"

from .errors import (ConfigError, DomainError, ExtractionError, FitError,
                     FixtureLookupError, GridMismatchError, LandauParaxialError,
                     NumericsError, ParaxialityError, WallContactError)
from .units import (BeamContext, ParticleSpec, SiConversion, Species,
                    CRITICAL_FIELD_TESLA, electron, free_context, make_context,
                    positron, si_to_natural)
from .special import laguerre, mode_norm_constant
from .modes import (CorrespondenceRates, FreeBeamGeometry, GouyLaw, GouyLawKind,
                    Physicality, PzExpansion, QuantumNumbers, eval_free_lg,
                    eval_landau_radial, free_beam_geometry, free_vs_magnetic_rates,
                    gouy_law_magnetic, landau_energy, paraxial_pz,
                    physicality_check, q_factor, transverse_eigenvalue)
from .grid import (Carrier, ComplexRadialField, CurvatureFit, RadialGrid,
                   TransverseOperatorParams, apply_transverse_operator,
                   convert_carrier, dump_field, load_field, make_radial_grid,
                   norm, overlap, radial_phase_curvature, sample_mode,
                   second_moment)
from .spectrum import (SpectrumReport, SpectrumRow, TridiagonalSym,
                       build_transverse_matrix, lowest_eigenvalues,
                       spectrum_report, write_spectrum_csv)
from .propagate import (PropagationParams, PropagationRecord, cn_step,
                        propagate, write_record_csv, write_snapshots)
from .gouy import (FitModel, GouyFit, extract_gouy, extract_gouy_free,
                   fit_linear, unwrap_phase, write_fit_csv)
from .config import RunConfig, parse_config, parse_config_text
from .fixtures import Fixture, all_fixtures, load_fixture
