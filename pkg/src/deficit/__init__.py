"""Action spectrum of 3-dimensional dynamical triangulations."""
__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded, DeficitError, InvalidC, InvalidPair, MoveNotApplicable, NonInvolution,
    NonPositiveMu, NotBracketable, NotManifold, NotSimplicial, ParseError, TargetOutOfRange,
    TriangulationError, UndefinedRatio, UnmatchedFace,
)
from .triangulation import (  # noqa: E402
    LENIENT, STRICT, FVector, Triangulation, boundary_4simplex, build_from_gluings, f_vector,
    mean_edge_degree, parse_triangulation, read_triangulation, validate,
)
from .isosig import from_signature, isomorphism_signature  # noqa: E402
from .moves import pachner_move  # noqa: E402
from .recognition import recognize_s3  # noqa: E402
from .action import (  # noqa: E402
    GeometryConstants, action_gap, f_vector_from_K_mu, normalized_action, regge_action_direct,
    regge_action_mu,
)
from .spectrum import WalkupParams, bracket, min_bracketing_K, n1_window, spectrum_levels  # noqa: E402
from .nearlyflat import (  # noqa: E402
    cosmological_constant, expected_action_asymptotic, expected_action_exact, geometric_lemma_lhs,
    lambda_history, state_count,
)
