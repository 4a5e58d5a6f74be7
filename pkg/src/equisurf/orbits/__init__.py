from .models import (  # noqa: F401
    Generator,
    SurfaceModel,
    crosscap_slide_matrix,
    dehn_twist_matrix,
    generator_matrices,
    homology_rank,
    parse_model,
    reflection_matrix,
    symplectic_generators,
)
from .engine import (  # noqa: F401
    BudgetExceededError,
    OrbitReport,
    orbit_count,
    orbit_of,
)
