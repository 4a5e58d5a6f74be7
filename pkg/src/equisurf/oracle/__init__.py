from .scheme import (  # noqa: F401
    Scheme,
    SchemeError,
    analyze,
    beta_genus,
    euler_characteristic,
    fixed_point_report,
    orientability,
    rotation_tuple,
    scheme_from_json,
    scheme_to_json,
    validate_scheme,
)
from .builders import build_example, tr_rotation_table  # noqa: F401
from .surgery import scheme_surgery, scheme_of_word  # noqa: F401
