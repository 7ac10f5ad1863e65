"""Kitt ideals, residual intersections and the polynomial algebra underneath them."""

from .ring import (
    GF, LEX, GREVLEX, QQ, DomainError, Polynomial, PolyParseError, PolyRing, PreconditionError,
    StructuralError, block_order,
)
from .ideals import (
    Ideal, colon, dimension, eliminate, groebner_basis, height, ideal_equal, ideal_member, intersect,
    normal_form, radical_member,
)
from .modules import FreeVector, PolyMatrix, determinant, fitting_ideal, fitting_zero, lift, minors, syzygies
from .koszul import KoszulElement, cycles, differential, wedge
from .kitt import (
    KittInput, KittResult, g_condition, kitt, kitt_identity_suite, kitt_ideal, kitt_recursive_large_r,
    kitt_recursive_small_r, quotient_image_kitt, residual_check, specialization_by_element,
)
from .generic import (
    GenericExtension, generic_kitt, generic_residual, height_report, regular_sequence_check, specialize,
    verify_deformation, verify_specialization,
)
from .report import VerificationReport

__version__ = "0.1.0"
