"""Squarefree polynomials over finite fields with coefficients from prescribed sets."""

from .field_core import (
    FieldElement,
    FieldSpec,
    ff_add,
    ff_enumerate,
    ff_inv,
    ff_mul,
    ff_pow,
    ff_sub,
    make_field,
)
from .nullsatz import (
    Box,
    GuaranteeKind,
    Tag,
    Witness,
    classify_box,
    cn_applicable,
    find_nonvanishing,
    find_squarefree_in_box,
)
from .sympoly import (
    MultiPoly,
    TUniOverMulti,
    mp_coefficient,
    mp_evaluate,
    mp_mod_p,
    mp_serialize,
    mp_sqrt_char2,
    symbolic_discriminant,
    symbolic_resultant_T,
    verify_prop_squares,
    verify_prop_trinomial,
    verify_trinomial_identity,
)
from .unipoly import (
    UniPoly,
    is_squarefree,
    squarefree_oracle,
    up_derivative,
    up_discriminant,
    up_gcd,
    up_resultant,
)

__version__ = "0.1.0"
