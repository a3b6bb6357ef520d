"""cartanq: exact symbolic engine for the q-deformed Cartan calculus on
the quantum SU(2), with a CLI and a full verification suite."""

from .qfield import (FieldElem, LaurentPoly, FMatrix, DivisionByZero,
                     PoleAtEvaluationPoint, parse_scalar)
from .hopfcore import (AlgebraElem, TensorElem, AlgebraMismatch, multiply,
                       coproduct, counit, antipode, star, pair, act_left,
                       act_right, verify_hopf_axioms)
from .calculus4d import (CalculusTables, TableMismatch, TExtractionAmbiguous,
                         build_tables, extract_t)
from .exterior import ExteriorCalculus, Form, CoactedForm
from .cartan import CartanCalculus, CartanElem, CartanTensor, LeftOp, RightOp

__all__ = [
    "FieldElem", "LaurentPoly", "FMatrix", "DivisionByZero",
    "PoleAtEvaluationPoint", "parse_scalar",
    "AlgebraElem", "TensorElem", "AlgebraMismatch", "multiply", "coproduct",
    "counit", "antipode", "star", "pair", "act_left", "act_right",
    "verify_hopf_axioms",
    "CalculusTables", "TableMismatch", "TExtractionAmbiguous", "build_tables",
    "extract_t",
    "ExteriorCalculus", "Form", "CoactedForm",
    "CartanCalculus", "CartanElem", "CartanTensor", "LeftOp", "RightOp",
]

__version__ = "0.1.0"
