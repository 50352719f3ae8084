"""latcalc: exact lattice-ordered algebra toolkit.

Lattice-polynomial expressions over exact rationals, concrete f-algebra
models, polynomial-growth certificates, certified box sup norms, order-ideal
norms, homogeneous parts and a function calculus with structure
reconstruction, plus a deterministic property-suite CLI.
"""

from .expr import (
    Add, Const, Expr, ExprSyntaxError, Join, Meet, Mul, Neg, Scale, Var,
    abs_, const_fold, eval_point, format_expr, is_lattice_linear, max_index,
    parse, pos, semantic_eq, substitute,
)
from .models import (
    AlgebraModel, LocallyConstantModel, PointwiseModel, PolySubalgebraDemo,
    TwistedR2, axiom_suite, is_f_subalgebra, twisted_mul,
)
from .growth import (
    GrowthCert, Interval, box_from_bounds, box_sup_bound, dm_norm_lower,
    growth_certificate, ideal_degree_upper,
)
from .homog import Linearization, h_part, linearize, numeric_h_check
from .ideals import LatticeHom, f_norm, filtration_check, hom_contractivity_check, ia_degree
from .calculus import (
    CalculusInstance, apply_calculus, birkhoff_check, birkhoff_grid_search,
    compo_check, derive_order, derive_product, disjointness_mult_check,
    raw_from_pointwise, reconstruction_suite,
)

__version__ = "0.1.0"
