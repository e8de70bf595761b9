"""mcvlie: exact middle convolution for logarithmic Pfaffian systems on
hyperplane-arrangement complements.

Everything is computed over Q with exact arithmetic: dense rational linear
algebra and canonical subspaces (exactcore), arrangement combinatorics with
codimension-2 flats and Y-closures (arrangement), holonomy presentations and
integrability of residue tuples (holonomy), free Lie algebras on Lyndon
bases with the braid-style derivation action (freelie), the convolution and
middle convolution constructions (convolution), and the structural
predicates around them (analysis).  The cli module exposes all of it as the
`mcvlie` command.
"""

from .analysis import (
    CompositionReport,
    IsoResult,
    StarReport,
    are_isomorphic,
    check_star_conditions,
    composition_harness,
    is_irreducible,
    rh_hypotheses,
)
from .arrangement import (
    Arrangement,
    Flat2,
    Hyperplane,
    Line,
    braid_arrangement,
    canonicalize,
    codim2_flats,
    is_good_line,
    is_y_closed,
    split_parallel,
    y_closure,
)
from .convolution import (
    ConvolvedSystem,
    ConvolvedTuple,
    MiddleConvolvedSystem,
    dr_convolution,
    dr_k_l,
    dr_middle_convolution,
    haraoka_convolution,
    haraoka_middle_convolution,
    phi_compose,
    phi_zero,
)
from .errors import InputError, InternalInvariantError, MCVError, PreconditionError
from .exactcore import (
    ExactMatrix,
    Poly,
    PolyMatrix,
    Subspace,
    charpoly,
    induced_on_quotient,
    integer_spectrum_hits,
    kernel,
    pencil_full_rank,
    quotient_map,
    subspace_meet,
    subspace_sum,
)
from .freelie import (
    Derivation,
    DKWord,
    LieElement,
    adjoint_witness,
    apply_derivation,
    bracket,
    lyndon_basis,
    theta,
    verify_braid_relations,
)
from .holonomy import (
    PfaffianSystem,
    Presentation,
    check_integrability,
    presentation,
    residue_sum,
    zero_extend,
)

__version__ = "0.1.0"
