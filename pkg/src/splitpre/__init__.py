"""Split preorders on finite ordinals and what they decide.

The package provides, in layers:

- `relations`: finite binary relations on one universe (closures, predicates,
  exhaustive preorder enumeration) and plain relation arrows between two
  ordinals;
- `arrows`: split preorders as arrows between finite ordinals, with the
  closure-based composition that glues a shared middle zone;
- `cones`: preorders represented by their sets of monotone functions into a
  finite chain;
- `representation`: the induced faithful passage from split preorders to
  relations between function-space codes, with mechanical law checks;
- `logic`: conjunctive/disjunctive derivations, their split-preorder
  diagrams, and the resulting proof-equivalence decision procedure;
- `cli`: the `splitpre` command plus the text and DOT formats.

Set SPLITPRE_BACKEND=numpy to run the bitset kernels on the pure-numpy
fallback instead of the default numba JIT path.
"""

from .arrows import (
    NodeTag,
    SplitPreorder,
    SplitRelation,
    TaggedNode,
    compose,
    converse,
    enumerate_split_preorders,
    equals,
    from_relation,
    identity,
    is_split_preorder,
    random_split_preorder,
    to_relation,
    to_split_equivalence,
    unsource,
    untarget,
)
from .cones import (
    Chain,
    FuncTable,
    cone_char,
    decode_func,
    encode_func,
    is_monotone,
    monotone_set,
    recovery_criterion,
    reflexivity_criterion,
    transitivity_criterion,
)
from .errors import (
    BoundExceededError,
    DerivationTypeError,
    EndpointMismatchError,
    FragmentError,
    ParseError,
    SizeMismatchError,
    SplitPreError,
)
from .logic import (
    Abort,
    Bang,
    Bot,
    Comp,
    Conj,
    Copair,
    Derivation,
    Disj,
    Formula,
    Fragment,
    Id,
    Inj1,
    Inj2,
    Pair,
    Proj1,
    Proj2,
    Top,
    Var,
    check_derivation_fragment,
    check_formula_fragment,
    diagram_of,
    parse_derivation,
    parse_formula,
    proof_equiv,
    random_derivation,
    random_derivation_into,
    random_derivation_pair,
    var_count,
)
from .relations import (
    FiniteRelation,
    RelArrow,
    compose_plain,
    enumerate_preorders,
    is_equivalence,
    is_preorder,
    is_reflexive,
    is_strictly_transitive,
    is_symmetric,
    is_transitive,
    random_relation,
    reflexive_closure,
    strictify,
    symmetric_closure,
    transitive_closure,
)
from .representation import (
    LawReport,
    glue_witness,
    in_repr,
    pair_glue,
    repr_arrow,
    verify_faithfulness,
    verify_functoriality,
)

__version__ = "0.1.0"
