"""Right-angled Artin groups, their automorphisms and the split-map complexes
used to study homological stability of Aut(A x B^n)."""
from .errors import DomainError, InternalConsistencyError, ResourceError
from .graphs import Graph, canonical_form, graph_automorphisms, graph_isomorphic, join_decompose
from .raag import (
    Raag,
    aut_structure,
    cancel,
    classify_generator,
    direct_product,
    enumerate_generators,
    raag_isomorphic,
    raag_prime_decomposition,
)
from .simplicial import (
    SemiSimplicialSet,
    SimplicialComplex,
    build_from_labeling,
    homological_connectivity,
    homology,
    is_cohen_macaulay,
    link_of,
    verify_complete_join,
)
from .words import Automorphism, Word

__version__ = "0.1.0"
