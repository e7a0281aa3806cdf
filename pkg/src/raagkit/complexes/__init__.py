"""Desk-scale builders and verifiers for split-map complexes."""
from .colors import (
    ColoredVertex,
    FactorComplement,
    InSample,
    SplitAmbient,
    build_In_sample,
    canonical_complement,
    check_simplex_In,
    color_of,
    is_simplex_In,
    random_vertex,
)
from .intersection import (
    IntersectionResult,
    SISimplex,
    ZComplement,
    complement_intersection,
    corrupt,
    direct_factor_lemma,
    random_lemma_instance,
    random_si_simplex,
    verify_Sn_equals_SIn,
)
from .unimodular import (
    RetractionInstance,
    build_unimodular_complex,
    delete_last,
    kappa,
    kappa_ok,
    maazen_filtration,
    maazen_retraction,
    random_unimodular,
    sample_retraction_instance,
    verify_retraction,
)
from .wn import WnSample, build_Wn_sample, wn_report
