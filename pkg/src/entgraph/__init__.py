"""Entangled graphs and entanglement classes of 2-, 3- and 4-qubit pure states."""
__version__ = "0.1.0"

from .concurrence import (  # noqa: E402
    ConcurrenceReport,
    SchmidtPair,
    eof,
    four_concurrence,
    full_report,
    pair_concurrence,
    schmidt2,
    spin_flip,
    split_concurrence_1v3,
    split_concurrence_1vrest,
    split_concurrence_2v2,
    tri_concurrence,
    wootters_concurrence,
)
from .gsd import (  # noqa: E402
    GSD3Params,
    GSD4Params,
    Prediction,
    RepresentativeSpec,
    build_gsd3,
    build_gsd4,
    build_representative,
    predict,
    sample,
)
from .qcore import (  # noqa: E402
    DensityMatrix,
    PureState,
    apply_local_unitaries,
    density_of,
    hermitian_eigenvalues,
    hermitian_sqrt,
    normalize,
    partial_trace,
    purity,
)
from .taxonomy import (  # noqa: E402
    ClassLabel,
    ClassReport,
    EntangledGraph,
    GraphShape,
    build_graph,
    classify,
    factorization_structure,
    graph_shape,
)
