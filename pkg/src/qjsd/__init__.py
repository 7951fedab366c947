"""Quantum Jensen-Shannon divergence and the entanglement measure it induces."""

__version__ = "0.1.0"

from .annealing import (  # noqa: E402
    AnnealingSchedule,
    EntanglementResult,
    entanglement_bures,
    entanglement_js,
    minimize_distance,
    minimize_distance_batch,
)
from .divergences import bures_distance, fidelity, js_distance, qjsd, relative_entropy  # noqa: E402
from .entanglement import SeparableDecomposition, concurrence, is_ppt, materialize  # noqa: E402
from .families import (  # noqa: E402
    linear_entropy,
    maximally_mixed,
    mem_state,
    pdc_state,
    random_density,
    singlet,
    werner_state,
)
from .linalg import (  # noqa: E402
    DensityMatrix,
    hermitian_eigendecompose,
    partial_trace,
    partial_transpose,
    purity,
    tensor,
    von_neumann_entropy,
)
