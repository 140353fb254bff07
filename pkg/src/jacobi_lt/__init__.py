"""Jost solutions, perturbation determinants and discrete spectra of
non-self-adjoint whole-line Jacobi operators with finitely supported
perturbations of the discrete Laplacian."""
from .determinant import (
    audit_bounds,
    determinant_oracle,
    determinant_u,
    polar_grid,
    wronskian,
)
from .inequalities import (
    enclosure_radii,
    family_sweep,
    inequality_report,
    kappa,
    lt_sums,
)
from .jost import (
    reconstruct_u,
    recurrence_residual,
    solve_volterra_left,
    solve_volterra_right,
    transition_factors,
)
from .kernels import green_l, green_r, scaled_kernel, transition_kernel
from .operator import (
    EdgeProximityError,
    JacobiOperator,
    PerturbationGauge,
    SpectralParameter,
    compute_gauge,
    dist_to_band,
    zhukovsky,
    zhukovsky_inverse,
)
from .spectrum import (
    SpectralPoint,
    ZeroFinderConfig,
    finite_section_eigenvalues,
    find_zeros,
    similarity_check,
)

__version__ = "0.1.0"
