"""Diagonal entropy and topological transitions in extended Kitaev chains.

A numpy/scipy library for the exact momentum-space solution of extended
Kitaev chains (variable-range pairing, optionally variable-range hopping),
their winding numbers and Majorana zero modes, diagonal-entropy scaling laws
in the Z and X measurement bases, global entanglement, and
susceptibility-based detection of topological phase transitions.  A small
exact-diagonalization oracle (N <= 12) ships with the library and anchors
every sign convention in the test suite.
"""

from .analysis import (CriticalPointReport, ScalingFit, SusceptibilityCurve,
                       block_coefficients, comparative_scan,
                       detect_critical_points, fit_block_law, fit_volume_law,
                       susceptibility, sweep_block_coefficients,
                       sweep_de_density, sweep_global_entanglement)
from .entropy import (DiagonalDistribution, EntropyReport,
                      block_diagonal_distribution, block_diagonal_entropy,
                      de_density, global_entanglement,
                      pure_state_diagonal_entropy)
from .errors import (DegenerateGroundStateError, GaplessSpecError,
                     IllConditionedError, InsufficientPointsError,
                     KitaevDEError, NonUniformGridError,
                     NormalizationFailureError, NumericalWindingWarning,
                     OddDimensionError, TolAmbiguousError, ZeroVectorError)
from .gaussian import (CorrelatorKernel, DenseCorrelations, correlator_kernel,
                       open_chain_correlations, pair_correlation, pfaffian,
                       sigma_x_correlator, sigma_z_correlator)
from .majorana import Side, ZeroMode, build_coupling, mode_count, zero_modes
from .model import (ModeData, ModelSpec, SpinCouplings, Variant, dispersion,
                    minimum_gap, momentum_grid, solve_chain, spin_couplings)
from .topology import (PhaseScan, Trajectory, WindingResult,
                       nu_change_locations, phase_boundary_scan, trajectory,
                       winding_number)

__version__ = "0.1.0"
