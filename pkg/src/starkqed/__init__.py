"""Entanglement of two three-level atoms crossing a cavity one after the other.

The cavity mediates a Stark-shifted, two-photon transition between the
outer levels of each atom.  This package evaluates the resulting two-atom
concurrence and entanglement of formation for vacuum, Fock and thermal
cavity fields, and cross-validates the effective two-level description
against the exact three-level dynamics.
"""

from ._version import __version__
from .config import ConfigError
from .effective import (
    EigenSystem,
    ModelParams,
    PassageAmplitudes,
    SectorMatrix,
    eigensystem,
    passage_amplitudes,
    sector_matrix,
)
from .entanglement import (
    EntanglementResult,
    binary_entropy,
    concurrence,
    concurrence_generic,
    eof,
    rho_tilde,
    wootters_spectrum,
    xstate_entanglement,
    xstate_spectrum,
)
from .micro import (
    AdiabaticityWarning,
    ComparisonReport,
    EffectiveParams,
    MicroBlock,
    MicroParams,
    TwoAtomSimulator,
    atom_field_hamiltonian,
    compare_effective_vs_full,
    effective_params,
    evolve_two_atoms_full,
    micro_block,
    project_to_qubits,
)
from .sweep import (
    PRESETS,
    CurveResult,
    FigurePreset,
    PresetSeries,
    SweepConfig,
    ValidationReport,
    ValidationRow,
    entanglement_curve,
    run_preset,
    run_sweep,
    run_validate,
)
from .twoatom import (
    ThermalField,
    TwoAtomDensityMatrix,
    joint_density_fock,
    joint_density_thermal,
    nbar_from_ratio,
    thermal_weights,
)

__all__ = [
    "__version__",
    "ConfigError",
    "ModelParams",
    "SectorMatrix",
    "EigenSystem",
    "PassageAmplitudes",
    "sector_matrix",
    "eigensystem",
    "passage_amplitudes",
    "TwoAtomDensityMatrix",
    "ThermalField",
    "joint_density_fock",
    "joint_density_thermal",
    "nbar_from_ratio",
    "thermal_weights",
    "EntanglementResult",
    "xstate_spectrum",
    "xstate_entanglement",
    "concurrence",
    "concurrence_generic",
    "wootters_spectrum",
    "rho_tilde",
    "binary_entropy",
    "eof",
    "AdiabaticityWarning",
    "MicroParams",
    "MicroBlock",
    "EffectiveParams",
    "ComparisonReport",
    "micro_block",
    "atom_field_hamiltonian",
    "TwoAtomSimulator",
    "evolve_two_atoms_full",
    "project_to_qubits",
    "effective_params",
    "compare_effective_vs_full",
    "SweepConfig",
    "FigurePreset",
    "PresetSeries",
    "PRESETS",
    "CurveResult",
    "ValidationReport",
    "ValidationRow",
    "entanglement_curve",
    "run_sweep",
    "run_preset",
    "run_validate",
]
