"""Entanglement generated by pairwise gravitational phases between split masses.

Submodules:
    qstate    dense state vectors, partial transpose/trace, Jacobi eigenvalues
    gravity   setup parameters, branch phases, final-state construction
    classify  three-qubit SLOCC classification and witnesses
    ghzlib    recursive GHZ-type families and rank-2 certificates
    measures  geometric measure and negativity, tau sweeps
    cli       command-line front end
"""
from .gravity import SetupParams, Geometry, Corrections, build_final_state, branch_phase, phase_table
from .qstate import PureState, DensityMatrix
from .classify import Verdict, classify_three_qubit
from .measures import OptimizerOpts, MeasureResult, gm_general, gm_symmetric, negativity_tripartite

__version__ = "0.1.0"

__all__ = [
    "SetupParams", "Geometry", "Corrections", "build_final_state", "branch_phase", "phase_table",
    "PureState", "DensityMatrix", "Verdict", "classify_three_qubit",
    "OptimizerOpts", "MeasureResult", "gm_general", "gm_symmetric", "negativity_tripartite",
]
