"""Jaillet-Lu LP construction, solving and feasibility checks."""

from stochmatch.lp.jaillet_lu import (
    FeasibilityReport,
    JlLinearProgram,
    LpError,
    LpSolution,
    build_jl_lp,
    check_feasibility,
    solve_jl_lp,
)

__all__ = [
    "FeasibilityReport",
    "JlLinearProgram",
    "LpError",
    "LpSolution",
    "build_jl_lp",
    "check_feasibility",
    "solve_jl_lp",
]
