"""Simulation, certificates and exact integrability checks for the equation

    m_t + (u + Gamma) m_x + 2 u_x m = d/dx h(u),   m = u - u_xx,
    h(u) = (alpha + Gamma) u + beta/3 u^3 + gamma/4 u^4,

on a periodic box standing in for the line.
"""
__version__ = "0.1.0"

from .certificates import (BreakingCertificate, GlobalCertificate, breaking_certificate,
                           global_certificate)
from .dynamics import Controls, StopReason, integrate
from .model import (FieldState, GridSpec, ModelParams, make_grid, norms, rotation_constants,
                    rotation_preset)
from .monitors import Classification, PatternKind, summarize

__all__ = [
    "BreakingCertificate", "GlobalCertificate", "breaking_certificate", "global_certificate",
    "Controls", "StopReason", "integrate",
    "FieldState", "GridSpec", "ModelParams", "make_grid", "norms", "rotation_constants",
    "rotation_preset",
    "Classification", "PatternKind", "summarize",
]
