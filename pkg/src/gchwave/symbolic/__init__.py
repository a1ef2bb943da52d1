"""Exact-rational differential-polynomial algebra and the integrability checks."""
from .jet import (JetOrderError, JetPoly, OneForm, TwoForm, euler_op, exterior_d,
                  integrate_x, total_x, wedge)
from .verify import IDENTITIES, Verdict, run

__all__ = ["JetOrderError", "JetPoly", "OneForm", "TwoForm", "euler_op", "exterior_d",
           "integrate_x", "total_x", "wedge", "IDENTITIES", "Verdict", "run"]
