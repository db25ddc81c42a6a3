"""Tools for the Bernstein property of the quasilinear family

    L_{gamma,eps}[u] = (2eps + (gamma+1)u_x^2 + (gamma-1)u_y^2) u_xx + 4 u_x u_y u_xy
                       + (2eps + (gamma-1)u_x^2 + (gamma+1)u_y^2) u_yy.
"""

from .params import OperatorParams, ScalingParams

__version__ = "0.1.0"

__all__ = ["OperatorParams", "ScalingParams", "__version__"]
