from .zeta import riemann_zeta, zeta_remainder_bound
from .quadrature import *
