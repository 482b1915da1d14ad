"""Dual mixed volumes, dual quermassintegrals and mixed intersection bodies
of star bodies, computed by spherical product quadrature, with checkers for
the Minkowski, Aleksandrov-Fenchel and Brunn-Minkowski inequalities they
satisfy.
"""

from .errors import *  # noqa: F401,F403
from .quadrature import *  # noqa: F401,F403
from .starbody import *  # noqa: F401,F403
from .dualvol import *  # noqa: F401,F403
from .intersect import *  # noqa: F401,F403
from .inequalities import *  # noqa: F401,F403
from .families import FAMILIES, get_family, random_body, random_roles, dilate_roles  # noqa: F401
from .search import SearchResult, search_extremal  # noqa: F401

__version__ = "0.1.0"
