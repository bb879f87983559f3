"""Multi-robot coordination toolkit.

Anonymous multi-robot motion planning with goal swapping and priority
inheritance, flow-matching samplers with pluggable velocity fields, a
rule-based manipulation policy, and a quasi-static 2D pushing simulator.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from . import _core as _impl
except ImportError:  # running against a CMake build tree
    from _core import *  # noqa: F401,F403
    import _core as _impl

__version__ = _impl.__version__
