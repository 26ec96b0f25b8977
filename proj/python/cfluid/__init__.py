"""1+1d isentropic fluid: charges, brackets and the hidden o(3,2) structure."""

try:
    from ._cfluid import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree builds keep the module next to the package
    from _cfluid import *  # noqa: F401,F403
