"""Backend selection for the hot loops.

The compiled extension ``emlab._kernels`` is used when it imports; otherwise
(or when ``EMLAB_PURE_PYTHON=1``) the pure-Python module is used. Both expose
``component_labels``, ``cheb_t``, ``cheb_u`` and ``pair_stubs``.
"""

import os

from . import _kernels_py

compiled = None
if os.environ.get("EMLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else _kernels_py
BACKEND = "compiled" if compiled is not None else "python"

component_labels = _impl.component_labels
cheb_t = _impl.cheb_t
cheb_u = _impl.cheb_u
pair_stubs = _impl.pair_stubs
