"""Pick the compiled Monte-Carlo kernel when available.

Set ``LSTAT_EDGEWORTH_BACKEND=python`` to force the numpy fallback.
"""

import os

from . import _fallback

BACKEND = "python"
lstat_replicates = _fallback.lstat_replicates

if os.environ.get("LSTAT_EDGEWORTH_BACKEND", "").lower() != "python":
    try:
        from . import _core
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        lstat_replicates = _core.lstat_replicates


def get_kernel(name=None):
    """Return the replicate kernel for ``name`` (``cython``/``python``) or the default."""
    if name is None:
        return lstat_replicates
    if name == "python":
        return _fallback.lstat_replicates
    if name == "cython":
        from . import _core

        return _core.lstat_replicates
    raise ValueError(f"unknown backend {name!r}")
