"""Kernel selection: compiled contraction kernel when available, pure fallback.

Set JACOBIWEIGHTS_KERNEL=pure (or =cython) to force a choice; forcing cython
raises if the extension was not built.
"""

import os

from . import contract_py as _pure

_forced = os.environ.get("JACOBIWEIGHTS_KERNEL", "").strip().lower()

_cython = None
if _forced not in ("pure", "py", "python"):
    try:
        from . import _contract_cy as _cython
    except ImportError:
        _cython = None

if _forced in ("cython", "cy", "compiled"):
    if _cython is None:
        raise ImportError(
            "JACOBIWEIGHTS_KERNEL=%s but the compiled kernel is not built" % _forced
        )
    _impl = _cython
elif _forced in ("pure", "py", "python") or _cython is None:
    _impl = _pure
else:
    _impl = _cython

contract = _impl.contract
self_trace = _impl.self_trace
permute_axes = _impl.permute_axes
kernel_name = _impl.NAME


def available_kernels():
    """Name -> module for every kernel importable in this environment."""
    out = {"pure": _pure}
    if _cython is not None:
        out["cython"] = _cython
    else:
        try:
            from . import _contract_cy as cy
            out["cython"] = cy
        except ImportError:
            pass
    return out
