"""Backend selection for the hot inner loops.

At import time this module picks the compiled ``_kernels`` extension when it
is available, falling back to the NumPy/pure-Python implementations in
``_kernels_py``.  Setting the environment variable ``LARSPATH_NO_EXTENSION``
(to any nonempty value) before import forces the fallback.  Both backends
produce identical results; the extension is purely a speed optimization.
"""

import os

from . import _kernels_py

_impl = _kernels_py
if not os.environ.get("LARSPATH_NO_EXTENSION"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

HAVE_EXTENSION = _impl is not _kernels_py

cd_sweeps = _impl.cd_sweeps
stagewise_chunk = _impl.stagewise_chunk
givens_downdate = _impl.givens_downdate


def backend_name():
    """Return ``"compiled"`` or ``"python"`` for the active backend."""
    return "compiled" if HAVE_EXTENSION else "python"
