"""Numerical kernels: compiled extension when available, pure Python otherwise.

The environment variable DIPOLE_LANDAU_BACKEND forces a choice:
``python`` selects the reference implementation, ``compiled`` requires the
extension (ImportError if it is missing).  Anything else (or unset) picks
the extension when importable and falls back silently.
"""

import os

from . import reference

_requested = os.environ.get("DIPOLE_LANDAU_BACKEND", "auto").strip().lower()

if _requested == "python":
    _impl = reference
elif _requested == "compiled":
    from . import _compiled as _impl  # type: ignore[no-redef]
elif _requested in ("", "auto"):
    try:
        from . import _compiled as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = reference
else:
    raise ImportError(
        f"unknown DIPOLE_LANDAU_BACKEND={_requested!r}; expected 'python', 'compiled' or 'auto'"
    )

BACKEND = "python" if _impl is reference else "compiled"

coupling_combo = _impl.coupling_combo
heun_coefficients = _impl.heun_coefficients
truncated_coefficients = _impl.truncated_coefficients
truncation_tail = _impl.truncation_tail
residual_scan = _impl.residual_scan
eval_poly = _impl.eval_poly
eval_poly_compensated = _impl.eval_poly_compensated
eval_series_free = _impl.eval_series_free
