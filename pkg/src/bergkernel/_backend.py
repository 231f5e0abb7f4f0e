"""Backend selection: compiled Cython core with a pure-numpy fallback.

The extension is optional; if it failed to build, the numpy twin is used
transparently. `BERGKERNEL_BACKEND=python|compiled` forces a choice
(`compiled` raises if the extension is missing). `set_backend` exists for
benchmarks and tests; library code reaches the active implementation through
`impl` attribute access, so a switch takes effect immediately.
"""

from __future__ import annotations

import os

from . import _purepy

try:
    from . import _core
except ImportError:
    _core = None

_forced = os.environ.get("BERGKERNEL_BACKEND")
if _forced == "python":
    impl = _purepy
elif _forced == "compiled":
    if _core is None:
        raise ImportError(
            "BERGKERNEL_BACKEND=compiled but the bergkernel._core extension is not built"
        )
    impl = _core
else:
    impl = _core if _core is not None else _purepy


def backend_name() -> str:
    return "compiled" if impl is _core and _core is not None else "python"


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _core is not None else ("python",)


def set_backend(name: str) -> None:
    global impl
    if name == "python":
        impl = _purepy
    elif name == "compiled":
        if _core is None:
            raise ValueError("compiled backend is not available")
        impl = _core
    else:
        raise ValueError(f"unknown backend {name!r}")
