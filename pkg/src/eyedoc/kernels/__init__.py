"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the pure
backend is the fallback and the reference for equivalence tests. Set
EYEDOC_KERNELS=pure (or =native) before import to force a backend.
"""

from __future__ import annotations

import os

from eyedoc.kernels import pure

try:
    from eyedoc.kernels import _native as native
except ImportError:
    native = None

FIX_NONE = pure.FIX_NONE
FIX_START = pure.FIX_START
FIX_BREAK = pure.FIX_BREAK

_forced = os.environ.get("EYEDOC_KERNELS")
if _forced == "pure":
    active = pure
elif _forced == "native":
    if native is None:
        raise ImportError("EYEDOC_KERNELS=native but the extension is not built")
    active = native
else:
    active = native if native is not None else pure


def backend_name() -> str:
    return active.BACKEND


def available_backends() -> list[str]:
    names = [pure.BACKEND]
    if native is not None:
        names.append(native.BACKEND)
    return names


def get_backend(name: str):
    if name == "pure":
        return pure
    if name == "native":
        if native is None:
            raise ValueError("native kernels are not built")
        return native
    raise ValueError(f"unknown kernel backend {name!r}")
