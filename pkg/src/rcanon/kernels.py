"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module.  Set ``RCANON_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pykernels

_BACKENDS = {"python": _pykernels}
try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    _BACKENDS["cython"] = _ckernels

SYM8 = _pykernels.SYM8

BACKEND = "python" if os.environ.get("RCANON_PURE_PYTHON") or _ckernels is None else "cython"
_impl = _BACKENDS[BACKEND]
prenormal_codes = _impl.prenormal_codes
orient_min = _impl.orient_min


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def set_backend(name: str) -> None:
    global BACKEND, _impl, prenormal_codes, orient_min
    _impl = _BACKENDS[name]
    BACKEND = name
    prenormal_codes = _impl.prenormal_codes
    orient_min = _impl.orient_min


@contextmanager
def using(name: str):
    previous = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)
