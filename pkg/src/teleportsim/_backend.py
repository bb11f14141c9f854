"""Kernel backend selection: compiled extension if present, numpy otherwise."""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels_cy  # type: ignore[attr-defined]
    _DEFAULT = "compiled"
except ImportError:
    _kernels_cy = None
    _DEFAULT = "python"

_IMPLS = {"python": _kernels_py, "compiled": _kernels_cy}
_current = _DEFAULT
_on_switch: list = []


def backend_name() -> str:
    return _current


def compiled_available() -> bool:
    return _kernels_cy is not None


def active():
    """The module providing superops/fbar_nodes."""
    return _IMPLS[_current]


def set_backend(name: str) -> None:
    """Force a backend ('python' or 'compiled'); clears dependent caches."""
    global _current
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}; choose 'python' or 'compiled'")
    if _IMPLS[name] is None:
        raise ValueError("compiled backend is not available in this installation")
    if name != _current:
        _current = name
        for callback in _on_switch:
            callback()


def register_on_switch(callback) -> None:
    _on_switch.append(callback)
