"""Hot-kernel dispatch: the compiled extension when it was built, else pure Python."""

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _kernels_py}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
_impl = BACKENDS[BACKEND]


def use_backend(name: str) -> None:
    """Switch the active backend ('python' or 'cython')."""
    global BACKEND, _impl
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}")
    BACKEND = name
    _impl = BACKENDS[name]


def unit_pivot_eliminate(rows, ncols):
    return _impl.unit_pivot_eliminate(rows, ncols)


def search_sections(*args):
    return _impl.search_sections(*args)
