"""Select the compiled kernels when available, the pure-Python ones otherwise.

Set ``PKTROUTE_PURE_PYTHON=1`` before import to force the fallback.
``BACKEND`` names the active implementation; ``backend(name)`` returns a
specific one so tests and benchmarks can compare the two.
"""
import os

from . import _pykernels

try:
    if os.environ.get("PKTROUTE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernels as _active
    BACKEND = "cython"
except ImportError:
    _active = _pykernels
    BACKEND = "python"

widest_path = _active.widest_path
kruskal_forest = _active.kruskal_forest
levelwise_batch = _active.levelwise_batch
replay = _active.replay
replay_generic = _pykernels.replay_generic


def available() -> list:
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
        names.append("cython")
    except ImportError:
        pass
    return names


def backend(name: str):
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
