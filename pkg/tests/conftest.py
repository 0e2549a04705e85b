import contextlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acdlab import _kernels  # noqa: E402
from acdlab.corpus import bundled_manifest, build_family  # noqa: E402
from acdlab.harness import load  # noqa: E402

KERNEL_NAMES = tuple(_kernels.NUMPY_KERNELS)


@contextlib.contextmanager
def kernel_backend(name: str):
    """Temporarily route every kernel call through one flavour."""
    kernels = _kernels.NUMPY_KERNELS if name == "numpy" else _kernels.load_numba_kernels()
    if kernels is None:
        pytest.skip("numba not importable")
    saved = {k: getattr(_kernels, k) for k in KERNEL_NAMES}
    try:
        for k in KERNEL_NAMES:
            setattr(_kernels, k, kernels[k])
        yield
    finally:
        for k, v in saved.items():
            setattr(_kernels, k, v)


@pytest.fixture(scope="session")
def corpus():
    """The bundled corpus, loaded once; tables are cached on the groups."""
    return load(bundled_manifest())


@pytest.fixture(scope="session")
def fam():
    cache = {}

    def get(name, *params):
        key = (name, params)
        if key not in cache:
            cache[key] = build_family(name, list(params), label=f"{name}{list(params)}")
        return cache[key]

    return get
