import pytest

from inkmatch import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile (or load from disk cache) the jitted kernels once, so timed
    # tests measure steady-state throughput rather than JIT compilation
    kernels.warmup()
