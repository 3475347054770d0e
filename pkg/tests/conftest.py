import pytest

from contextprob import _trials_py

try:
    from contextprob import _trials

    KERNELS = [("python", _trials_py), ("cython", _trials)]
except ImportError:
    KERNELS = [("python", _trials_py)]


@pytest.fixture(params=KERNELS, ids=[name for name, _ in KERNELS])
def kernel(request):
    return request.param[1]


def pytest_report_header(config):
    names = ", ".join(name for name, _ in KERNELS)
    return f"trial kernels available: {names}"
