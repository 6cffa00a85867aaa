import numpy as np
import pytest

from emlab import _kernels_py, kernels

BACKENDS = [pytest.param(_kernels_py, id="python")]
if kernels.compiled is not None:
    BACKENDS.append(pytest.param(kernels.compiled, id="compiled"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

