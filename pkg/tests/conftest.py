import itertools

import pytest

from diracpot.model import ProblemParams

LAMBDAS = (0.1, 0.2, 0.5)
MU_VALUES = (-0.7, -0.3, 0.3, 0.7)
KAPPAS = (-2, -1, 1, 2, 3)


def sweep_params():
    return [ProblemParams(1.0, lam, mu * lam, kappa)
            for lam, mu, kappa in itertools.product(LAMBDAS, MU_VALUES, KAPPAS)]


@pytest.fixture(params=sweep_params(), ids=lambda p: f"lam{p.lam}-mu{p.mu:+.1f}-k{p.kappa}")
def sweep_point(request):
    return request.param
