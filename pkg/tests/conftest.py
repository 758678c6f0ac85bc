from pathlib import Path

import pytest

from gpsconv.problem import load_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

# fixtures expected to certify, by family
CONVERGENT = ["euler_integer", "euler_rational", "euler_gaussian", "two_generators",
              "riccati", "second_order", "resonant_bump"]


def problem_path(name):
    return PROBLEMS / f"{name}.json"


def problem(name):
    return load_problem(problem_path(name))


@pytest.fixture(params=CONVERGENT)
def convergent(request):
    return request.param, problem(request.param)
