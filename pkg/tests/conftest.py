import random

import pytest

from cat0sigma import spaces as sp
from cat0sigma.trees import CayleyTree, HnnTree, RegularTree


def all_spaces():
    return [
        sp.EuclideanSpace(2),
        sp.EuclideanSpace(3),
        sp.HyperbolicPlane(),
        sp.TreeSpace(CayleyTree(2)),
        sp.TreeSpace(RegularTree(3)),
        sp.TreeSpace(HnnTree(2)),
        sp.TreeSpace(HnnTree(3)),
    ]


def space_id(m):
    data = m.to_json()
    if data["space"] != "tree":
        return data["space"]
    desc = data["descriptor"]
    detail = desc.get("degree") or desc.get("rank") or desc.get("index")
    return f"tree-{desc['type']}{detail}"


@pytest.fixture
def rng():
    return random.Random(20240)


@pytest.fixture(params=all_spaces(), ids=space_id)
def space(request):
    return request.param
