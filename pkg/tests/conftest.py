import random

import pytest

from rbks import harness, pairing

# All tests run at the smallest parameter level; the protocol code is
# level-agnostic and the arithmetic is identical, just faster.
TEST_LEVEL = 160

HOSPITAL = """\
root: director
director -> chief
chief -> doctor
chief -> nurse
"""

LAB = """\
root: head
head -> researcher
"""


@pytest.fixture(scope="session")
def ctx():
    global _SHARED_CTX
    if _SHARED_CTX is None:
        _SHARED_CTX = pairing.setup_context(TEST_LEVEL)
    return _SHARED_CTX


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


_SHARED_CTX = None


def make_world(seed: int = 1, orgs=None, ctx=None) -> harness.World:
    global _SHARED_CTX
    if orgs is None:
        orgs = {"hospital": HOSPITAL, "lab": LAB}
    if ctx is None:
        if _SHARED_CTX is None:
            _SHARED_CTX = pairing.setup_context(TEST_LEVEL)
        ctx = _SHARED_CTX
    return harness.World(TEST_LEVEL, orgs, random.Random(seed), ctx=ctx)


@pytest.fixture
def world(ctx):
    return make_world(ctx=ctx)
