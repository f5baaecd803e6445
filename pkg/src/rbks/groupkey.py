"""Two-round Burmester-Desmedt group key agreement among the authorities.

Participants sit in a cycle.  Round 1 broadcasts x_i = g^{a_i}; round 2
broadcasts X_i = (x_{i+1} / x_{i-1})^{a_i}.  Everyone then reconstructs
the shared value g^y with y = a_1*a_2 + a_2*a_3 + ... + a_m*a_1.
Broadcast transport is an in-process message board owned by the caller.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .errors import MismatchedRoundData
from .pairing import BilinearContext, G1Element


class BDParticipant:
    """One authority's view of the protocol: index in the cycle plus its secret."""

    def __init__(self, ctx: BilinearContext, index: int, size: int, secret: Optional[int] = None, rng=None):
        if size < 2:
            raise ValueError("the cycle needs at least two participants")
        if not 0 <= index < size:
            raise ValueError("index outside the cycle")
        self.ctx = ctx
        self.index = index
        self.size = size
        self.secret = secret if secret is not None else ctx.random_scalar(rng)

    def round1(self) -> G1Element:
        """Broadcast x_i = g^{a_i}."""
        return self.ctx.g ** self.secret

    def round2(self, x_prev: G1Element, x_next: G1Element) -> G1Element:
        """Broadcast X_i = (x_{i+1} / x_{i-1})^{a_i}."""
        return (x_next / x_prev) ** self.secret

    def derive(self, all_round1: Sequence[G1Element], all_round2: Sequence[G1Element]) -> G1Element:
        """Reconstruct g^y from both rounds' broadcasts.

        Uses the standard reconstruction
        x_{i-1}^{m*a_i} * X_i^{m-1} * X_{i+1}^{m-2} * ... * X_{i+m-2}.
        """
        m = self.size
        if len(all_round1) != m or len(all_round2) != m:
            raise MismatchedRoundData("wrong number of broadcasts")
        i = self.index
        key = all_round1[(i - 1) % m] ** (m * self.secret)
        for j in range(m - 1):
            key = key * (all_round2[(i + j) % m] ** (m - 1 - j))
        return key


def run_agreement(ctx: BilinearContext, size: int, rng=None) -> tuple:
    """Run both rounds in-process and return (shared g^y, participants).

    Raises MismatchedRoundData if the participants disagree, which only
    happens when a broadcast was tampered with.
    """
    parts = [BDParticipant(ctx, i, size, rng=rng) for i in range(size)]
    return derive_all(parts), parts


def derive_all(parts: List[BDParticipant]) -> G1Element:
    m = len(parts)
    r1 = [p.round1() for p in parts]
    r2 = [p.round2(r1[(p.index - 1) % m], r1[(p.index + 1) % m]) for p in parts]
    keys = [p.derive(r1, r2) for p in parts]
    if any(k != keys[0] for k in keys[1:]):
        raise MismatchedRoundData("participants derived unequal group secrets")
    return keys[0]
