"""Role managers: turn a user's secret US into per-role search keys.

The manager of role r holds that role's secret exponent t_r and role
secret RS_r and hands enrolled users the pair

    RK1 = US^{1/RS_r}      RK2 = US^{1/t_r}

After a role-level revocation the manager pushes multiplicative updates
so held keys keep matching the re-keyed ciphertext components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List

from .authority import RevocationToken, RoleParams, UserKeys
from .errors import UnknownRole
from .hierarchy import RoleId
from .pairing import BilinearContext, G1Element


@dataclass
class RoleKeyPair:
    role: RoleId
    rk1: G1Element  # US^{1/RS}
    rk2: G1Element  # US^{1/t}


def user_role_key_gen(
    ctx: BilinearContext, params: RoleParams, role: RoleId, user: UserKeys
) -> RoleKeyPair:
    if role not in params.records:
        raise UnknownRole(f"{role} has no assignable record in {params.org}")
    rec = params.records[role]
    rk1 = user.user_secret ** ctx.inv_scalar(rec.rs)
    rk2 = user.user_secret ** ctx.inv_scalar(rec.t)
    return RoleKeyPair(role=role, rk1=rk1, rk2=rk2)


def update_role_keys(
    ctx: BilinearContext,
    params: RoleParams,
    keys: Iterable[RoleKeyPair],
    token: RevocationToken,
) -> List[RoleKeyPair]:
    """Apply a revocation token to a user's held role keys.

    RK1 of any key whose role has the revoked role among its ancestors
    absorbs t/t' (its RS gained t'/t).  RK2 only depends on the role's
    own t, so just the revoked role's RK2 changes.
    """
    h = params.hierarchy
    updated: List[RoleKeyPair] = []
    for key in keys:
        rk1, rk2 = key.rk1, key.rk2
        if token.role in h.ancestor_set(key.role):
            rk1 = rk1 ** token.ratio_backward
        if key.role == token.role:
            rk2 = rk2 ** token.ratio_backward
        updated.append(RoleKeyPair(role=key.role, rk1=rk1, rk2=rk2))
    return updated
