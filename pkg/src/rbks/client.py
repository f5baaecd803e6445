"""User client: trapdoor generation and final decryption.

The blinding exponent v never leaves the client; it lives in the
SearchSession and is needed again to strip the cloud's partial
decryption down to the session element K.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from . import wire
from .authority import UserKeys
from .errors import EmptyKeywords, EmptyRoleSet, InvalidEncoding
from .hierarchy import RoleId
from .owner import keyword_product, unwrap_payload
from .pairing import BilinearContext, G1Element, GTElement
from .rolemanager import RoleKeyPair


@dataclass
class Trapdoor:
    org: str  # organization whose archives are being queried
    user_id: str
    ts: int  # freshness timestamp, seconds
    tr1: int  # (Priv + ts) * v / H2(priv_org)
    tr2: G1Element  # priv_org^v
    tr3: G1Element  # g^(v / Priv)
    tr4: G1Element  # g^v
    tr_r1: Dict[RoleId, G1Element]  # role -> RK1^(v/W)
    tr_r2: Dict[RoleId, G1Element]  # role -> RK2^(v/W)

    @property
    def roles(self) -> Tuple[RoleId, ...]:
        return tuple(sorted(self.tr_r1))


@dataclass
class SearchSession:
    """Client-side residue of TrapGen; v is never sent to the cloud."""

    v: int
    org: str


@dataclass
class PartialCiphertext:
    """What the cloud returns per matching archive."""

    payload: bytes
    c1: GTElement
    v10: GTElement  # e(g,g)^(y * Priv * v * (sum d_r + sum d'_r))


def trap_gen(
    ctx: BilinearContext,
    user: UserKeys,
    role_keys: Sequence[RoleKeyPair],
    keywords: Sequence[str],
    ts: int,
    rng=None,
) -> Tuple[Trapdoor, SearchSession]:
    if not role_keys:
        raise EmptyRoleSet("need at least one role key")
    if not keywords:
        raise EmptyKeywords("need at least one keyword")
    q = int(ctx.q)
    w = keyword_product(ctx, keywords)
    v = ctx.random_scalar(rng)
    v_over_w = v * ctx.inv_scalar(w) % q
    tr1 = int((user.priv_global + ts) * v % q * ctx.inv_scalar(ctx.hash_h2(user.priv_org)) % q)
    trapdoor = Trapdoor(
        org=user.org,
        user_id=user.user_id,
        ts=ts,
        tr1=tr1,
        tr2=user.priv_org ** v,
        tr3=ctx.g ** (v * ctx.inv_scalar(user.priv_global) % q),
        tr4=ctx.g ** v,
        tr_r1={k.role: k.rk1 ** v_over_w for k in role_keys},
        tr_r2={k.role: k.rk2 ** v_over_w for k in role_keys},
    )
    return trapdoor, SearchSession(v=v, org=user.org)


def full_dec(
    ctx: BilinearContext, session: SearchSession, user: UserKeys, partial: PartialCiphertext
) -> bytes:
    """Strip the blinding from V10 and open the AEAD payload."""
    q = int(ctx.q)
    K = partial.c1 / partial.v10 ** ctx.inv_scalar(user.priv_global * session.v % q)
    return unwrap_payload(K, partial.payload)


def trapdoor_to_bytes(t: Trapdoor) -> bytes:
    return wire.frame(
        "trapdoor",
        {
            "org": t.org,
            "user_id": t.user_id,
            "ts": t.ts,
            "tr1": t.tr1,
            "tr2": wire.b64e(t.tr2.to_bytes()),
            "tr3": wire.b64e(t.tr3.to_bytes()),
            "tr4": wire.b64e(t.tr4.to_bytes()),
            "tr_r1": {str(r): wire.b64e(e.to_bytes()) for r, e in sorted(t.tr_r1.items())},
            "tr_r2": {str(r): wire.b64e(e.to_bytes()) for r, e in sorted(t.tr_r2.items())},
        },
    )


def trapdoor_from_bytes(ctx: BilinearContext, blob: bytes) -> Trapdoor:
    doc = wire.unframe("trapdoor", blob)
    try:
        def parse_role(text: str) -> RoleId:
            org, _, name = text.partition("/")
            return RoleId(org, name)

        if set(doc["tr_r1"]) != set(doc["tr_r2"]):
            raise InvalidEncoding("role maps disagree")
        return Trapdoor(
            org=doc["org"],
            user_id=doc["user_id"],
            ts=int(doc["ts"]),
            tr1=int(doc["tr1"]) % int(ctx.q),
            tr2=ctx.g1_from_bytes(wire.b64d(doc["tr2"])),
            tr3=ctx.g1_from_bytes(wire.b64d(doc["tr3"])),
            tr4=ctx.g1_from_bytes(wire.b64d(doc["tr4"])),
            tr_r1={parse_role(k): ctx.g1_from_bytes(wire.b64d(s)) for k, s in doc["tr_r1"].items()},
            tr_r2={parse_role(k): ctx.g1_from_bytes(wire.b64d(s)) for k, s in doc["tr_r2"].items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidEncoding(f"malformed trapdoor blob: {exc}") from exc
