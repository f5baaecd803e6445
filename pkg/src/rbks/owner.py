"""Data owner: hybrid encryption of a payload under a role policy with
embedded searchable keywords.

The group-level ciphertext hides a random session element K in GT; the
payload itself is AES-GCM encrypted under a key derived from K.  The
keyword conjunction enters only through the aggregate scalar
W = prod_i H1(w_i) mod q, so the archive never reveals the keywords or
even how they split into individual terms.
"""

from __future__ import annotations

import hashlib
import secrets
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from . import wire
from .authority import PublicParams
from .errors import AuthenticationFailure, EmptyKeywords, EmptyPolicy, InvalidEncoding, MissingCloudKey, MissingRolePK
from .hierarchy import RoleId
from .pairing import BilinearContext, G1Element, GTElement

_NONCE_LEN = 12


@dataclass(frozen=True)
class AccessPolicy:
    """Role set Gamma plus the organization that owns the archive."""

    roles: FrozenSet[RoleId]
    owner_org: str

    def __post_init__(self):
        if not self.roles:
            raise EmptyPolicy("policy role set is empty")
        if self.owner_org not in self.orgs:
            raise EmptyPolicy(f"owner org {self.owner_org} contributes no policy role")

    @property
    def orgs(self) -> Tuple[str, ...]:
        """Gamma_Phi: the organizations the policy roles belong to, sorted."""
        return tuple(sorted({r.org for r in self.roles}))


@dataclass
class EncryptionRandomness:
    """Per-role exponents (d_r, d'_r); injectable so tests can replay them."""

    per_role: Dict[RoleId, Tuple[int, int]]

    @classmethod
    def sample(cls, ctx: BilinearContext, roles: Iterable[RoleId], rng=None) -> "EncryptionRandomness":
        return cls({r: (ctx.random_scalar(rng), ctx.random_scalar(rng)) for r in sorted(roles)})


@dataclass
class Ciphertext:
    policy: AccessPolicy
    keyword_count: int
    payload: bytes  # nonce || AES-GCM ciphertext of the message
    c1: GTElement  # K * Y^(sum d_r + sum d'_r)
    c2: G1Element  # h1_owner^(sum d'_r)
    c3: G1Element  # pub2_owner^(sum d'_r)
    c4: Dict[str, G1Element]  # org k -> pub1_k^(sum of d_r over k's roles)
    c4p: Dict[str, G1Element]  # org k -> pub1_k^(sum of d'_r over k's roles)
    cr: Dict[RoleId, G1Element]  # role -> PK_r^(d_r * W)
    crp: Dict[RoleId, G1Element]  # role -> PK_r^(d'_r * W)


def keyword_product(ctx: BilinearContext, keywords: Sequence[str]) -> int:
    """W = prod H1(w_i) mod q over the (deduplicated) keyword set."""
    if not keywords:
        raise EmptyKeywords("need at least one keyword")
    q = int(ctx.q)
    w = 1
    for kw in sorted(set(keywords)):
        w = w * ctx.hash_h1(kw.encode("utf-8")) % q
    return w


def derive_payload_key(K: GTElement) -> bytes:
    return hashlib.sha256(b"rbks:payload-key:" + K.to_bytes()).digest()


def wrap_payload(K: GTElement, message: bytes) -> bytes:
    nonce = secrets.token_bytes(_NONCE_LEN)
    return nonce + AESGCM(derive_payload_key(K)).encrypt(nonce, message, b"")


def unwrap_payload(K: GTElement, payload: bytes) -> bytes:
    if len(payload) < _NONCE_LEN + 16:
        raise AuthenticationFailure("payload too short")
    try:
        return AESGCM(derive_payload_key(K)).decrypt(payload[:_NONCE_LEN], payload[_NONCE_LEN:], b"")
    except InvalidTag as exc:
        raise AuthenticationFailure("payload failed to authenticate") from exc


def encrypt(
    pp: PublicParams,
    cloud_pubs: Dict[str, Tuple[G1Element, G1Element]],
    role_pks: Dict[RoleId, G1Element],
    message: bytes,
    keywords: Sequence[str],
    policy: AccessPolicy,
    rng=None,
    randomness: Optional[EncryptionRandomness] = None,
) -> Ciphertext:
    ctx = pp.ctx
    q = int(ctx.q)
    for role in policy.roles:
        if role not in role_pks:
            raise MissingRolePK(str(role))
    for org in policy.orgs:
        if org not in cloud_pubs:
            raise MissingCloudKey(org)
    if policy.owner_org not in pp.h1:
        raise MissingCloudKey(policy.owner_org)

    w = keyword_product(ctx, keywords)
    if randomness is None:
        randomness = EncryptionRandomness.sample(ctx, policy.roles, rng)
    d = {r: randomness.per_role[r][0] for r in policy.roles}
    dp = {r: randomness.per_role[r][1] for r in policy.roles}
    d_by_org = {org: 0 for org in policy.orgs}
    dp_by_org = {org: 0 for org in policy.orgs}
    for r in policy.roles:
        d_by_org[r.org] = (d_by_org[r.org] + d[r]) % q
        dp_by_org[r.org] = (dp_by_org[r.org] + dp[r]) % q
    d_total = sum(d.values()) % q
    dp_total = sum(dp.values()) % q

    with ctx.paused_counters():
        K = ctx.random_gt(rng)
    payload = wrap_payload(K, message)

    c1 = K * pp.Y ** ((d_total + dp_total) % q)
    c2 = pp.h1[policy.owner_org] ** dp_total
    c3 = cloud_pubs[policy.owner_org][1] ** dp_total
    c4 = {org: cloud_pubs[org][0] ** d_by_org[org] for org in policy.orgs}
    c4p = {org: cloud_pubs[org][0] ** dp_by_org[org] for org in policy.orgs}
    cr = {r: role_pks[r] ** (d[r] * w % q) for r in sorted(policy.roles)}
    crp = {r: role_pks[r] ** (dp[r] * w % q) for r in sorted(policy.roles)}
    return Ciphertext(
        policy=policy,
        keyword_count=len(set(keywords)),
        payload=payload,
        c1=c1,
        c2=c2,
        c3=c3,
        c4=c4,
        c4p=c4p,
        cr=cr,
        crp=crp,
    )


def ciphertext_to_bytes(ct: Ciphertext) -> bytes:
    """Archive encoding; carries the policy manifest but never the keywords."""
    return wire.frame(
        "ciphertext",
        {
            "owner_org": ct.policy.owner_org,
            "roles": [[r.org, r.name] for r in sorted(ct.policy.roles)],
            "keyword_count": ct.keyword_count,
            "payload": wire.b64e(ct.payload),
            "c1": wire.b64e(ct.c1.to_bytes()),
            "c2": wire.b64e(ct.c2.to_bytes()),
            "c3": wire.b64e(ct.c3.to_bytes()),
            "c4": {org: wire.b64e(e.to_bytes()) for org, e in sorted(ct.c4.items())},
            "c4p": {org: wire.b64e(e.to_bytes()) for org, e in sorted(ct.c4p.items())},
            "cr": {str(r): wire.b64e(e.to_bytes()) for r, e in sorted(ct.cr.items())},
            "crp": {str(r): wire.b64e(e.to_bytes()) for r, e in sorted(ct.crp.items())},
        },
    )


def ciphertext_from_bytes(ctx: BilinearContext, blob: bytes) -> Ciphertext:
    doc = wire.unframe("ciphertext", blob)
    try:
        roles = frozenset(RoleId(org, name) for org, name in doc["roles"])
        policy = AccessPolicy(roles=roles, owner_org=doc["owner_org"])
        by_role = {str(r): r for r in roles}
        return Ciphertext(
            policy=policy,
            keyword_count=int(doc["keyword_count"]),
            payload=wire.b64d(doc["payload"]),
            c1=ctx.gt_from_bytes(wire.b64d(doc["c1"])),
            c2=ctx.g1_from_bytes(wire.b64d(doc["c2"])),
            c3=ctx.g1_from_bytes(wire.b64d(doc["c3"])),
            c4={org: ctx.g1_from_bytes(wire.b64d(s)) for org, s in doc["c4"].items()},
            c4p={org: ctx.g1_from_bytes(wire.b64d(s)) for org, s in doc["c4p"].items()},
            cr={by_role[k]: ctx.g1_from_bytes(wire.b64d(s)) for k, s in doc["cr"].items()},
            crp={by_role[k]: ctx.g1_from_bytes(wire.b64d(s)) for k, s in doc["crp"].items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidEncoding(f"malformed ciphertext blob: {exc}") from exc
