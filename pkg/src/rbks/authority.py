"""Per-organization system authority: setup, role parameters, key issuance,
and both revocation modes.

Each organization runs one authority.  All authorities share the group
secret g^y (agreed via the two-round protocol in `groupkey`), so a user
enrolled with several organizations derives the same global private key
everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import groupkey
from .errors import RootRoleNotRevocable, UnknownRole, UnknownUser
from .hierarchy import RoleHierarchy, RoleId
from .pairing import BilinearContext, G1Element, GTElement


@dataclass
class PublicParams:
    ctx: BilinearContext
    Y: GTElement  # e(g, g)^y
    h1: Dict[str, G1Element]  # org -> g^{eta_k}


@dataclass
class MasterSecret:
    org: str
    g_y: G1Element  # shared group secret g^y
    eta: int
    mu: int
    x: int


@dataclass
class RoleSecretRecord:
    role: RoleId
    t: int
    rs: int  # product of t over the ancestor set
    pk: G1Element  # g^rs


class ProxyKeySet:
    """Cloud-held scalars PKey[target, held] = RS_target / t_held (mod q)."""

    def __init__(self) -> None:
        self._keys: Dict[Tuple[RoleId, RoleId], int] = {}

    def set(self, target: RoleId, held: RoleId, value: int) -> None:
        self._keys[(target, held)] = value

    def get(self, target: RoleId, held: RoleId) -> int:
        return self._keys[(target, held)]

    def __contains__(self, pair: Tuple[RoleId, RoleId]) -> bool:
        return pair in self._keys

    def items(self):
        return self._keys.items()

    def merge(self, other: "ProxyKeySet") -> None:
        self._keys.update(other._keys)


@dataclass
class RoleParams:
    """Everything ManageRole produced for one hierarchy.

    The root role gets a secret exponent like every other role but no
    public key, role secret, or proxy keys; it only appears inside the
    RS products of its descendants.
    """

    org: str
    hierarchy: RoleHierarchy
    root_t: int
    records: Dict[RoleId, RoleSecretRecord]
    proxy: ProxyKeySet

    def t_of(self, role: RoleId) -> int:
        if role == self.hierarchy.root:
            return self.root_t
        return self.records[role].t

    def rs_of(self, role: RoleId) -> int:
        return self.records[role].rs

    def role_pks(self) -> Dict[RoleId, G1Element]:
        return {r: rec.pk for r, rec in self.records.items()}


@dataclass
class CloudKeys:
    org: str
    priv: int
    pub1: G1Element  # g^{mu_k * priv}
    pub2: G1Element  # g^{x_k * priv}


@dataclass
class UserKeys:
    org: str
    user_id: str
    priv_global: int  # H2(g^{y * H1(ID_u)}); identical across orgs
    priv_org: G1Element  # g^{(y*Priv + x_k) / eta_k}
    pub_org: G1Element  # g^{H2(priv_org) / Priv}
    user_secret: G1Element  # g^{y*Priv + mu_k}; shared with the role-managers


@dataclass
class RevocationToken:
    role: RoleId
    ratio_forward: int  # t'/t, applied by the cloud and to RS/PK
    ratio_backward: int  # t/t', applied to held role-keys
    new_t: int


class BulletinBoard:
    """Public registry: user public keys, role public keys, cloud public keys."""

    def __init__(self) -> None:
        self.user_pubs: Dict[Tuple[str, str], G1Element] = {}
        self.role_pks: Dict[RoleId, G1Element] = {}
        self.cloud_pubs: Dict[str, Tuple[G1Element, G1Element]] = {}

    def publish_user(self, org: str, user_id: str, pub: G1Element) -> None:
        self.user_pubs[(org, user_id)] = pub

    def lookup_user(self, org: str, user_id: str) -> Optional[G1Element]:
        return self.user_pubs.get((org, user_id))

    def remove_user(self, org: str, user_id: str) -> None:
        if (org, user_id) not in self.user_pubs:
            raise UnknownUser(f"{user_id} not registered with {org}")
        del self.user_pubs[(org, user_id)]


def system_setup(
    ctx: BilinearContext, orgs: List[str], rng=None
) -> Tuple[PublicParams, Dict[str, MasterSecret]]:
    """Agree on g^y across the authorities and publish the public parameters.

    With a single organization the agreement degenerates: the lone
    authority samples y directly.
    """
    if not orgs:
        raise ValueError("at least one organization required")
    if len(set(orgs)) != len(orgs):
        raise ValueError("duplicate organization ids")
    if len(orgs) == 1:
        g_y = ctx.g ** ctx.random_scalar(rng)
    else:
        g_y, _ = groupkey.run_agreement(ctx, len(orgs), rng)
    Y = ctx.pair(g_y, ctx.g)
    h1 = {}
    secrets: Dict[str, MasterSecret] = {}
    for org in orgs:
        eta = ctx.random_scalar(rng)
        mu = ctx.random_scalar(rng)
        x = ctx.random_scalar(rng)
        h1[org] = ctx.g ** eta
        secrets[org] = MasterSecret(org=org, g_y=g_y, eta=eta, mu=mu, x=x)
    return PublicParams(ctx=ctx, Y=Y, h1=h1), secrets


def manage_role(h: RoleHierarchy, ms: MasterSecret, ctx: BilinearContext, rng=None) -> RoleParams:
    """Sample per-role exponents and derive RS, PK and the proxy keys."""
    q = int(ctx.q)
    t: Dict[RoleId, int] = {role: ctx.random_scalar(rng) for role in sorted(h.roles)}
    records: Dict[RoleId, RoleSecretRecord] = {}
    proxy = ProxyKeySet()
    for role in sorted(h.roles):
        if role == h.root:
            continue
        ancestors = h.ancestor_set(role)
        rs = 1
        for a in ancestors:
            rs = rs * t[a] % q
        records[role] = RoleSecretRecord(role=role, t=t[role], rs=rs, pk=ctx.g ** rs)
        for held in ancestors - {role}:
            proxy.set(role, held, rs * ctx.inv_scalar(t[held]) % q)
    return RoleParams(org=h.org, hierarchy=h, root_t=t[h.root], records=records, proxy=proxy)


def pub_cloud_key_gen(ms: MasterSecret, cloud_id: str, ctx: BilinearContext) -> CloudKeys:
    priv = ctx.hash_h2(ms.g_y ** (ctx.hash_h1(cloud_id.encode()) * ctx.inv_scalar(ms.x) % int(ctx.q)))
    pub1 = ctx.g ** (ms.mu * priv % int(ctx.q))
    pub2 = ctx.g ** (ms.x * priv % int(ctx.q))
    return CloudKeys(org=ms.org, priv=priv, pub1=pub1, pub2=pub2)


def user_priv_key_gen(ms: MasterSecret, user_id: str, ctx: BilinearContext) -> UserKeys:
    q = int(ctx.q)
    priv = ctx.hash_h2(ms.g_y ** ctx.hash_h1(user_id.encode()))
    inv_eta = ctx.inv_scalar(ms.eta)
    priv_org = ms.g_y ** (priv * inv_eta % q) * ctx.g ** (ms.x * inv_eta % q)
    pub_org = ctx.g ** (ctx.hash_h2(priv_org) * ctx.inv_scalar(priv) % q)
    user_secret = ms.g_y ** priv * ctx.g ** ms.mu
    return UserKeys(
        org=ms.org,
        user_id=user_id,
        priv_global=priv,
        priv_org=priv_org,
        pub_org=pub_org,
        user_secret=user_secret,
    )


def revoke_user_complete(board: BulletinBoard, org: str, user_id: str) -> None:
    """Drop the user's public key; the cloud then fails to authenticate them."""
    board.remove_user(org, user_id)


def revoke_role(params: RoleParams, role: RoleId, ctx: BilinearContext, rng=None) -> RevocationToken:
    """Re-key a role: updates RS/PK/proxy entries in place, returns the token.

    A role r_j is affected iff the revoked role sits in its ancestor set;
    every affected RS gains the factor t'/t, and every proxy key whose
    product still contains the old t is rescaled the same way.
    """
    h = params.hierarchy
    if role not in h:
        raise UnknownRole(str(role))
    if role == h.root:
        raise RootRoleNotRevocable(str(role))
    q = int(ctx.q)
    old_t = params.records[role].t
    new_t = ctx.random_scalar(rng)
    fwd = new_t * ctx.inv_scalar(old_t) % q
    bwd = ctx.inv_scalar(fwd)
    for rec in params.records.values():
        if role not in h.ancestor_set(rec.role):
            continue
        rec.rs = rec.rs * fwd % q
        rec.pk = rec.pk ** fwd
    params.records[role].t = new_t
    for (target, held), value in list(params.proxy.items()):
        if role in h.ancestor_set(target) and held != role:
            params.proxy.set(target, held, value * fwd % q)
    return RevocationToken(role=role, ratio_forward=fwd, ratio_backward=bwd, new_t=new_t)
