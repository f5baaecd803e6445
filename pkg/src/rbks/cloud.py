"""Cloud server: archive store, trapdoor authentication, authorized
keyword search, partial decryption, and ciphertext re-encryption after a
role-level revocation.

Every rejection raises a SearchRejected subclass; the request handler
turns per-archive keyword mismatches into "not a result" while letting
trapdoor-level failures (stale, replayed, unknown user, inconsistent)
abort the whole request.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .authority import BulletinBoard, ProxyKeySet, RevocationToken
from .client import PartialCiphertext, Trapdoor, trapdoor_to_bytes
from .errors import (
    InconsistentTrapdoor,
    KeywordMismatch,
    MissingCloudKey,
    ReplayDetected,
    StaleTimestamp,
    UnknownOrRevokedUser,
    UnqualifiedRoles,
)
from .hierarchy import RoleHierarchy, RoleId
from .owner import Ciphertext
from .pairing import BilinearContext, GTElement

DEFAULT_FRESHNESS_WINDOW = 300  # seconds


class CiphertextStore:
    """Sequentially-numbered archive store, indexable by owning org."""

    def __init__(self) -> None:
        self._entries: Dict[str, Ciphertext] = {}
        self._next = 0

    def add(self, ct: Ciphertext) -> str:
        ct_id = f"ct-{self._next:06d}"
        self._next += 1
        self._entries[ct_id] = ct
        return ct_id

    def get(self, ct_id: str) -> Ciphertext:
        return self._entries[ct_id]

    def by_org(self, org: str) -> List[Tuple[str, Ciphertext]]:
        return [(i, c) for i, c in sorted(self._entries.items()) if c.policy.owner_org == org]

    def items(self) -> List[Tuple[str, Ciphertext]]:
        return sorted(self._entries.items())

    def __len__(self) -> int:
        return len(self._entries)


class ReplayCache:
    """Sliding-window digest cache; a repeated trapdoor inside the window is a replay."""

    def __init__(self, window: int = DEFAULT_FRESHNESS_WINDOW) -> None:
        self.window = window
        self._seen: Dict[bytes, int] = {}

    def check(self, digest: bytes, now: int) -> None:
        for d, ts in list(self._seen.items()):
            if now - ts > self.window:
                del self._seen[d]
        if digest in self._seen:
            raise ReplayDetected("trapdoor digest already seen inside the window")
        self._seen[digest] = now


@dataclass
class AuthEvidence:
    v31: GTElement  # e(tr4, U'); reused by the search identity


@dataclass
class MatchEvidence:
    v6: GTElement
    selection: Dict[RoleId, Tuple[str, RoleId]]  # policy role -> (case, acting role)


class CloudServer:
    def __init__(
        self,
        ctx: BilinearContext,
        board: BulletinBoard,
        cloud_privs: Dict[str, int],
        hierarchies: Dict[str, RoleHierarchy],
        proxy: Optional[ProxyKeySet] = None,
        window: int = DEFAULT_FRESHNESS_WINDOW,
    ) -> None:
        self.ctx = ctx
        self.board = board
        self.cloud_privs = cloud_privs
        self.hierarchies = hierarchies
        self.proxy = proxy if proxy is not None else ProxyKeySet()
        self.store = CiphertextStore()
        self.replay = ReplayCache(window)
        self.window = window

    # ------------------------------------------------------------------ auth
    def check_freshness(self, trapdoor: Trapdoor, now: int) -> bytes:
        """Timestamp window plus replay cache; returns the trapdoor digest."""
        if abs(now - trapdoor.ts) > self.window:
            raise StaleTimestamp(f"trapdoor timestamp {trapdoor.ts} outside window at {now}")
        digest = hashlib.sha256(trapdoor_to_bytes(trapdoor)).digest()
        self.replay.check(digest, now)
        return digest

    def _lookup_user(self, trapdoor: Trapdoor):
        pub_u = self.board.lookup_user(trapdoor.org, trapdoor.user_id)
        if pub_u is None:
            raise UnknownOrRevokedUser(f"{trapdoor.user_id} has no published key at {trapdoor.org}")
        return pub_u

    def _u_prime(self, ct: Ciphertext):
        ctx = self.ctx
        u_prime = ctx.g1_identity()
        for org in ct.policy.orgs:
            if org not in self.cloud_privs:
                raise MissingCloudKey(org)
            u_prime = u_prime * ct.c4p[org] ** ctx.inv_scalar(self.cloud_privs[org])
        return u_prime

    def authenticate(self, ct: Ciphertext, trapdoor: Trapdoor) -> AuthEvidence:
        """Verify the trapdoor really comes from the registered key holder."""
        ctx = self.ctx
        pub_u = self._lookup_user(trapdoor)
        u_prime = self._u_prime(ct)
        v11 = ctx.pair(pub_u ** trapdoor.tr1, u_prime)
        v21 = ctx.pair(trapdoor.tr3 ** trapdoor.ts, u_prime)
        v31 = ctx.pair(trapdoor.tr4, u_prime)
        if v11 != v21 * v31:
            raise InconsistentTrapdoor("authentication identity failed")
        return AuthEvidence(v31=v31)

    # ---------------------------------------------------------------- search
    def _select_roles(self, ct: Ciphertext, trapdoor: Trapdoor) -> Dict[RoleId, Tuple[str, RoleId]]:
        """Pick, for each policy role, a presented role that covers it.

        Pure hierarchy bookkeeping, so an unqualified trapdoor is turned
        away before the first pairing is computed.
        """
        held = set(trapdoor.tr_r1)
        selection: Dict[RoleId, Tuple[str, RoleId]] = {}
        for target in sorted(ct.policy.roles):
            if target in held:
                selection[target] = ("case1", target)
                continue
            h = self.hierarchies.get(target.org)
            ancestors = h.ancestor_set(target) if h is not None else frozenset()
            candidates = sorted(
                r for r in held if r.org == target.org and r in ancestors and (target, r) in self.proxy
            )
            if not candidates:
                raise UnqualifiedRoles(f"no presented role covers {target}")
            selection[target] = ("case2", candidates[0])
        return selection

    def _role_factor(self, trapdoor: Trapdoor, target: RoleId, case: str, acting: RoleId, comp) -> GTElement:
        ctx = self.ctx
        if case == "case1":
            return ctx.pair(trapdoor.tr_r1[acting], comp)
        pkey_inv = ctx.inv_scalar(self.proxy.get(target, acting))
        return ctx.pair(trapdoor.tr_r2[acting] ** pkey_inv, comp)

    def key_search(self, ct: Ciphertext, trapdoor: Trapdoor, auth: AuthEvidence) -> MatchEvidence:
        """Conjunctive keyword test; raises KeywordMismatch on a non-match."""
        ctx = self.ctx
        selection = self._select_roles(ct, trapdoor)
        v2 = ctx.gt_identity()
        for target, (case, acting) in selection.items():
            v2 = v2 * self._role_factor(trapdoor, target, case, acting, ct.crp[target])
        v3 = v2 / auth.v31
        owner = ct.policy.owner_org
        v4 = ctx.pair(trapdoor.tr2, ct.c2)
        v5 = ctx.pair(trapdoor.tr4 ** ctx.inv_scalar(self.cloud_privs[owner]), ct.c3)
        v6 = v4 / v5
        if v3 != v6:
            raise KeywordMismatch("trapdoor keywords are not embedded in this archive")
        return MatchEvidence(v6=v6, selection=selection)

    def partial_dec(self, ct: Ciphertext, trapdoor: Trapdoor, match: MatchEvidence) -> PartialCiphertext:
        ctx = self.ctx
        v7 = ctx.gt_identity()
        for target, (case, acting) in match.selection.items():
            v7 = v7 * self._role_factor(trapdoor, target, case, acting, ct.cr[target])
        u = ctx.g1_identity()
        for org in ct.policy.orgs:
            u = u * ct.c4[org] ** ctx.inv_scalar(self.cloud_privs[org])
        v8 = ctx.pair(trapdoor.tr4, u)
        v9 = v7 / v8
        v10 = match.v6 * v9
        return PartialCiphertext(payload=ct.payload, c1=ct.c1, v10=v10)

    def handle_search(self, trapdoor: Trapdoor, now: int) -> List[Tuple[str, PartialCiphertext]]:
        """Full request: freshness, then per-archive auth / search / partial dec.

        Keyword mismatches and coverage failures only exclude the
        archive; every other rejection aborts the request.

        Authentication runs once per request, against the first
        candidate archive; for the rest only V^3_1 is recomputed, since
        U' is archive-dependent.
        """
        self.check_freshness(trapdoor, now)
        self._lookup_user(trapdoor)
        validated = False
        results: List[Tuple[str, PartialCiphertext]] = []
        for ct_id, ct in self.store.by_org(trapdoor.org):
            if not validated:
                auth = self.authenticate(ct, trapdoor)
                validated = True
            else:
                auth = AuthEvidence(v31=self.ctx.pair(trapdoor.tr4, self._u_prime(ct)))
            try:
                match = self.key_search(ct, trapdoor, auth)
            except (UnqualifiedRoles, KeywordMismatch):
                continue
            results.append((ct_id, self.partial_dec(ct, trapdoor, match)))
        return results

    # ------------------------------------------------------------ revocation
    def apply_revocation(self, token: RevocationToken) -> int:
        """Re-encrypt affected role components and rescale the proxy keys.

        Returns how many stored archives were touched.
        """
        org = token.role.org
        h = self.hierarchies[org]
        for (target, held), value in list(self.proxy.items()):
            if target.org == org and token.role in h.ancestor_set(target) and held != token.role:
                self.proxy.set(target, held, value * token.ratio_forward % int(self.ctx.q))
        return self.reencrypt_store(token.role, token.ratio_forward)

    def reencrypt_store(self, revoked: RoleId, ratio_forward: int) -> int:
        """Rescale the role components of every affected stored archive.

        The ciphertext half of a role revocation; `apply_revocation` also
        rescales the proxy keys.  Returns how many archives were touched.
        """
        h = self.hierarchies[revoked.org]
        touched = 0
        for _, ct in self.store.items():
            hit = False
            for role in ct.policy.roles:
                if role.org == revoked.org and revoked in h.ancestor_set(role):
                    ct.cr[role] = ct.cr[role] ** ratio_forward
                    ct.crp[role] = ct.crp[role] ** ratio_forward
                    hit = True
            touched += hit
        return touched
