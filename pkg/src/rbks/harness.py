"""Multi-party simulation harness.

A scenario is a YAML document describing organizations, users,
documents, and a sequence of events (queries, revocations) together
with the outcome each query must produce.  `run_scenario` plays the
whole protocol in-process with every party as a separate object and
checks each expectation; everything is driven by one seeded RNG so a
scenario replays bit-identically.

`World` is the reusable stage behind the scenario runner; the benchmark
driver and the test-suite build on it directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

from . import authority, client, cloud, owner, pairing, rolemanager
from .errors import ExpectationFailed, RbksError, ScenarioInvalid, SearchRejected
from .hierarchy import RoleHierarchy, RoleId, parse_hierarchy

_CLOCK_START = 1_700_000_000
_CLOCK_STEP = 10


def parse_role(text: str) -> RoleId:
    org, sep, name = text.partition("/")
    if not sep or not org or not name:
        raise ScenarioInvalid(f"role must look like org/name, got {text!r}")
    return RoleId(org, name)


@dataclass
class DocumentSpec:
    name: str
    owner_org: str
    policy: Tuple[RoleId, ...]
    keywords: Tuple[str, ...]
    payload: bytes


@dataclass
class Scenario:
    security_level: int
    seed: int
    orgs: Dict[str, str]  # org -> hierarchy description text
    users: Dict[str, Tuple[RoleId, ...]]
    documents: Dict[str, DocumentSpec]
    events: List[dict]


def load_scenario(text: str) -> Scenario:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioInvalid(f"not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioInvalid("scenario must be a mapping")
    if doc.get("schema") != 1:
        raise ScenarioInvalid(f"unsupported schema {doc.get('schema')!r}")
    return scenario_from_dict(doc)


def scenario_from_dict(doc: dict) -> Scenario:
    try:
        orgs = dict(doc["orgs"])
        users = {
            name: tuple(parse_role(r) for r in spec["roles"])
            for name, spec in doc.get("users", {}).items()
        }
        documents = {}
        for name, spec in doc.get("documents", {}).items():
            documents[name] = DocumentSpec(
                name=name,
                owner_org=spec["owner"],
                policy=tuple(parse_role(r) for r in spec["policy"]),
                keywords=tuple(spec["keywords"]),
                payload=str(spec["payload"]).encode("utf-8"),
            )
        events = list(doc.get("events", []))
        return Scenario(
            security_level=int(doc.get("security_level", pairing.DEFAULT_LEVEL)),
            seed=int(doc.get("seed", 0)),
            orgs=orgs,
            users=users,
            documents=documents,
            events=events,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioInvalid(f"malformed scenario: {exc}") from exc


@dataclass
class _UserState:
    keys: Dict[str, authority.UserKeys]  # per org
    role_keys: Dict[RoleId, rolemanager.RoleKeyPair]


class World:
    """All protocol parties wired together in one process."""

    def __init__(
        self,
        security_level: int,
        org_texts: Dict[str, str],
        rng: random.Random,
        ctx: Optional[pairing.BilinearContext] = None,
    ):
        self.rng = rng
        self.ctx = ctx if ctx is not None else pairing.setup_context(security_level)
        if self.ctx.security_level != security_level:
            raise ScenarioInvalid("context level does not match the requested level")
        self.hierarchies: Dict[str, RoleHierarchy] = {
            org: parse_hierarchy(org, text) for org, text in sorted(org_texts.items())
        }
        self.pp, self.masters = authority.system_setup(self.ctx, sorted(org_texts), rng)
        self.role_params: Dict[str, authority.RoleParams] = {
            org: authority.manage_role(h, self.masters[org], self.ctx, rng)
            for org, h in self.hierarchies.items()
        }
        self.board = authority.BulletinBoard()
        self.cloud_keys = {
            org: authority.pub_cloud_key_gen(self.masters[org], "cloud-1", self.ctx)
            for org in sorted(org_texts)
        }
        for org, ck in self.cloud_keys.items():
            self.board.cloud_pubs[org] = (ck.pub1, ck.pub2)
        merged = authority.ProxyKeySet()
        for rp in self.role_params.values():
            self.board.role_pks.update(rp.role_pks())
            merged.merge(rp.proxy)
        self.server = cloud.CloudServer(
            self.ctx,
            self.board,
            {org: ck.priv for org, ck in self.cloud_keys.items()},
            self.hierarchies,
            merged,
        )
        self.users: Dict[str, _UserState] = {}
        self.doc_ids: Dict[str, str] = {}
        self.doc_payloads: Dict[str, bytes] = {}
        self.clock = _CLOCK_START

    def tick(self) -> int:
        self.clock += _CLOCK_STEP
        return self.clock

    def enrol_user(self, name: str, roles: Sequence[RoleId]) -> None:
        keys = {
            org: authority.user_priv_key_gen(self.masters[org], name, self.ctx)
            for org in sorted(self.masters)
        }
        for org, uk in keys.items():
            self.board.publish_user(org, name, uk.pub_org)
        role_keys = {}
        for role in sorted(roles):
            rp = self.role_params[role.org]
            role_keys[role] = rolemanager.user_role_key_gen(self.ctx, rp, role, keys[role.org])
        self.users[name] = _UserState(keys=keys, role_keys=role_keys)

    def add_document(self, spec: DocumentSpec) -> str:
        policy = owner.AccessPolicy(frozenset(spec.policy), spec.owner_org)
        ct = owner.encrypt(
            self.pp,
            self.board.cloud_pubs,
            self.board.role_pks,
            spec.payload,
            list(spec.keywords),
            policy,
            self.rng,
        )
        ct_id = self.server.store.add(ct)
        self.doc_ids[spec.name] = ct_id
        self.doc_payloads[spec.name] = spec.payload
        return ct_id

    def query(
        self,
        user: str,
        org: str,
        keywords: Sequence[str],
        roles: Optional[Sequence[RoleId]] = None,
        ts: Optional[int] = None,
        now: Optional[int] = None,
    ) -> List[Tuple[str, bytes]]:
        """Run a full search round-trip; returns (doc name, plaintext) pairs."""
        state = self.users[user]
        presented = sorted(roles) if roles is not None else sorted(state.role_keys)
        keys = [state.role_keys[r] for r in presented]
        if ts is None:
            ts = self.tick()
        trapdoor, session = client.trap_gen(
            self.ctx, state.keys[org], keys, list(keywords), ts, self.rng
        )
        results = self.server.handle_search(trapdoor, now if now is not None else ts)
        names_by_id = {v: k for k, v in self.doc_ids.items()}
        out = []
        for ct_id, partial in results:
            plain = client.full_dec(self.ctx, session, state.keys[org], partial)
            out.append((names_by_id.get(ct_id, ct_id), plain))
        return out

    def revoke_role(
        self, role: RoleId, exclude_users: Sequence[str] = ()
    ) -> authority.RevocationToken:
        """Role-level revocation; key updates go to everyone but `exclude_users`
        (the members the role is being taken away from)."""
        rp = self.role_params[role.org]
        token = authority.revoke_role(rp, role, self.ctx, self.rng)
        self.server.apply_revocation(token)
        self.board.role_pks.update(rp.role_pks())
        for name, state in self.users.items():
            if name in exclude_users:
                continue
            org_keys = [k for k in state.role_keys.values() if k.role.org == role.org]
            for updated in rolemanager.update_role_keys(self.ctx, rp, org_keys, token):
                state.role_keys[updated.role] = updated
        return token

    def revoke_user(self, org: str, user: str) -> None:
        authority.revoke_user_complete(self.board, org, user)


def run_scenario(scenario: Scenario) -> dict:
    """Play the scenario; raises ExpectationFailed on the first divergence."""
    rng = random.Random(scenario.seed)
    world = World(scenario.security_level, scenario.orgs, rng)
    for name, roles in sorted(scenario.users.items()):
        world.enrol_user(name, roles)
    for name in sorted(scenario.documents):
        world.add_document(scenario.documents[name])
    report = {"queries": 0, "matches": 0, "rejections": 0, "revocations": 0}
    for idx, event in enumerate(scenario.events):
        if "query" in event:
            q = event["query"]
            expect = q.get("expect", [])
            roles = [parse_role(r) for r in q["roles"]] if "roles" in q else None
            try:
                got = world.query(q["user"], q["org"], q["keywords"], roles)
            except SearchRejected as exc:
                got_reject = type(exc).__name__
                if expect != f"reject:{got_reject}":
                    raise ExpectationFailed(
                        f"event {idx}: expected {expect!r}, got rejection {got_reject}"
                    ) from exc
                report["rejections"] += 1
            else:
                if isinstance(expect, str):
                    raise ExpectationFailed(f"event {idx}: expected {expect!r}, got results")
                got_names = sorted(n for n, _ in got)
                if got_names != sorted(expect):
                    raise ExpectationFailed(
                        f"event {idx}: expected docs {sorted(expect)}, got {got_names}"
                    )
                for name, plain in got:
                    if plain != world.doc_payloads[name]:
                        raise ExpectationFailed(f"event {idx}: {name} decrypted to wrong payload")
                report["matches"] += len(got)
            report["queries"] += 1
        elif "revoke_role" in event:
            world.revoke_role(parse_role(event["revoke_role"]))
            report["revocations"] += 1
        elif "revoke_user" in event:
            spec = event["revoke_user"]
            world.revoke_user(spec["org"], spec["user"])
            report["revocations"] += 1
        else:
            raise ScenarioInvalid(f"event {idx}: unknown event {sorted(event)}")
    report["ok"] = True
    return report


# --------------------------------------------------------------- generation
_KEYWORD_POOL = ["flu", "audit", "2026", "oncology", "triage", "budget", "trial", "vaccine"]


def random_scenario(seed: int, security_level: int = 160) -> Scenario:
    """Generate a randomized scenario whose expectations come from a plain
    set-logic model of the protocol (qualification + keyword-set equality),
    independent of any group arithmetic."""
    rng = random.Random(seed)
    n_orgs = rng.randint(1, 3)
    org_names = [f"org{i}" for i in range(n_orgs)]
    orgs: Dict[str, str] = {}
    hierarchies: Dict[str, RoleHierarchy] = {}
    for org in org_names:
        n_roles = rng.randint(2, 5)  # excluding root
        lines = ["root: r0"]
        for i in range(1, n_roles + 1):
            for parent in rng.sample(range(i), min(len(range(i)), rng.randint(1, 2))):
                lines.append(f"r{parent} -> r{i}")
        text = "\n".join(lines)
        orgs[org] = text
        hierarchies[org] = parse_hierarchy(org, text)
    assignable = {
        org: sorted(h.roles - {h.root}) for org, h in hierarchies.items()
    }
    users = {}
    for i in range(rng.randint(2, 4)):
        held = []
        for org in org_names:
            for role in rng.sample(assignable[org], rng.randint(0, min(2, len(assignable[org])))):
                held.append(role)
        if not held:
            org = rng.choice(org_names)
            held.append(rng.choice(assignable[org]))
        users[f"user{i}"] = tuple(sorted(held))
    documents = {}
    for i in range(rng.randint(1, 3)):
        owner_org = rng.choice(org_names)
        policy = {rng.choice(assignable[owner_org])}
        for org in org_names:
            if rng.random() < 0.4:
                policy.add(rng.choice(assignable[org]))
        documents[f"doc{i}"] = DocumentSpec(
            name=f"doc{i}",
            owner_org=owner_org,
            policy=tuple(sorted(policy)),
            keywords=tuple(rng.sample(_KEYWORD_POOL, rng.randint(1, 3))),
            payload=f"payload-{seed}-{i}".encode(),
        )

    def qualified(held: Sequence[RoleId], doc: DocumentSpec) -> bool:
        for target in doc.policy:
            h = hierarchies[target.org]
            if not any(r.org == target.org and r in h.ancestor_set(target) for r in held):
                return False
        return True

    revoked_users: set = set()
    events: List[dict] = []
    for _ in range(rng.randint(2, 6)):
        kind = rng.random()
        pairs_left = [
            (u, o) for u in sorted(users) for o in org_names if (u, o) not in revoked_users
        ]
        if kind < 0.2 and pairs_left:
            victim, org = rng.choice(pairs_left)
            events.append({"revoke_user": {"org": org, "user": victim}})
            revoked_users.add((victim, org))
        elif kind < 0.35:
            org = rng.choice(org_names)
            events.append({"revoke_role": str(rng.choice(assignable[org]))})
        else:
            user = rng.choice(sorted(users))
            org = rng.choice(org_names)
            doc = rng.choice(sorted(documents))
            spec = documents[doc]
            if rng.random() < 0.7:
                keywords = list(spec.keywords)
            else:
                keywords = rng.sample(_KEYWORD_POOL, rng.randint(1, 3))
            if (user, org) in revoked_users:
                expect = "reject:UnknownOrRevokedUser"
            else:
                expect = sorted(
                    name
                    for name, d in documents.items()
                    if d.owner_org == org
                    and set(d.keywords) == set(keywords)
                    and qualified(users[user], d)
                )
            events.append(
                {
                    "query": {
                        "user": user,
                        "org": org,
                        "keywords": keywords,
                        "expect": expect,
                    }
                }
            )
    return Scenario(
        security_level=security_level,
        seed=seed,
        orgs=orgs,
        users=users,
        documents=documents,
        events=events,
    )
