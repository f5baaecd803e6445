"""Command-line front end.

Two stateless entry points (`demo run`, `bench`) plus a set of stateful
party commands (`sa`, `rm`, `owner`, `user`, `cloud`) that share a JSON
state file so a whole deployment can be driven step by step from the
shell.  The state file holds every party's keys; it is a simulation
artifact, not a production key store.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import Dict, Optional

from . import authority, bench, client, cloud, harness, owner, pairing, rolemanager, wire
from .errors import RbksError, SearchRejected
from .hierarchy import RoleId, format_hierarchy, parse_hierarchy

STATE_FILE = "rbks-state.json"


# ------------------------------------------------------------------- state
def _g1(el) -> str:
    return wire.b64e(el.to_bytes())


def _save_state(path: str, world: harness.World, cloud_id: str) -> None:
    ctx = world.ctx
    doc = {
        "level": ctx.security_level,
        "cloud_id": cloud_id,
        "clock": world.clock,
        "orgs": {
            org: {
                "hierarchy": format_hierarchy(h),
                "g_y": _g1(world.masters[org].g_y),
                "eta": int(world.masters[org].eta),
                "mu": int(world.masters[org].mu),
                "x": int(world.masters[org].x),
                "root_t": int(world.role_params[org].root_t),
                "records": {
                    rec.role.name: {"t": int(rec.t), "rs": int(rec.rs), "pk": _g1(rec.pk)}
                    for rec in world.role_params[org].records.values()
                },
                "cloud_priv": int(world.cloud_keys[org].priv),
                "cloud_pub1": _g1(world.cloud_keys[org].pub1),
                "cloud_pub2": _g1(world.cloud_keys[org].pub2),
            }
            for org, h in world.hierarchies.items()
        },
        "users": {
            name: {
                "keys": {
                    org: {
                        "priv_global": int(uk.priv_global),
                        "priv_org": _g1(uk.priv_org),
                        "pub_org": _g1(uk.pub_org),
                        "user_secret": _g1(uk.user_secret),
                    }
                    for org, uk in state.keys.items()
                },
                "role_keys": {
                    str(r): {"rk1": _g1(k.rk1), "rk2": _g1(k.rk2)}
                    for r, k in state.role_keys.items()
                },
            }
            for name, state in world.users.items()
        },
        "published_users": sorted(f"{org}:{user}" for org, user in world.board.user_pubs),
        "store": {
            ct_id: wire.b64e(owner.ciphertext_to_bytes(ct))
            for ct_id, ct in world.server.store.items()
        },
        "store_next": world.server.store._next,
        "doc_ids": world.doc_ids,
        "replay": {d.hex(): ts for d, ts in world.server.replay._seen.items()},
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)


def _load_state(path: str) -> harness.World:
    with open(path) as fh:
        doc = json.load(fh)
    org_texts = {org: spec["hierarchy"] for org, spec in doc["orgs"].items()}
    world = harness.World(doc["level"], org_texts, random.Random())
    ctx = world.ctx
    world.clock = doc["clock"]

    def g1(s):
        return ctx.g1_from_bytes(wire.b64d(s))

    world.board = authority.BulletinBoard()
    merged = authority.ProxyKeySet()
    for org, spec in doc["orgs"].items():
        ms = authority.MasterSecret(
            org=org, g_y=g1(spec["g_y"]), eta=spec["eta"], mu=spec["mu"], x=spec["x"]
        )
        world.masters[org] = ms
        h = world.hierarchies[org]
        records = {}
        proxy = authority.ProxyKeySet()
        q = int(ctx.q)
        t_by_role = {h.root: spec["root_t"]}
        for name, rec in spec["records"].items():
            role = RoleId(org, name)
            records[role] = authority.RoleSecretRecord(
                role=role, t=rec["t"], rs=rec["rs"], pk=g1(rec["pk"])
            )
            t_by_role[role] = rec["t"]
        for role, rec in records.items():
            for held in h.ancestor_set(role) - {role}:
                proxy.set(role, held, rec.rs * ctx.inv_scalar(t_by_role[held]) % q)
        world.role_params[org] = authority.RoleParams(
            org=org, hierarchy=h, root_t=spec["root_t"], records=records, proxy=proxy
        )
        merged.merge(proxy)
        ck = authority.CloudKeys(
            org=org,
            priv=spec["cloud_priv"],
            pub1=g1(spec["cloud_pub1"]),
            pub2=g1(spec["cloud_pub2"]),
        )
        world.cloud_keys[org] = ck
        world.board.cloud_pubs[org] = (ck.pub1, ck.pub2)
        world.board.role_pks.update({r: rec.pk for r, rec in records.items()})
    world.users = {}
    for name, spec in doc["users"].items():
        keys = {}
        for org, uk in spec["keys"].items():
            keys[org] = authority.UserKeys(
                org=org,
                user_id=name,
                priv_global=uk["priv_global"],
                priv_org=g1(uk["priv_org"]),
                pub_org=g1(uk["pub_org"]),
                user_secret=g1(uk["user_secret"]),
            )
        role_keys = {}
        for rtext, k in spec["role_keys"].items():
            role = harness.parse_role(rtext)
            role_keys[role] = rolemanager.RoleKeyPair(role=role, rk1=g1(k["rk1"]), rk2=g1(k["rk2"]))
        world.users[name] = harness._UserState(keys=keys, role_keys=role_keys)
    for entry in doc["published_users"]:
        org, _, user = entry.partition(":")
        world.board.publish_user(org, user, world.users[user].keys[org].pub_org)
    world.pp = authority.PublicParams(
        ctx=ctx,
        Y=ctx.pair(next(iter(world.masters.values())).g_y, ctx.g),
        h1={org: ctx.g ** ms.eta for org, ms in world.masters.items()},
    )
    world.server = cloud.CloudServer(
        ctx,
        world.board,
        {org: ck.priv for org, ck in world.cloud_keys.items()},
        world.hierarchies,
        merged,
    )
    for ct_id, blob in sorted(doc["store"].items()):
        world.server.store._entries[ct_id] = owner.ciphertext_from_bytes(ctx, wire.b64d(blob))
    world.server.store._next = doc["store_next"]
    world.doc_ids = doc["doc_ids"]
    world.server.replay._seen = {bytes.fromhex(d): ts for d, ts in doc["replay"].items()}
    return world


def _state_path(args) -> str:
    return args.state


# ---------------------------------------------------------------- commands
def cmd_demo_run(args) -> int:
    with open(args.scenario) as fh:
        scenario = harness.load_scenario(fh.read())
    report = harness.run_scenario(scenario)
    print(json.dumps(report, indent=1))
    return 0


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else None
    if sizes:
        rows = bench.sweep(args.phase, sizes, trials=args.trials, security_level=args.level)
    else:
        rows = [
            bench.bench_phase(
                args.phase, gamma=args.gamma, s=args.s, trials=args.trials, security_level=args.level
            )
        ]
    for row in rows:
        print(
            f"{row['phase']}: |Gamma|={row['gamma']} |S|={row['s']} "
            f"g1_exp={row['g1_exp']:.0f} gt_exp={row['gt_exp']:.0f} "
            f"pairings={row['pairing']:.0f} hashes={row['hash']:.0f} "
            f"mean={row['mean_ms']:.2f} ms"
        )
    if args.csv:
        bench.write_csv(rows, args.csv)
        print(f"wrote {args.csv}")
    return 0


def cmd_sa_setup(args) -> int:
    org_texts = {}
    for spec in args.org:
        name, _, path = spec.partition("=")
        if not path:
            raise RbksError(f"--org expects NAME=HIERARCHY_FILE, got {spec!r}")
        with open(path) as fh:
            org_texts[name] = fh.read()
    rng = random.Random(args.seed) if args.seed is not None else random.Random()
    world = harness.World(args.level, org_texts, rng)
    _save_state(_state_path(args), world, args.cloud_id)
    print(f"set up {len(org_texts)} organization(s) at level {args.level}; state in {args.state}")
    return 0


def cmd_sa_manage_roles(args) -> int:
    """Re-run role management for one org: fresh role secrets and proxy keys.

    Previously issued role keys and archives for that org become stale;
    meant for re-keying an organization in a simulation, not mid-flight.
    """
    world = _load_state(_state_path(args))
    if args.hierarchy:
        with open(args.hierarchy) as fh:
            world.hierarchies[args.org] = parse_hierarchy(args.org, fh.read())
    h = world.hierarchies[args.org]
    world.role_params[args.org] = authority.manage_role(
        h, world.masters[args.org], world.ctx, random.Random()
    )
    for role in list(world.board.role_pks):
        if role.org == args.org:
            del world.board.role_pks[role]
    world.board.role_pks.update(world.role_params[args.org].role_pks())
    dropped = 0
    for state in world.users.values():
        for role in [r for r in state.role_keys if r.org == args.org]:
            del state.role_keys[role]
            dropped += 1
    _save_state(_state_path(args), world, "cloud-1")
    print(f"re-keyed roles of {args.org}; {dropped} issued role key(s) dropped "
          f"(re-issue with `rm assign-role`)")
    return 0


def cmd_sa_keygen_cloud(args) -> int:
    """Issue fresh cloud keys under a new cloud identity (run before encrypting)."""
    world = _load_state(_state_path(args))
    for org in sorted(world.masters):
        ck = authority.pub_cloud_key_gen(world.masters[org], args.cloud_id, world.ctx)
        world.cloud_keys[org] = ck
        world.board.cloud_pubs[org] = (ck.pub1, ck.pub2)
        world.server.cloud_privs[org] = ck.priv
    _save_state(_state_path(args), world, args.cloud_id)
    print(f"issued cloud keys for {args.cloud_id} at every organization")
    return 0


def cmd_sa_keygen_user(args) -> int:
    world = _load_state(_state_path(args))
    world.enrol_user(args.user, [])
    _save_state(_state_path(args), world, "cloud-1")
    print(f"issued keys for {args.user} at every organization and published them")
    return 0


def cmd_rm_assign_role(args) -> int:
    world = _load_state(_state_path(args))
    role = harness.parse_role(args.role)
    state = world.users[args.user]
    state.role_keys[role] = rolemanager.user_role_key_gen(
        world.ctx, world.role_params[role.org], role, state.keys[role.org]
    )
    _save_state(_state_path(args), world, "cloud-1")
    print(f"issued role keys for {args.user}: {role}")
    return 0


def cmd_sa_revoke_user(args) -> int:
    world = _load_state(_state_path(args))
    world.revoke_user(args.org, args.user)
    _save_state(_state_path(args), world, "cloud-1")
    print(f"removed {args.user}'s public key at {args.org}")
    return 0


def cmd_sa_revoke_role(args) -> int:
    world = _load_state(_state_path(args))
    role = harness.parse_role(args.role)
    rp = world.role_params[role.org]
    token = authority.revoke_role(rp, role, world.ctx, random.Random())
    world.board.role_pks.update(rp.role_pks())
    if not args.no_reencrypt:
        world.server.apply_revocation(token)
    if not args.no_updates:
        excluded = set(args.exclude or [])
        for name, state in world.users.items():
            if name in excluded:
                continue
            org_keys = [k for k in state.role_keys.values() if k.role.org == role.org]
            for updated in rolemanager.update_role_keys(world.ctx, rp, org_keys, token):
                state.role_keys[updated.role] = updated
    if args.token_out:
        with open(args.token_out, "w") as fh:
            json.dump({"role": str(role), "ratio_forward": int(token.ratio_forward)}, fh)
    _save_state(_state_path(args), world, "cloud-1")
    parts = [f"re-keyed {role}"]
    parts.append("archives re-encrypted" if not args.no_reencrypt
                 else "archives NOT re-encrypted (run `cloud reencrypt`)")
    parts.append("held keys updated" if not args.no_updates else "key updates withheld")
    print("; ".join(parts))
    return 0


def cmd_rm_push_updates(args) -> int:
    """Re-derive a user's role keys from the current role parameters.

    Brings a client that missed revocation updates back in sync; the
    fresh derivation equals the cumulative multiplicative updates.
    """
    world = _load_state(_state_path(args))
    state = world.users[args.user]
    pushed = []
    for role in sorted(state.role_keys):
        if args.org and role.org != args.org:
            continue
        state.role_keys[role] = rolemanager.user_role_key_gen(
            world.ctx, world.role_params[role.org], role, state.keys[role.org]
        )
        pushed.append(str(role))
    _save_state(_state_path(args), world, "cloud-1")
    print(f"pushed current role keys to {args.user}: {', '.join(pushed) or '(none held)'}")
    return 0


def cmd_owner_encrypt(args) -> int:
    world = _load_state(_state_path(args))
    with open(args.infile, "rb") as fh:
        message = fh.read()
    spec = harness.DocumentSpec(
        name=args.name or os.path.basename(args.infile),
        owner_org=args.owner_org,
        policy=tuple(harness.parse_role(r) for r in args.policy.split(",")),
        keywords=tuple(args.keywords.split(",")),
        payload=message,
    )
    if args.out:
        policy = owner.AccessPolicy(frozenset(spec.policy), spec.owner_org)
        ct = owner.encrypt(
            world.pp, world.board.cloud_pubs, world.board.role_pks,
            spec.payload, list(spec.keywords), policy, world.rng,
        )
        with open(args.out, "wb") as fh:
            fh.write(owner.ciphertext_to_bytes(ct))
        print(f"wrote encrypted archive to {args.out} (upload with `cloud store`)")
        return 0
    ct_id = world.add_document(spec)
    _save_state(_state_path(args), world, "cloud-1")
    print(f"stored {spec.name} as {ct_id}")
    return 0


def cmd_user_search(args) -> int:
    world = _load_state(_state_path(args))
    state = world.users[args.user]
    if args.roles:
        presented = sorted(harness.parse_role(r) for r in args.roles.split(","))
    else:
        presented = sorted(state.role_keys)
    keys = [state.role_keys[r] for r in presented]
    now = int(time.time())
    trapdoor, session = client.trap_gen(
        world.ctx, state.keys[args.org], keys, args.keywords.split(","), now, world.rng
    )
    if args.trapdoor_out:
        with open(args.trapdoor_out, "wb") as fh:
            fh.write(client.trapdoor_to_bytes(trapdoor))
    if args.session_out:
        with open(args.session_out, "w") as fh:
            json.dump({"v": int(session.v), "org": session.org, "user": args.user}, fh)
    if args.no_send:
        print("trapdoor generated but not sent (use `cloud search` to submit it)")
        return 0
    try:
        results = world.server.handle_search(trapdoor, now)
    except SearchRejected as exc:
        _save_state(_state_path(args), world, "cloud-1")
        print(f"rejected: {type(exc).__name__}: {exc}")
        return 1
    _save_state(_state_path(args), world, "cloud-1")
    if not results:
        print("no matching archives")
    names = {v: k for k, v in world.doc_ids.items()}
    for ct_id, partial in results:
        plain = client.full_dec(world.ctx, session, state.keys[args.org], partial)
        print(f"{names.get(ct_id, ct_id)}: {plain!r}")
    return 0


def cmd_user_decrypt(args) -> int:
    """Open partial results saved by `cloud search --results-out`."""
    world = _load_state(_state_path(args))
    with open(args.session) as fh:
        doc = json.load(fh)
    session = client.SearchSession(v=doc["v"], org=doc["org"])
    uk = world.users[args.user].keys[session.org]
    with open(args.results) as fh:
        items = json.load(fh)
    names = {v: k for k, v in world.doc_ids.items()}
    for item in items:
        partial = client.PartialCiphertext(
            payload=wire.b64d(item["payload"]),
            c1=world.ctx.gt_from_bytes(wire.b64d(item["c1"])),
            v10=world.ctx.gt_from_bytes(wire.b64d(item["v10"])),
        )
        plain = client.full_dec(world.ctx, session, uk, partial)
        print(f"{names.get(item['ct_id'], item['ct_id'])}: {plain!r}")
    return 0


def cmd_cloud_store(args) -> int:
    world = _load_state(_state_path(args))
    with open(args.infile, "rb") as fh:
        ct = owner.ciphertext_from_bytes(world.ctx, fh.read())
    ct_id = world.server.store.add(ct)
    world.doc_ids[args.name or os.path.basename(args.infile)] = ct_id
    _save_state(_state_path(args), world, "cloud-1")
    print(f"stored archive as {ct_id}")
    return 0


def cmd_cloud_search(args) -> int:
    world = _load_state(_state_path(args))
    with open(args.trapdoor, "rb") as fh:
        trapdoor = client.trapdoor_from_bytes(world.ctx, fh.read())
    now = args.now if args.now is not None else int(time.time())
    try:
        results = world.server.handle_search(trapdoor, now)
    except SearchRejected as exc:
        _save_state(_state_path(args), world, "cloud-1")
        print(f"rejected: {type(exc).__name__}: {exc}")
        return 1
    _save_state(_state_path(args), world, "cloud-1")
    if not results:
        print("no matching archives")
    for ct_id, _ in results:
        print(ct_id)
    if args.results_out:
        rows = [
            {
                "ct_id": ct_id,
                "payload": wire.b64e(partial.payload),
                "c1": wire.b64e(partial.c1.to_bytes()),
                "v10": wire.b64e(partial.v10.to_bytes()),
            }
            for ct_id, partial in results
        ]
        with open(args.results_out, "w") as fh:
            json.dump(rows, fh)
        print(f"wrote partial decryptions to {args.results_out}")
    return 0


def cmd_cloud_reencrypt(args) -> int:
    """Apply a revocation token to the stored archives.

    Pairs with `sa revoke-role --no-reencrypt --token-out`; the proxy
    keys track the authority's role parameters and need no token.
    """
    world = _load_state(_state_path(args))
    with open(args.token) as fh:
        doc = json.load(fh)
    role = harness.parse_role(doc["role"])
    touched = world.server.reencrypt_store(role, doc["ratio_forward"])
    _save_state(_state_path(args), world, "cloud-1")
    print(f"re-encrypted {touched} archive(s) affected by {role}")
    return 0


def cmd_cloud_list(args) -> int:
    world = _load_state(_state_path(args))
    names = {v: k for k, v in world.doc_ids.items()}
    for ct_id, ct in world.server.store.items():
        roles = ",".join(str(r) for r in sorted(ct.policy.roles))
        print(f"{ct_id} ({names.get(ct_id, '?')}): owner={ct.policy.owner_org} roles=[{roles}] "
              f"keywords={ct.keyword_count}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbks", description=__doc__)
    parser.add_argument("--state", default=STATE_FILE, help="path of the shared state file")
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="scenario runner").add_subparsers(dest="sub", required=True)
    p = demo.add_parser("run", help="play a YAML scenario and check its expectations")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_demo_run)

    p = sub.add_parser("bench", help="time one protocol phase")
    p.add_argument("phase", choices=bench.PHASES)
    p.add_argument("--gamma", type=int, default=4, help="|Gamma| policy roles (one per org)")
    p.add_argument("--s", type=int, default=4, help="|S| presented roles (trapgen only)")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--sizes", help="comma list; sweep |Gamma| (or |S|) over these")
    p.add_argument("--level", type=int, default=160, choices=pairing.SUPPORTED_LEVELS)
    p.add_argument("--csv", help="also write rows to this CSV file")
    p.set_defaults(func=cmd_bench)

    sa = sub.add_parser("sa", help="system authority").add_subparsers(dest="sub", required=True)
    p = sa.add_parser("setup", help="create organizations and run the joint setup")
    p.add_argument("--org", action="append", required=True, metavar="NAME=HIERARCHY_FILE")
    p.add_argument("--level", type=int, default=pairing.DEFAULT_LEVEL, choices=pairing.SUPPORTED_LEVELS)
    p.add_argument("--cloud-id", default="cloud-1")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_sa_setup)
    p = sa.add_parser("manage-roles", help="re-run role management for one organization")
    p.add_argument("--org", required=True)
    p.add_argument("--hierarchy", help="optional replacement hierarchy file")
    p.set_defaults(func=cmd_sa_manage_roles)
    p = sa.add_parser("keygen-cloud", help="issue cloud keys under a new cloud identity")
    p.add_argument("--cloud-id", required=True)
    p.set_defaults(func=cmd_sa_keygen_cloud)
    p = sa.add_parser("keygen-user", help="issue and publish a user's keys")
    p.add_argument("--user", required=True)
    p.set_defaults(func=cmd_sa_keygen_user)
    p = sa.add_parser("revoke-user", help="complete revocation at one organization")
    p.add_argument("--org", required=True)
    p.add_argument("--user", required=True)
    p.set_defaults(func=cmd_sa_revoke_user)
    p = sa.add_parser("revoke-role", help="role-level revocation with re-encryption")
    p.add_argument("--role", required=True, metavar="ORG/NAME")
    p.add_argument("--exclude", action="append", metavar="USER",
                   help="withhold the key update from this user (repeatable)")
    p.add_argument("--no-reencrypt", action="store_true",
                   help="skip the cloud step; emit a token for `cloud reencrypt`")
    p.add_argument("--no-updates", action="store_true",
                   help="skip key updates; deliver later with `rm push-updates`")
    p.add_argument("--token-out", help="write the cloud's re-encryption token here")
    p.set_defaults(func=cmd_sa_revoke_role)

    rm = sub.add_parser("rm", help="role manager").add_subparsers(dest="sub", required=True)
    p = rm.add_parser("assign-role", help="hand a user the role's search keys")
    p.add_argument("--user", required=True)
    p.add_argument("--role", required=True, metavar="ORG/NAME")
    p.set_defaults(func=cmd_rm_assign_role)
    p = rm.add_parser("push-updates", help="re-sync a user's role keys after revocations")
    p.add_argument("--user", required=True)
    p.add_argument("--org", help="limit to one organization's roles")
    p.set_defaults(func=cmd_rm_push_updates)

    own = sub.add_parser("owner", help="data owner").add_subparsers(dest="sub", required=True)
    p = own.add_parser("encrypt", help="encrypt a file and store it with the cloud")
    p.add_argument("--owner-org", required=True)
    p.add_argument("--policy", required=True, help="comma list of ORG/NAME roles")
    p.add_argument("--keywords", required=True, help="comma list")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--name")
    p.add_argument("--out", help="write the archive to a file instead of storing it")
    p.set_defaults(func=cmd_owner_encrypt)

    usr = sub.add_parser("user", help="search client").add_subparsers(dest="sub", required=True)
    p = usr.add_parser("search", help="authorized keyword search plus decryption")
    p.add_argument("--user", required=True)
    p.add_argument("--org", required=True)
    p.add_argument("--keywords", required=True, help="comma list (conjunction)")
    p.add_argument("--roles", help="comma list; defaults to all held roles")
    p.add_argument("--trapdoor-out", help="also write the trapdoor blob here")
    p.add_argument("--session-out", help="also write the session secret here (for `user decrypt`)")
    p.add_argument("--no-send", action="store_true",
                   help="only generate the trapdoor; submit it with `cloud search`")
    p.set_defaults(func=cmd_user_search)
    p = usr.add_parser("decrypt", help="open partial results from `cloud search`")
    p.add_argument("--user", required=True)
    p.add_argument("--session", required=True, help="file from `user search --session-out`")
    p.add_argument("--results", required=True, help="file from `cloud search --results-out`")
    p.set_defaults(func=cmd_user_decrypt)

    cld = sub.add_parser("cloud", help="cloud server").add_subparsers(dest="sub", required=True)
    p = cld.add_parser("store", help="ingest an archive written by `owner encrypt --out`")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--name")
    p.set_defaults(func=cmd_cloud_store)
    p = cld.add_parser("search", help="process a trapdoor blob; return partial decryptions")
    p.add_argument("--trapdoor", required=True, help="file from `user search --trapdoor-out`")
    p.add_argument("--now", type=int, help="override the freshness clock (testing)")
    p.add_argument("--results-out", help="write partial decryptions here (for `user decrypt`)")
    p.set_defaults(func=cmd_cloud_search)
    p = cld.add_parser("reencrypt", help="apply a role-revocation token to the store")
    p.add_argument("--token", required=True, help="file from `sa revoke-role --token-out`")
    p.set_defaults(func=cmd_cloud_reencrypt)
    p = cld.add_parser("list", help="list stored archives")
    p.set_defaults(func=cmd_cloud_list)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RbksError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
