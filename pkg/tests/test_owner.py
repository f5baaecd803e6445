import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from rbks import owner
from rbks.errors import (
    AuthenticationFailure,
    EmptyKeywords,
    EmptyPolicy,
    InvalidEncoding,
    MissingCloudKey,
    MissingRolePK,
)
from rbks.hierarchy import RoleId

from conftest import make_world

DOCTOR = RoleId("hospital", "doctor")
NURSE = RoleId("hospital", "nurse")
RESEARCHER = RoleId("lab", "researcher")

words = st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=5)


@pytest.fixture(scope="module")
def world():
    return make_world(seed=3)


def do_encrypt(world, message=b"msg", keywords=("flu",), roles=(DOCTOR, RESEARCHER), **kw):
    policy = owner.AccessPolicy(frozenset(roles), "hospital")
    return owner.encrypt(
        world.pp,
        world.board.cloud_pubs,
        world.board.role_pks,
        message,
        list(keywords),
        policy,
        world.rng,
        **kw,
    )


class TestKeywordProduct:
    @settings(max_examples=30, deadline=None)
    @given(kws=words)
    def test_order_and_duplicates_do_not_matter(self, ctx, kws):
        shuffled = list(kws)
        random.Random(1).shuffle(shuffled)
        assert owner.keyword_product(ctx, kws) == owner.keyword_product(ctx, shuffled + [kws[0]])

    def test_matches_direct_hash_product(self, ctx):
        q = int(ctx.q)
        expected = ctx.hash_h1(b"a") * ctx.hash_h1(b"b") % q
        assert owner.keyword_product(ctx, ["b", "a"]) == expected

    def test_empty_rejected(self, ctx):
        with pytest.raises(EmptyKeywords):
            owner.keyword_product(ctx, [])


class TestPolicy:
    def test_orgs_derived_from_roles(self):
        policy = owner.AccessPolicy(frozenset({DOCTOR, RESEARCHER}), "hospital")
        assert policy.orgs == ("hospital", "lab")

    def test_empty_policy_rejected(self):
        with pytest.raises(EmptyPolicy):
            owner.AccessPolicy(frozenset(), "hospital")

    def test_owner_must_contribute_a_role(self):
        with pytest.raises(EmptyPolicy):
            owner.AccessPolicy(frozenset({RESEARCHER}), "hospital")


class TestEncrypt:
    def test_components_match_direct_equations(self, world, ctx):
        # recompute every component from the captured randomness and the
        # authorities' raw secrets
        q = int(ctx.q)
        policy_roles = (DOCTOR, RESEARCHER)
        randomness = owner.EncryptionRandomness.sample(ctx, policy_roles, world.rng)
        ct = do_encrypt(world, keywords=("flu", "2026"), randomness=randomness)
        w = owner.keyword_product(ctx, ["flu", "2026"])
        d = {r: randomness.per_role[r][0] for r in policy_roles}
        dp = {r: randomness.per_role[r][1] for r in policy_roles}
        dp_total = sum(dp.values()) % q
        ms_h = world.masters["hospital"]
        priv_h = world.cloud_keys["hospital"].priv
        priv_l = world.cloud_keys["lab"].priv
        assert ct.c2 == ctx.g ** (ms_h.eta * dp_total % q)
        assert ct.c3 == ctx.g ** (ms_h.x * priv_h * dp_total % q)
        assert ct.c4["hospital"] == ctx.g ** (ms_h.mu * priv_h * d[DOCTOR] % q)
        assert ct.c4p["lab"] == ctx.g ** (world.masters["lab"].mu * priv_l * dp[RESEARCHER] % q)
        for r in policy_roles:
            rs = world.role_params[r.org].rs_of(r)
            assert ct.cr[r] == ctx.g ** (rs * d[r] * w % q)
            assert ct.crp[r] == ctx.g ** (rs * dp[r] * w % q)
        # C1 hides a K that opens the payload
        total = (sum(d.values()) + dp_total) % q
        K = ct.c1 / world.pp.Y ** total
        assert owner.unwrap_payload(K, ct.payload) == b"msg"

    def test_missing_role_pk(self, world):
        with pytest.raises(MissingRolePK):
            do_encrypt(world, roles=(DOCTOR, RoleId("hospital", "ghost")))

    def test_missing_cloud_key(self, world):
        policy = owner.AccessPolicy(frozenset({DOCTOR}), "hospital")
        with pytest.raises(MissingCloudKey):
            owner.encrypt(world.pp, {}, world.board.role_pks, b"m", ["w"], policy)

    def test_op_counts_match_direct_equation_count(self, world, ctx):
        # 2 + 2|Gamma| + 2|Gamma_Phi| G1-exps and one GT-exp
        for roles in [(DOCTOR,), (DOCTOR, RESEARCHER), (DOCTOR, NURSE, RESEARCHER)]:
            n_orgs = len({r.org for r in roles})
            ctx.reset_counters()
            do_encrypt(world, roles=roles)
            snap = ctx.snapshot_counters()
            assert snap["g1_exp"] == 2 + 2 * len(roles) + 2 * n_orgs
            assert snap["gt_exp"] == 1
            assert snap["pairing"] == 0


class TestPayloadWrap:
    def test_round_trip(self, ctx, rng):
        K = ctx.random_gt(rng)
        blob = owner.wrap_payload(K, b"secret bytes")
        assert owner.unwrap_payload(K, blob) == b"secret bytes"

    def test_wrong_key_fails(self, ctx, rng):
        K1, K2 = ctx.random_gt(rng), ctx.random_gt(rng)
        blob = owner.wrap_payload(K1, b"secret")
        with pytest.raises(AuthenticationFailure):
            owner.unwrap_payload(K2, blob)

    def test_tampered_blob_fails(self, ctx, rng):
        K = ctx.random_gt(rng)
        blob = bytearray(owner.wrap_payload(K, b"secret"))
        blob[-1] ^= 1
        with pytest.raises(AuthenticationFailure):
            owner.unwrap_payload(K, bytes(blob))

    def test_short_blob_fails(self, ctx, rng):
        with pytest.raises(AuthenticationFailure):
            owner.unwrap_payload(ctx.random_gt(rng), b"short")


class TestArchiveFormat:
    def test_round_trip(self, world, ctx):
        ct = do_encrypt(world, message=b"payload", keywords=("flu", "audit"))
        again = owner.ciphertext_from_bytes(ctx, owner.ciphertext_to_bytes(ct))
        assert again.policy == ct.policy
        assert again.keyword_count == ct.keyword_count
        assert again.payload == ct.payload
        assert again.c1 == ct.c1 and again.c2 == ct.c2 and again.c3 == ct.c3
        assert again.c4 == ct.c4 and again.c4p == ct.c4p
        assert again.cr == ct.cr and again.crp == ct.crp

    def test_keywords_never_serialized(self, world):
        ct = do_encrypt(world, keywords=("topsecretword",))
        blob = owner.ciphertext_to_bytes(ct)
        assert b"topsecretword" not in blob
        assert "keywords" not in json.loads(blob)
        # only the count is visible
        assert json.loads(blob)["keyword_count"] == 1

    def test_malformed_blobs_rejected(self, world, ctx):
        blob = owner.ciphertext_to_bytes(do_encrypt(world))
        doc = json.loads(blob)
        doc["c1"] = "AAAA"
        with pytest.raises(InvalidEncoding):
            owner.ciphertext_from_bytes(ctx, json.dumps(doc).encode())
        with pytest.raises(InvalidEncoding):
            owner.ciphertext_from_bytes(ctx, b"not json")
        doc = json.loads(blob)
        doc["kind"] = "trapdoor"
        with pytest.raises(InvalidEncoding):
            owner.ciphertext_from_bytes(ctx, json.dumps(doc).encode())
