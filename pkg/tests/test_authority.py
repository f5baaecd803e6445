import random

import pytest

from rbks import authority
from rbks.errors import RootRoleNotRevocable, UnknownRole, UnknownUser
from rbks.hierarchy import RoleId, parse_hierarchy

from conftest import HOSPITAL, TEST_LEVEL


@pytest.fixture
def setup(ctx, rng):
    h = parse_hierarchy("hospital", HOSPITAL)
    pp, masters = authority.system_setup(ctx, ["hospital", "lab"], rng)
    params = authority.manage_role(h, masters["hospital"], ctx, rng)
    return pp, masters, h, params


class TestSystemSetup:
    def test_public_y_matches_group_secret(self, setup, ctx):
        pp, masters, _, _ = setup
        g_y = masters["hospital"].g_y
        assert masters["lab"].g_y == g_y
        assert pp.Y == ctx.pair(g_y, ctx.g)

    def test_h1_commits_to_eta(self, setup, ctx):
        pp, masters, _, _ = setup
        for org, ms in masters.items():
            assert pp.h1[org] == ctx.g ** ms.eta

    def test_single_org_bypass(self, ctx, rng):
        pp, masters = authority.system_setup(ctx, ["solo"], rng)
        assert set(masters) == {"solo"}
        assert pp.Y == ctx.pair(masters["solo"].g_y, ctx.g)

    def test_bad_org_lists(self, ctx, rng):
        with pytest.raises(ValueError):
            authority.system_setup(ctx, [], rng)
        with pytest.raises(ValueError):
            authority.system_setup(ctx, ["a", "a"], rng)


class TestManageRole:
    def test_role_secret_is_ancestor_product(self, setup, ctx):
        # independent recomputation of RS from the raw per-role exponents
        _, _, h, params = setup
        q = int(ctx.q)
        for role, rec in params.records.items():
            expected = 1
            for a in h.ancestor_set(role):
                expected = expected * params.t_of(a) % q
            assert rec.rs == expected
            assert rec.pk == ctx.g ** expected

    def test_root_gets_no_record(self, setup):
        _, _, h, params = setup
        assert h.root not in params.records
        assert params.root_t != 0

    def test_proxy_key_invariant(self, setup, ctx):
        # PKey[target, held] * t_held == RS_target for every issued key
        _, _, h, params = setup
        q = int(ctx.q)
        for (target, held), value in params.proxy.items():
            assert value * params.t_of(held) % q == params.rs_of(target)

    def test_proxy_keys_exist_exactly_for_proper_ancestors(self, setup):
        _, _, h, params = setup
        for role in params.records:
            for other in h.roles:
                expected = other in h.ancestor_set(role) and other != role
                assert ((role, other) in params.proxy) == expected


class TestKeyIssuance:
    def test_cloud_keys_match_master_secret(self, setup, ctx):
        _, masters, _, _ = setup
        ms = masters["hospital"]
        q = int(ctx.q)
        ck = authority.pub_cloud_key_gen(ms, "cloud-9", ctx)
        expected_priv = ctx.hash_h2(
            ms.g_y ** (ctx.hash_h1(b"cloud-9") * ctx.inv_scalar(ms.x) % q)
        )
        assert ck.priv == expected_priv
        assert ck.pub1 == ctx.g ** (ms.mu * ck.priv % q)
        assert ck.pub2 == ctx.g ** (ms.x * ck.priv % q)

    def test_user_global_key_is_org_independent(self, setup, ctx):
        _, masters, _, _ = setup
        a = authority.user_priv_key_gen(masters["hospital"], "alice", ctx)
        b = authority.user_priv_key_gen(masters["lab"], "alice", ctx)
        assert a.priv_global == b.priv_global
        assert a.priv_org != b.priv_org  # org components differ

    def test_user_key_equations(self, setup, ctx):
        _, masters, _, _ = setup
        ms = masters["hospital"]
        q = int(ctx.q)
        uk = authority.user_priv_key_gen(ms, "alice", ctx)
        # priv_org^eta == g_y^Priv * g^x
        assert uk.priv_org ** ms.eta == ms.g_y ** uk.priv_global * ctx.g ** ms.x
        # pub_org^Priv == g^{H2(priv_org)}
        assert uk.pub_org ** uk.priv_global == ctx.g ** ctx.hash_h2(uk.priv_org)
        # user_secret == g_y^Priv * g^mu
        assert uk.user_secret == ms.g_y ** uk.priv_global * ctx.g ** ms.mu


class TestBulletinBoard:
    def test_publish_lookup_remove(self, setup, ctx, rng):
        board = authority.BulletinBoard()
        pub = ctx.random_g1(rng)
        board.publish_user("hospital", "alice", pub)
        assert board.lookup_user("hospital", "alice") == pub
        assert board.lookup_user("hospital", "bob") is None
        authority.revoke_user_complete(board, "hospital", "alice")
        assert board.lookup_user("hospital", "alice") is None
        with pytest.raises(UnknownUser):
            authority.revoke_user_complete(board, "hospital", "alice")


class TestRoleRevocation:
    def test_affected_records_rescaled(self, setup, ctx, rng):
        _, _, h, params = setup
        q = int(ctx.q)
        chief = RoleId("hospital", "chief")
        doctor = RoleId("hospital", "doctor")
        nurse = RoleId("hospital", "nurse")
        before = {r: rec.rs for r, rec in params.records.items()}
        token = authority.revoke_role(params, doctor, ctx, rng)
        assert token.ratio_forward * token.ratio_backward % q == 1
        # only the revoked role itself is downstream of "doctor" here
        assert params.records[doctor].rs == before[doctor] * token.ratio_forward % q
        assert params.records[chief].rs == before[chief]
        assert params.records[nurse].rs == before[nurse]
        assert params.records[doctor].t == token.new_t

    def test_proxy_invariant_survives_revocation(self, setup, ctx, rng):
        _, _, h, params = setup
        q = int(ctx.q)
        token = authority.revoke_role(params, RoleId("hospital", "chief"), ctx, rng)
        for (target, held), value in params.proxy.items():
            assert value * params.t_of(held) % q == params.rs_of(target)

    def test_proxy_entry_for_affected_target_rescaled(self, setup, ctx, rng):
        _, _, h, params = setup
        doctor = RoleId("hospital", "doctor")
        chief = RoleId("hospital", "chief")
        before = params.proxy.get(doctor, chief)
        token = authority.revoke_role(params, doctor, ctx, rng)
        # RS_doctor gained t'/t, and t_chief is unchanged, so the key scales
        assert params.proxy.get(doctor, chief) == before * token.ratio_forward % int(ctx.q)

    def test_root_and_unknown_rejected(self, setup, ctx, rng):
        _, _, h, params = setup
        with pytest.raises(RootRoleNotRevocable):
            authority.revoke_role(params, h.root, ctx, rng)
        with pytest.raises(UnknownRole):
            authority.revoke_role(params, RoleId("hospital", "ghost"), ctx, rng)
