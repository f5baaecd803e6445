import gmpy2
import pytest
from hypothesis import given, settings, strategies as st

from rbks import pairing
from rbks.errors import InvalidEncoding, UnsupportedSecurityLevel

scalars = st.integers(min_value=1, max_value=2**64)


class TestParameters:
    @pytest.mark.parametrize("level", pairing.SUPPORTED_LEVELS)
    def test_pinned_parameters_are_consistent(self, level):
        params = pairing._PARAMS[level]
        assert gmpy2.is_prime(params.q)
        assert gmpy2.is_prime(params.p)
        assert params.p % 4 == 3  # supersingular curve construction
        assert params.p + 1 == params.h * params.q
        assert params.q.bit_length() == level

    def test_unsupported_level_rejected(self):
        with pytest.raises(UnsupportedSecurityLevel):
            pairing.setup_context(128)


class TestGroupLaws:
    def test_generator_has_order_q(self, ctx):
        assert not ctx.g.is_identity()
        assert (ctx.g ** int(ctx.q)).is_identity()

    def test_identity_laws(self, ctx, rng):
        p = ctx.random_g1(rng)
        assert p * ctx.g1_identity() == p
        assert p * p.inverse() == ctx.g1_identity()
        e = ctx.random_gt(rng)
        assert e * ctx.gt_identity() == e
        assert e * e.inverse() == ctx.gt_identity()

    def test_exponent_arithmetic(self, ctx, rng):
        a, b = ctx.random_scalar(rng), ctx.random_scalar(rng)
        assert ctx.g ** a * ctx.g ** b == ctx.g ** ((a + b) % int(ctx.q))
        assert (ctx.g ** a) ** b == ctx.g ** (a * b % int(ctx.q))

    def test_scalar_inverse(self, ctx, rng):
        a = ctx.random_scalar(rng)
        assert a * ctx.inv_scalar(a) % int(ctx.q) == 1


class TestPairing:
    @settings(max_examples=10, deadline=None)
    @given(a=scalars, b=scalars)
    def test_bilinearity(self, ctx, a, b):
        assert ctx.pair(ctx.g ** a, ctx.g ** b) == ctx.gt_gen ** (a * b)

    def test_symmetry(self, ctx, rng):
        p, q = ctx.random_g1(rng), ctx.random_g1(rng)
        assert ctx.pair(p, q) == ctx.pair(q, p)

    def test_non_degenerate(self, ctx):
        assert not ctx.gt_gen.is_identity()
        assert (ctx.gt_gen ** int(ctx.q)).is_identity()

    def test_left_linear(self, ctx, rng):
        p, q = ctx.random_g1(rng), ctx.random_g1(rng)
        r = ctx.random_g1(rng)
        assert ctx.pair(p * q, r) == ctx.pair(p, r) * ctx.pair(q, r)


class TestHashing:
    def test_h1_deterministic_and_in_range(self, ctx):
        v = ctx.hash_h1(b"keyword")
        assert v == ctx.hash_h1(b"keyword")
        assert 1 <= v < int(ctx.q)
        assert v != ctx.hash_h1(b"keyword2")

    def test_h2_depends_on_element(self, ctx, rng):
        a, b = ctx.random_g1(rng), ctx.random_g1(rng)
        assert ctx.hash_h2(a) == ctx.hash_h2(a)
        assert ctx.hash_h2(a) != ctx.hash_h2(b)


class TestSerialization:
    @settings(max_examples=10, deadline=None)
    @given(a=scalars)
    def test_g1_round_trip(self, ctx, a):
        p = ctx.g ** a
        assert ctx.g1_from_bytes(p.to_bytes()) == p

    def test_gt_round_trip(self, ctx, rng):
        e = ctx.random_gt(rng)
        assert ctx.gt_from_bytes(e.to_bytes()) == e

    def test_scalar_round_trip(self, ctx, rng):
        n = ctx.random_scalar(rng)
        assert ctx.scalar_from_bytes(ctx.scalar_to_bytes(n)) == n

    def test_identity_round_trip(self, ctx):
        assert ctx.g1_from_bytes(ctx.g1_identity().to_bytes()).is_identity()

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda b: b[:-1],  # truncated
            lambda b: b"\x00\x02" + b[2:],  # wrong version
            lambda b: b[:2] + b"\x54" + b[3:],  # wrong tag
            lambda b: b + b"\x00",  # trailing junk
        ],
    )
    def test_malformed_g1_rejected(self, ctx, mutate):
        blob = mutate(ctx.g.to_bytes())
        with pytest.raises(InvalidEncoding):
            ctx.g1_from_bytes(blob)

    def test_off_curve_point_rejected(self, ctx):
        blob = bytearray(ctx.g.to_bytes())
        blob[-1] ^= 1
        with pytest.raises(InvalidEncoding):
            ctx.g1_from_bytes(bytes(blob))


class TestCounters:
    def test_operations_are_counted(self, ctx, rng):
        ctx.reset_counters()
        _ = ctx.g ** 5
        _ = ctx.gt_gen ** 7
        _ = ctx.pair(ctx.g, ctx.g)
        _ = ctx.hash_h1(b"x")
        snap = ctx.snapshot_counters()
        assert snap["g1_exp"] == 1
        assert snap["gt_exp"] == 1
        assert snap["pairing"] == 1
        assert snap["hash"] == 1

    def test_paused_counters(self, ctx):
        ctx.reset_counters()
        with ctx.paused_counters():
            _ = ctx.g ** 5
            _ = ctx.pair(ctx.g, ctx.g)
        assert ctx.snapshot_counters() == {"g1_exp": 0, "gt_exp": 0, "pairing": 0, "hash": 0}

    def test_reset(self, ctx):
        _ = ctx.g ** 3
        ctx.reset_counters()
        assert sum(ctx.snapshot_counters().values()) == 0
