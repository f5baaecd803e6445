"""Symmetric bilinear group over a type-A supersingular curve.

The curve is y^2 = x^3 + x over F_p with p = 3 (mod 4), which is
supersingular with #E(F_p) = p + 1 and embedding degree 2.  G1 is the
order-q subgroup of E(F_p) and GT the order-q subgroup of F_{p^2}^*.
The pairing is the reduced Tate pairing composed with the distortion
map (x, y) -> (-x, i*y), which makes it symmetric in its arguments.

Group operations are written multiplicatively: ``a * b`` combines two
elements and ``a ** n`` is the n-fold combination, matching the usual
multiplicative-group notation of pairing-based schemes.
"""

from __future__ import annotations

import contextlib
import hashlib
import secrets
from dataclasses import dataclass
from typing import Iterator, Optional

from gmpy2 import invert, mpz

from .errors import InvalidEncoding, UnsupportedSecurityLevel

_ENC_VERSION = b"\x00\x01"
_TAG_SCALAR = 0x53
_TAG_G1 = 0x47
_TAG_GT = 0x54


@dataclass(frozen=True)
class _CurveParams:
    q: int  # prime group order
    p: int  # field prime, p + 1 = h * q
    h: int  # cofactor


# Pinned parameters, one set per supported group-order size (bits of q).
# Generated once by scripts/gen_params.py; the 160-bit set matches the
# classic type-A configuration (|p| = 512, so F_{p^2} gives ~1024-bit DL).
_PARAMS = {
    160: _CurveParams(
        q=985637500809180948761312658996096957777650292257,
        p=10004051429128194087953598564590771814075032760618754715587582206636905312288411221677479302642850714344379702197681170148462439059272410995092519990203783,
        h=10149828330309212433444892386968662703327292201196379783312883804236811521422790747579612196221065615103112,
    ),
    224: _CurveParams(
        q=14429400695140254055781974879681780447870654586835241314214942613029,
        p=133017473793998151753344735267004060467413804202667530254783880509423877821118977078378682190224848063184443986832433445313375256951216631024192625161383954091292249027343617947764038716840206780321294518473285491942826968054706665680726564525124290186167522016115195847291687157161799212634854284144557067227,
        h=9218503013697425034840320031588603334428321172667530553545751975815097212567299653436471271254429902413851422779230125189960459636796219407492898858939951408346093895569236179174251701960077153781933455693744853961134445223086734930708770732,
    ),
    256: _CurveParams(
        q=110836921891709048621641985493033003582278959419575771108654709201605151247817,
        p=3278944567458099297836771344878602282831343265102933765625975458652725344575900199819094339686821355560607678869105356231562450066422839893215649742492414664387047355832624755637143322580492638892431596483099849553068732570427904150215520599074735690052536966539883993277260334577219286471234928591726480365096327235369472410742819305579904160654991771585175303089338223019653880911401596985176173530763640322657793570284729138293885916611424502630472472307150467,
        h=29583504408952507138262890835643685723277427101156943687389795931276597569512802961996499660000971648735926528311372860966902529394763012685890715291450303671238154246372388749906485219935384165688771624805258384114126301232524418101221851457994516896193616760902755671422173034378029578033562151878341578167933296412077844800254817022563955651362007445792164567566663983157664468757604,
    ),
}

SUPPORTED_LEVELS = tuple(sorted(_PARAMS))
DEFAULT_LEVEL = 224


class G1Element:
    """Point in the order-q subgroup of E(F_p), written multiplicatively."""

    __slots__ = ("ctx", "x", "y")

    def __init__(self, ctx: "BilinearContext", x: Optional[mpz], y: Optional[mpz]):
        self.ctx = ctx
        self.x = x  # None encodes the identity (point at infinity)
        self.y = y

    def is_identity(self) -> bool:
        return self.x is None

    def __mul__(self, other: "G1Element") -> "G1Element":
        return self.ctx._g1_add(self, other)

    def __truediv__(self, other: "G1Element") -> "G1Element":
        return self.ctx._g1_add(self, other.inverse())

    def inverse(self) -> "G1Element":
        if self.is_identity():
            return self
        return G1Element(self.ctx, self.x, (-self.y) % self.ctx.p)

    def __pow__(self, n: int) -> "G1Element":
        self.ctx._count("g1_exp")
        return self.ctx._g1_mul(self, n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, G1Element)
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def to_bytes(self) -> bytes:
        plen = self.ctx._plen
        if self.is_identity():
            body = b"\x00" + b"\x00" * plen
        else:
            sign = 2 + int(self.y & 1)
            body = bytes([sign]) + int(self.x).to_bytes(plen, "big")
        return _ENC_VERSION + bytes([_TAG_G1]) + body

    def __repr__(self) -> str:
        if self.is_identity():
            return "G1Element(identity)"
        return f"G1Element(x={int(self.x):#x})"


class GTElement:
    """Element of the order-q subgroup of F_{p^2}^*, stored as a + b*i."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx: "BilinearContext", a: mpz, b: mpz):
        self.ctx = ctx
        self.a = a
        self.b = b

    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0

    def __mul__(self, other: "GTElement") -> "GTElement":
        p = self.ctx.p
        a = (self.a * other.a - self.b * other.b) % p
        b = (self.a * other.b + self.b * other.a) % p
        return GTElement(self.ctx, a, b)

    def __truediv__(self, other: "GTElement") -> "GTElement":
        return self * other.inverse()

    def inverse(self) -> "GTElement":
        p = self.ctx.p
        n = invert((self.a * self.a + self.b * self.b) % p, p)
        return GTElement(self.ctx, (self.a * n) % p, (-self.b * n) % p)

    def __pow__(self, n: int) -> "GTElement":
        self.ctx._count("gt_exp")
        return self.ctx._gt_pow(self, n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GTElement)
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def to_bytes(self) -> bytes:
        plen = self.ctx._plen
        body = int(self.a).to_bytes(plen, "big") + int(self.b).to_bytes(plen, "big")
        return _ENC_VERSION + bytes([_TAG_GT]) + body

    def __repr__(self) -> str:
        return f"GTElement(a={int(self.a):#x})"


class BilinearContext:
    """Shared group stage: curve, generator, pairing and the two hashes.

    Immutable after construction apart from the operation counters,
    which exist for benchmarking and test telemetry only.
    """

    def __init__(self, security_level: int = DEFAULT_LEVEL):
        if security_level not in _PARAMS:
            raise UnsupportedSecurityLevel(
                f"group-order size {security_level} not in {SUPPORTED_LEVELS}"
            )
        params = _PARAMS[security_level]
        self.security_level = security_level
        self.q = mpz(params.q)
        self.p = mpz(params.p)
        self.h = mpz(params.h)
        self._plen = (params.p.bit_length() + 7) // 8
        self._qlen = (params.q.bit_length() + 7) // 8
        self.counters = {"g1_exp": 0, "gt_exp": 0, "pairing": 0, "hash": 0}
        self._counting = True
        self.g = self._find_generator()
        with self.paused_counters():
            self.gt_gen = self.pair(self.g, self.g)  # e(g, g), cached
        if self.gt_gen.is_identity():
            raise AssertionError("degenerate pairing; bad parameters")

    # -- telemetry ----------------------------------------------------

    def _count(self, op: str) -> None:
        if self._counting:
            self.counters[op] += 1

    def reset_counters(self) -> None:
        for k in self.counters:
            self.counters[k] = 0

    def snapshot_counters(self) -> dict:
        return dict(self.counters)

    @contextlib.contextmanager
    def paused_counters(self) -> Iterator[None]:
        prev = self._counting
        self._counting = False
        try:
            yield
        finally:
            self._counting = prev

    # -- group construction -------------------------------------------

    def _find_generator(self) -> G1Element:
        p = self.p
        ctr = 0
        while True:
            seed = hashlib.sha512(b"rbks:gen:%d:%d" % (self.security_level, ctr)).digest()
            x = mpz(int.from_bytes(seed, "big") % p)
            rhs = (x * x * x + x) % p
            if pow(rhs, (p - 1) // 2, p) == 1:
                y = pow(rhs, (p + 1) // 4, p)
                # clear the cofactor with an unreduced scalar multiply
                pt = self._g1_mul_raw(G1Element(self, x, mpz(y)), int(self.h))
                if not pt.is_identity():
                    assert self._g1_mul_raw(pt, int(self.q)).is_identity()
                    return pt
            ctr += 1

    def g1_identity(self) -> G1Element:
        return G1Element(self, None, None)

    def gt_identity(self) -> GTElement:
        return GTElement(self, mpz(1), mpz(0))

    # -- curve arithmetic (affine) ------------------------------------

    def _g1_add(self, P: G1Element, Q: G1Element) -> G1Element:
        if P.is_identity():
            return Q
        if Q.is_identity():
            return P
        p = self.p
        if P.x == Q.x:
            if (P.y + Q.y) % p == 0:
                return self.g1_identity()
            lam = (3 * P.x * P.x + 1) * invert(2 * P.y, p) % p
        else:
            lam = (Q.y - P.y) * invert(Q.x - P.x, p) % p
        x3 = (lam * lam - P.x - Q.x) % p
        y3 = (lam * (P.x - x3) - P.y) % p
        return G1Element(self, x3, y3)

    def _g1_mul(self, P: G1Element, n: int) -> G1Element:
        return self._g1_mul_raw(P, n % self.q)

    def _g1_mul_raw(self, P: G1Element, n: int) -> G1Element:
        if n == 0 or P.is_identity():
            return self.g1_identity()
        R = self.g1_identity()
        A = P
        for bit in bin(n)[2:]:
            R = self._g1_add(R, R)
            if bit == "1":
                R = self._g1_add(R, A)
        return R

    def _gt_pow(self, e: GTElement, n: int) -> GTElement:
        n = n % self.q
        r = self.gt_identity()
        if n == 0:
            return r
        a = e
        for bit in bin(n)[2:]:
            r = r * r
            if bit == "1":
                r = r * a
        return r

    # -- pairing -------------------------------------------------------

    def pair(self, P: G1Element, Q: G1Element) -> GTElement:
        """Reduced Tate pairing e(P, phi(Q)); bilinear and symmetric."""
        self._count("pairing")
        if P.is_identity() or Q.is_identity():
            return self.gt_identity()
        p = self.p
        xq = (-Q.x) % p  # phi(Q) = (-x, i*y): x-coordinate stays in F_p
        yq = Q.y
        fa, fb = mpz(1), mpz(0)
        tx, ty = P.x, P.y
        inf = False
        for bit in bin(int(self.q))[3:]:
            # f <- f^2 * l_{T,T}(phi(Q)); T <- 2T
            if not inf:
                lam = (3 * tx * tx + 1) * invert(2 * ty, p) % p
                la = (-ty - lam * (xq - tx)) % p
                a2 = (fa * fa - fb * fb) % p
                b2 = (2 * fa * fb) % p
                fa = (a2 * la - b2 * yq) % p
                fb = (a2 * yq + b2 * la) % p
                x3 = (lam * lam - 2 * tx) % p
                ty = (lam * (tx - x3) - ty) % p
                tx = x3
            if bit == "1" and not inf:
                # f <- f * l_{T,P}(phi(Q)); T <- T + P
                if tx == P.x:
                    # vertical line lies in F_p: killed by final exponentiation
                    inf = True
                else:
                    lam = (P.y - ty) * invert(P.x - tx, p) % p
                    la = (-ty - lam * (xq - tx)) % p
                    na = (fa * la - fb * yq) % p
                    fb = (fa * yq + fb * la) % p
                    fa = na
                    x3 = (lam * lam - tx - P.x) % p
                    ty = (lam * (tx - x3) - ty) % p
                    tx = x3
        # final exponentiation: f^(p-1) via conjugate/inverse, then ^((p+1)/q)
        n = invert((fa * fa + fb * fb) % p, p)
        ia, ib = (fa * n) % p, (-fb * n) % p  # f^-1
        ra = (fa * ia + fb * ib) % p  # conj(f) * f^-1
        rb = (fa * ib - fb * ia) % p
        ea, eb = mpz(1), mpz(0)
        for bit in bin(int(self.h))[2:]:
            na = (ea * ea - eb * eb) % p
            eb = (2 * ea * eb) % p
            ea = na
            if bit == "1":
                na = (ea * ra - eb * rb) % p
                eb = (ea * rb + eb * ra) % p
                ea = na
        return GTElement(self, ea, eb)

    # -- hash functions ------------------------------------------------

    def _hash_to_scalar(self, domain: bytes, data: bytes) -> int:
        ctr = 0
        while True:
            digest = hashlib.sha512(
                b"rbks:%s:%d:" % (domain, self.security_level) + ctr.to_bytes(4, "big") + data
            ).digest()
            v = int.from_bytes(digest, "big") % self.q
            if v != 0:
                return v
            ctr += 1

    def hash_h1(self, data: bytes) -> int:
        """Hash arbitrary bytes to a nonzero scalar mod q."""
        self._count("hash")
        return self._hash_to_scalar(b"h1", data)

    def hash_h2(self, element: G1Element) -> int:
        """Hash a group element (via its canonical encoding) to a nonzero scalar."""
        self._count("hash")
        return self._hash_to_scalar(b"h2", element.to_bytes())

    # -- sampling ------------------------------------------------------

    def random_scalar(self, rng=None) -> int:
        """Uniform nonzero scalar; cryptographic entropy unless rng is given."""
        if rng is None:
            return secrets.randbelow(int(self.q) - 1) + 1
        return rng.randrange(1, int(self.q))

    def random_g1(self, rng=None) -> G1Element:
        with self.paused_counters():
            return self._g1_mul(self.g, self.random_scalar(rng))

    def random_gt(self, rng=None) -> GTElement:
        with self.paused_counters():
            return self._gt_pow(self.gt_gen, self.random_scalar(rng))

    # -- scalar helpers ------------------------------------------------

    def inv_scalar(self, n: int) -> int:
        return int(invert(n % self.q, self.q))

    # -- serialization -------------------------------------------------

    def scalar_to_bytes(self, n: int) -> bytes:
        return _ENC_VERSION + bytes([_TAG_SCALAR]) + (n % self.q).to_bytes(self._qlen, "big")

    def scalar_from_bytes(self, blob: bytes) -> int:
        body = self._check_frame(blob, _TAG_SCALAR, self._qlen)
        v = int.from_bytes(body, "big")
        if v >= self.q:
            raise InvalidEncoding("scalar out of range")
        return v

    def g1_from_bytes(self, blob: bytes) -> G1Element:
        body = self._check_frame(blob, _TAG_G1, 1 + self._plen)
        sign, xb = body[0], body[1:]
        if sign == 0:
            return self.g1_identity()
        if sign not in (2, 3):
            raise InvalidEncoding("bad point flag")
        p = self.p
        x = mpz(int.from_bytes(xb, "big"))
        if x >= p:
            raise InvalidEncoding("coordinate out of range")
        rhs = (x * x * x + x) % p
        y = pow(rhs, (p + 1) // 4, p)
        if (y * y) % p != rhs:
            raise InvalidEncoding("not on curve")
        if int(y & 1) != sign - 2:
            y = (-y) % p
        pt = G1Element(self, x, mpz(y))
        if not self._g1_mul_raw(pt, int(self.q)).is_identity():
            raise InvalidEncoding("not in the prime-order subgroup")
        return pt

    def gt_from_bytes(self, blob: bytes) -> GTElement:
        body = self._check_frame(blob, _TAG_GT, 2 * self._plen)
        a = mpz(int.from_bytes(body[: self._plen], "big"))
        b = mpz(int.from_bytes(body[self._plen :], "big"))
        if a >= self.p or b >= self.p:
            raise InvalidEncoding("coordinate out of range")
        return GTElement(self, a, b)

    def _check_frame(self, blob: bytes, tag: int, size: int) -> bytes:
        if len(blob) != len(_ENC_VERSION) + 1 + size:
            raise InvalidEncoding("wrong length")
        if blob[:2] != _ENC_VERSION:
            raise InvalidEncoding("unknown encoding version")
        if blob[2] != tag:
            raise InvalidEncoding("type tag mismatch")
        return blob[3:]


def setup_context(security_level: int = DEFAULT_LEVEL) -> BilinearContext:
    """Build the shared bilinear context for a supported group-order size."""
    return BilinearContext(security_level)
