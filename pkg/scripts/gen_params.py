"""One-off generator for the pinned type-A curve parameters in rbks.pairing.

Finds, for each group-order size, a prime q and a cofactor h (multiple of 4)
such that p = h*q - 1 is prime and p = 3 mod 4.  The curve y^2 = x^3 + x over
F_p is then supersingular with #E(F_p) = p + 1 = h*q.
"""

import random

import gmpy2
from gmpy2 import mpz


def find_params(qbits: int, pbits: int, seed: int):
    rng = random.Random(seed)
    while True:
        q = mpz(rng.getrandbits(qbits) | (1 << (qbits - 1)) | 1)
        q = gmpy2.next_prime(q)
        if q.bit_length() != qbits:
            continue
        # h must be = 0 mod 4 so that p = h*q - 1 = 3 mod 4
        h0 = (mpz(1) << (pbits - qbits)) + rng.getrandbits(pbits - qbits - 1)
        h0 -= h0 % 4
        for i in range(20000):
            h = h0 + 4 * i
            p = h * q - 1
            if p % 4 == 3 and gmpy2.is_prime(p):
                return q, h, p
        # rare: retry with a new q


for qbits, pbits in [(160, 512), (224, 1024), (256, 1536)]:
    q, h, p = find_params(qbits, pbits, seed=qbits)
    assert gmpy2.is_prime(q) and gmpy2.is_prime(p)
    assert (p + 1) % q == 0 and p % 4 == 3
    print(f"    {qbits}: _CurveParams(")
    print(f"        q={q},")
    print(f"        p={p},")
    print(f"        h={h},")
    print("    ),")
