"""Integer number-theory helpers shared by the other modules."""

from __future__ import annotations

from functools import lru_cache

from sympy import factorint, isprime

__all__ = [
    "is_prime",
    "factor",
    "v_p",
    "kronecker",
    "squarefree_part",
    "is_squarefree",
    "ceil_log",
    "floor_log",
    "sqrt_mod_prime_power",
]


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple:
    return tuple(sorted(factorint(n).items()))


def factor(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    if n == 1:
        return {}
    return dict(_factor_cached(n))


def v_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extending Jacobi to all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_part(d: int) -> int:
    """Signed squarefree kernel: d = squarefree_part(d) * m**2."""
    if d == 0:
        raise ValueError("0 has no squarefree part")
    out = -1 if d < 0 else 1
    for p, e in factor(d).items():
        if e % 2:
            out *= p
    return out


def is_squarefree(d: int) -> bool:
    return d != 0 and all(e == 1 for e in factor(d).values())


def floor_log(ell: int, n: int) -> int:
    """Largest j with ell**j <= n (n >= 1)."""
    j, power = 0, ell
    while power <= n:
        power *= ell
        j += 1
    return j


def ceil_log(ell: int, n: int) -> int:
    """Smallest j with ell**j >= n (n >= 1)."""
    j, power = 0, 1
    while power < n:
        power *= ell
        j += 1
    return j


def sqrt_mod_prime_power(a: int, p: int, k: int) -> int:
    """A square root of the unit ``a`` modulo ``p**k``, canonically chosen.

    For odd p the root is the Hensel lift of the smaller root mod p; for
    p = 2 (which requires a ≡ 1 mod 8) it is the root ≡ 1 mod 4, correct
    modulo ``2**k``.
    """
    if p == 2:
        if a % 8 != 1:
            raise ValueError(f"{a} is not a square unit in Q_2")
        # x^2 ≡ a mod 2^(j+1) fixes x mod 2^j; lift one bit at a time.
        x = 1
        for j in range(3, k + 1):
            if (x * x - a) % 2 ** (j + 1):
                x += 2 ** (j - 1)
        x %= 2**k
        if x % 4 == 3:
            x = (-x) % 2**k
        return x
    a0 = a % p
    if a0 == 0:
        raise ValueError("not a unit")
    r = next((x for x in range(1, p) if x * x % p == a0), None) if p < 64 else None
    if r is None:
        from sympy.ntheory import sqrt_mod

        roots = sqrt_mod(a0, p, all_roots=True)
        if not roots:
            raise ValueError(f"{a} is not a square mod {p}")
        r = min(roots)
    return _hensel_lift_sqrt(r, a, p, k)


def _hensel_lift_sqrt(r: int, a: int, p: int, k: int) -> int:
    mod, j = p, 1
    while j < k:
        j = min(2 * j, k)
        mod = p**j
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r % p**k
