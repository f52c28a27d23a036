"""Reference computations that share no code with the package.

Everything here is deliberately naive: exact ``Fraction`` arithmetic,
brute-force search, textbook formulas.
"""

from __future__ import annotations

from fractions import Fraction


def vp(n: int, p: int) -> int:
    assert n != 0
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_frac(x: Fraction, p: int) -> int:
    return vp(x.numerator, p) - vp(x.denominator, p)


def frac_mod(x: Fraction, mod: int) -> int:
    """Reduce an ℓ-integral fraction modulo ``mod``."""
    return x.numerator * pow(x.denominator, -1, mod) % mod


def log_oracle(u: int | Fraction, ell: int, k: int) -> int:
    """Log_Iw(u) mod ℓ^k for an ℓ-adic unit u ∈ ℚ, by exact partial sums.

    Uses Log(u) = log(u^(ℓ-1))/(ℓ-1) for odd ℓ and log(u²)/2 for ℓ = 2,
    which kills the root of unity without ever computing it.
    """
    u = Fraction(u)
    assert vp_frac(u, ell) == 0
    power = 2 if ell == 2 else ell - 1
    extra = 1 if ell == 2 else 0  # we divide by 2 at the end
    z = u**power - 1
    if z == 0:
        return 0
    vz = vp_frac(z, ell)
    assert vz >= (2 if ell == 2 else 1)
    target = k + extra
    total = Fraction(0)
    n = 1
    term = z
    while True:
        # v(z^n / n) = n*vz - v(n) and that is increasing for n past this point
        if n * vz - _floor_log(ell, n) >= target + 1:
            break
        total += (term if n % 2 else -term) / n
        term *= z
        n += 1
    return frac_mod(total / power, ell**k)


def _floor_log(ell: int, n: int) -> int:
    k = 0
    while ell ** (k + 1) <= n:
        k += 1
    return k


def legendre(a: int, p: int) -> int:
    """Euler's criterion, p an odd prime."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert(a: Fraction, b: Fraction, p) -> int:
    """Hilbert symbol (a, b)_p over ℚ, p a prime or the string 'inf'."""
    a, b = Fraction(a), Fraction(b)
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    # reduce rationals to integers modulo squares: a = num/den ~ num*den
    a = a.numerator * a.denominator
    b = b.numerator * b.denominator
    alpha, beta = vp(a, p), vp(b, p)
    u, v = a // p**alpha, b // p**beta
    if p != 2:
        sign = (-1) ** (alpha * beta * ((p - 1) // 2))
        return sign * legendre(u, p) ** beta * legendre(v, p) ** alpha
    e = lambda x: ((x - 1) // 2) % 2  # noqa: E731
    w = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
    return (-1) ** ((e(u) * e(v) + alpha * w(v) + beta * w(u)) % 2)


def is_square_qp(d: int, p: int) -> bool:
    """Is the nonzero integer d a square in ℚ_p?  Brute force mod 8 at p = 2."""
    v = vp(d, p)
    if v % 2:
        return False
    u = d // p**v
    if p != 2:
        return legendre(u, p) == 1
    return any(x * x % 8 == u % 8 for x in (1, 3, 5, 7))


def quad_local_degree(d: int, p: int) -> int:
    return 1 if is_square_qp(d, p) else 2


def quad_log_unramified_at_2(d: int) -> bool:
    """ℚ_2(√d) sits inside the cyclotomic ℤ_2-extension iff it is ℚ_2 or ℚ_2(√2)."""
    return is_square_qp(d, 2) or (d % 2 == 0 and is_square_qp(d // 2, 2))


def tower_local_degree(ell: int, n: int, p: int) -> int:
    """[B_n,𝔭 : ℚ_p] by brute force on (ℤ/ℓ^(n+1))^× modulo the μ_(ℓ-1) part."""
    if p == ell:
        return ell**n
    mod = ell ** (n + 1)
    j = 1
    while pow(p, j * (ell - 1), mod) != 1:
        j += 1
    return j


def tower_frobenius_t(ell: int, n: int, p: int) -> int:
    """Brute-force discrete log: t with (1+ℓ)^(t(ℓ-1)) ≡ p^(ℓ-1) mod ℓ^(n+1)."""
    mod = ell ** (n + 1)
    target = pow(p, ell - 1, mod)
    g = pow(1 + ell, ell - 1, mod)
    x = 1
    for t in range(ell**n):
        if x == target:
            return t
        x = x * g % mod
    raise AssertionError("no discrete log found")


def quad_image_kronecker(d: int, a: Fraction) -> int:
    """Artin image of diṽ(a) in Gal(ℚ(√d)/ℚ), recomputed from scratch.

    Odd primes p ∤ d contribute Legendre(d, p)^v_p(a).  The prime 2, when d
    is a 2-adic square, contributes nothing; when ℚ_2(√d) = ℚ_2(√2) the
    contribution is -1 to the parity of the 2-adic log valuation of a,
    which is odd exactly when the odd part of a is ±3 mod 8.
    """
    a = Fraction(a)
    sign = 1
    for x in (abs(a.numerator), a.denominator):
        for p, e in trial_factor(x).items():
            if p != 2 and d % p:
                sign *= legendre(d, p) ** e
    if quad_log_unramified_at_2(d) and not is_square_qp(d, 2):
        num, den = abs(a.numerator), a.denominator
        num //= 2 ** vp(num, 2)
        den //= 2 ** vp(den, 2)
        if num * den % 8 in (3, 5):
            sign = -sign
    return sign


def trial_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def hilbert_defect(d: int, a: Fraction, places) -> int:
    """Π_v (a, d)_v over the given places."""
    out = 1
    for v in places:
        out *= hilbert(Fraction(a), Fraction(d), v)
    return out
