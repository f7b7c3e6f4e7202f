//! Small exact-integer utilities shared across the crate.

use num::integer::Integer;

/// Greatest common divisor of two `u64`s.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Least common multiple of two `u64`s.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// The `p`-adic valuation `v_p(n)` for `n > 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(n > 0 && p >= 2);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The `p`-part `p^{v_p(n)}` of `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(valuation(n, p))
}

/// The `p'`-part `n / p^{v_p(n)}` of `n`.
pub fn p_prime_part(n: u64, p: u64) -> u64 {
    n / p_part(n, p)
}

/// Prime factorization as `(p, multiplicity)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut m = 0;
            while n % d == 0 {
                n /= d;
                m += 1;
            }
            out.push((d, m));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors in ascending order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Deterministic primality test by trial division (fine for the sizes here).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, m) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..m {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` without overflow.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Modular inverse of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn inv_mod(a: u64, m: u64) -> u64 {
    assert!(m > 0);
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "inv_mod: {a} not invertible mod {m}");
    t0.rem_euclid(m as i128) as u64
}

/// Solve `x ≡ a (mod m)`, `x ≡ b (mod n)` for coprime `m`, `n`;
/// returns the unique solution mod `m·n`.
pub fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    debug_assert_eq!(gcd(m, n), 1);
    let mn = m as u128 * n as u128;
    // x = a + m * t with t ≡ (b - a) * m^{-1} (mod n)
    let diff = ((b as i128 - a as i128).rem_euclid(n as i128)) as u64;
    let t = mul_mod(diff % n, inv_mod(m % n, n), n);
    ((a as u128 + m as u128 * t as u128) % mn) as u64
}
