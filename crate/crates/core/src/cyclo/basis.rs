//! Canonical integral basis (Zumbroich basis) machinery for `Q_n`.
//!
//! `Q_n = Q(ζ_n)` has the canonical basis `{ζ_n^e}` over exponents `e` whose
//! residue at each prime-power factor `q = p^k ‖ n` avoids a forbidden
//! window. Writing `r = e·(n/q)^{-1} mod q` (the CRT coordinate of `e` at
//! `p`, so that `ζ_n^e = ∏_p ξ_p^{r_p}` with `ξ_p = ζ_n^{n/q}`):
//!
//! * `p` odd: forbidden iff `r` lies in the centered window
//!   `[-(q/p - 1)/2, (q/p - 1)/2] mod q`;
//! * `p = 2`: forbidden iff `r ∈ [q/2, q-1]`.
//!
//! A forbidden coordinate is expanded through the vanishing sum
//! `Σ_{t=0}^{p-1} ζ_p^t ζ_n^e·(…) = 0`, i.e.
//! `ζ_n^e = -Σ_{t=1}^{p-1} ζ_n^{e + t·n/p}`, which fixes the coordinate at
//! `p` in a single step and leaves all other coordinates unchanged.
//!
//! Reduction to the conductor descends through prime divisors using the
//! tensor structure of the basis: at `q = p^k` with `k ≥ 2` the element lies
//! in `Q_{n/p}` iff every support coordinate at `p` is divisible by `p`; at
//! `k = 1` (odd `p`) iff the `p - 1` coordinate slices are all equal (the
//! element then equals minus the common slice); at `q = 4` iff the
//! `i`-slice vanishes (descending directly to `n/4`, keeping the order
//! `≢ 2 mod 4`).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::Zero;

use crate::arith::{factorize, inv_mod, mul_mod};
use crate::cyclo::Rational;

/// Data for one prime-power factor `q = p^k` of the order `n`.
#[derive(Debug, Clone)]
pub(crate) struct PrimePower {
    pub p: u64,
    pub q: u64,
    /// `n / q`
    pub cofactor: u64,
    /// `(n/q)^{-1} mod q`
    pub inv_cofactor: u64,
}

/// Cached per-order basis data.
#[derive(Debug, Clone)]
pub(crate) struct FieldInfo {
    pub n: u64,
    pub primes: Vec<PrimePower>,
}

impl FieldInfo {
    fn new(n: u64) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        let primes = factorize(n)
            .into_iter()
            .map(|(p, k)| {
                let q = p.pow(k);
                let cofactor = n / q;
                PrimePower {
                    p,
                    q,
                    cofactor,
                    inv_cofactor: inv_mod(cofactor % q, q),
                }
            })
            .collect();
        FieldInfo { n, primes }
    }

    /// CRT coordinate of exponent `e` at the prime-power factor `pp`.
    pub fn coord(&self, pp: &PrimePower, e: u64) -> u64 {
        mul_mod(e % pp.q, pp.inv_cofactor, pp.q)
    }

    /// Is the coordinate `r` at `pp` outside the canonical basis?
    pub fn forbidden(&self, pp: &PrimePower, r: u64) -> bool {
        if pp.p == 2 {
            r >= pp.q / 2
        } else {
            // Centered window of radius (q/p - 1)/2 around 0.
            let w = (pp.q / pp.p - 1) / 2;
            r <= w || r + w >= pp.q
        }
    }

    /// Rebuild an exponent mod `n` from its CRT coordinates
    /// (entries aligned with `self.primes`).
    pub fn exponent_from_coords(&self, coords: &[u64]) -> u64 {
        let mut e: u128 = 0;
        for (pp, &r) in self.primes.iter().zip(coords) {
            e += pp.cofactor as u128 * r as u128;
        }
        (e % self.n as u128) as u64
    }

    /// Is `e` a canonical basis exponent of `Q_n`?
    pub fn in_basis(&self, e: u64) -> bool {
        self.primes
            .iter()
            .all(|pp| !self.forbidden(pp, self.coord(pp, e)))
    }
}

/// Shared cache of [`FieldInfo`] keyed by order.
pub(crate) fn field_info(n: u64) -> Arc<FieldInfo> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldInfo>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(n).or_insert_with(|| Arc::new(FieldInfo::new(n))).clone()
}

/// Add `c · ζ_n^e` to `acc`, rewriting `ζ_n^e` into canonical basis
/// exponents of `Q_n` as needed.
pub(crate) fn accumulate(info: &FieldInfo, acc: &mut BTreeMap<u64, Rational>, e: u64, c: &Rational) {
    if c.is_zero() {
        return;
    }
    // Find the first prime-power factor whose coordinate is forbidden.
    for pp in &info.primes {
        let r = info.coord(pp, e);
        if info.forbidden(pp, r) {
            let neg = -c;
            if pp.p == 2 {
                // ζ^e = -ζ^{e + n/2}
                let shifted = ((e as u128 + (info.n / 2) as u128) % info.n as u128) as u64;
                accumulate(info, acc, shifted, &neg);
            } else {
                // ζ^e = -Σ_{t=1}^{p-1} ζ^{e + t·n/p}
                let step = (info.n / pp.p) as u128;
                for t in 1..pp.p {
                    let shifted = ((e as u128 + t as u128 * step) % info.n as u128) as u64;
                    accumulate(info, acc, shifted, &neg);
                }
            }
            return;
        }
    }
    // Canonical exponent: merge.
    let entry = acc.entry(e).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&e);
    }
}

/// Reduce `(n, coeffs)` in canonical basis form to its conductor.
/// Returns the reduced order and coefficients; the zero element reduces to
/// order 1 with an empty coefficient map.
pub(crate) fn reduce(mut n: u64, mut coeffs: BTreeMap<u64, Rational>) -> (u64, BTreeMap<u64, Rational>) {
    'outer: loop {
        if coeffs.is_empty() {
            return (1, coeffs);
        }
        if n == 1 {
            return (n, coeffs);
        }
        let info = field_info(n);
        for (idx, pp) in info.primes.iter().enumerate() {
            if let Some((n2, c2)) = try_descend(&info, idx, pp, &coeffs) {
                n = n2;
                coeffs = c2;
                continue 'outer;
            }
        }
        debug_assert!(coeffs.keys().all(|&e| info.in_basis(e)));
        return (n, coeffs);
    }
}

/// Attempt the descent `Q_n → Q_{n/p}` (or `Q_{n/4}` at `q = 4`) at the
/// prime-power factor `pp = primes[idx]`.
fn try_descend(
    info: &FieldInfo,
    idx: usize,
    pp: &PrimePower,
    coeffs: &BTreeMap<u64, Rational>,
) -> Option<(u64, BTreeMap<u64, Rational>)> {
    let drop_factor = if pp.p == 2 && pp.q == 4 { 4 } else { pp.p };
    let n2 = info.n / drop_factor;
    let info2 = field_info(n2);

    // Coordinates of an exponent at every *other* prime-power factor carry
    // over unchanged (the prime powers q_l are identical in n and n2), so an
    // exponent in Q_{n2} is rebuilt from the old coordinates minus p's.
    let rebuild = |e: u64, new_r: Option<u64>| -> u64 {
        let mut coords = Vec::with_capacity(info2.primes.len());
        for (j, other) in info.primes.iter().enumerate() {
            if j == idx {
                if let Some(r) = new_r {
                    coords.push(r);
                }
                continue;
            }
            coords.push(info.coord(other, e));
        }
        info2.exponent_from_coords(&coords)
    };

    if pp.p == 2 {
        if pp.q == 4 {
            // Allowed coordinates {0, 1}; in Q_{n/4} iff the i-slice (r = 1)
            // is empty.
            if coeffs.keys().any(|&e| info.coord(pp, e) == 1) {
                return None;
            }
            let out: BTreeMap<u64, Rational> =
                coeffs.iter().map(|(&e, c)| (rebuild(e, None), c.clone())).collect();
            debug_assert_eq!(out.len(), coeffs.len());
            return Some((n2, out));
        }
        // q = 2^k, k ≥ 3: in Q_{n/2} iff every coordinate at 2 is even.
        if coeffs.keys().any(|&e| info.coord(pp, e) % 2 != 0) {
            return None;
        }
        let out: BTreeMap<u64, Rational> = coeffs
            .iter()
            .map(|(&e, c)| (rebuild(e, Some(info.coord(pp, e) / 2)), c.clone()))
            .collect();
        debug_assert_eq!(out.len(), coeffs.len());
        return Some((n2, out));
    }

    if pp.q > pp.p {
        // Odd p, k ≥ 2: in Q_{n/p} iff every coordinate at p is divisible
        // by p.
        if coeffs.keys().any(|&e| info.coord(pp, e) % pp.p != 0) {
            return None;
        }
        let out: BTreeMap<u64, Rational> = coeffs
            .iter()
            .map(|(&e, c)| (rebuild(e, Some(info.coord(pp, e) / pp.p)), c.clone()))
            .collect();
        debug_assert_eq!(out.len(), coeffs.len());
        return Some((n2, out));
    }

    // Odd p, k = 1: allowed coordinates 1..p-1. The element lies in Q_{n/p}
    // iff all p-1 coordinate slices agree, and then equals minus the slice.
    let mut slices: Vec<BTreeMap<u64, &Rational>> = vec![BTreeMap::new(); (pp.p - 1) as usize];
    for (&e, c) in coeffs {
        let r = info.coord(pp, e);
        debug_assert!((1..pp.p).contains(&r));
        slices[(r - 1) as usize].insert(rebuild(e, None), c);
    }
    if slices.windows(2).any(|w| w[0] != w[1]) {
        return None;
    }
    let out: BTreeMap<u64, Rational> =
        slices[0].iter().map(|(&e, &c)| (e, -c.clone())).collect();
    Some((n2, out))
}
