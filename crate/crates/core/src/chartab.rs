//! Character tables by the Burnside–Dixon–Schneider method, and operations
//! on characters (inner products, products, restriction, determinant order).
//!
//! The table of a group with class data `C_0..C_{k-1}` (exponent `m`) is
//! computed over a prime field `F_l` with `l ≡ 1 (mod m)` and `l > 2·√|G|`:
//! the class-multiplication matrices `A_i[j][t] = a_{ijt}` commute and are
//! simultaneously diagonalizable over `F_l`, their one-dimensional common
//! eigenspaces are spanned by the central characters
//! `ω_χ = (h_j·χ(g_j)/χ(1))_j`, degrees are recovered from the first
//! orthogonality relation, and exact cyclotomic values are lifted through
//! the discrete Fourier inversion of eigenvalue multiplicities on each
//! cyclic subgroup. Every table is validated against the orthogonality
//! relations before being returned.

use std::collections::HashSet;
use std::sync::Arc;

use num::BigInt;
use thiserror::Error;

use crate::arith::{gcd, inv_mod, is_prime, lcm, mul_mod, pow_mod, prime_divisors};
use crate::classes::ClassData;
use crate::cyclo::{Cyclotomic, Rational};
use crate::group::GroupError;

#[derive(Debug, Error)]
pub enum ChartabError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("characters belong to different class data")]
    ClassMismatch,
    #[error("not a subgroup of the character's group")]
    NotASubgroup,
    #[error("values do not define a character: {0}")]
    NotACharacter(String),
}

/// A class function with cyclotomic values, indexed by class.
#[derive(Debug, Clone)]
pub struct Character {
    classes: Arc<ClassData>,
    values: Vec<Cyclotomic>,
    irreducible: bool,
}

/// The full set of irreducible characters of a group, sorted by degree
/// (trivial character first among degree-1 rows), then by values.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    classes: Arc<ClassData>,
    irreducibles: Vec<Character>,
}

fn rat(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn same_classes(a: &Arc<ClassData>, b: &Arc<ClassData>) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    a.len() == b.len()
        && (0..a.len()).all(|j| a.representative(j) == b.representative(j))
}

impl Character {
    /// Build a class function from explicit values (marked reducible unless
    /// the caller knows better; use [`Character::is_irreducible`] on table
    /// rows).
    pub fn from_values(
        classes: Arc<ClassData>,
        values: Vec<Cyclotomic>,
    ) -> Result<Self, ChartabError> {
        if values.len() != classes.len() {
            return Err(ChartabError::NotACharacter(format!(
                "expected {} class values, got {}",
                classes.len(),
                values.len()
            )));
        }
        let mut chi = Character { classes, values, irreducible: false };
        chi.irreducible = chi
            .norm()
            .map(|n| n == rat(1))
            .unwrap_or(false);
        Ok(chi)
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, j: usize) -> &Cyclotomic {
        &self.values[j]
    }

    /// χ(1) as a nonnegative integer.
    pub fn degree(&self) -> u64 {
        self.values[0]
            .as_nonneg_integer()
            .expect("character degree is a nonnegative integer")
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    /// Hermitian inner product `⟨self, other⟩ = (1/|G|) Σ_j h_j χ(g_j) ψ(g_j)̄`.
    pub fn inner_product(&self, other: &Character) -> Result<Cyclotomic, ChartabError> {
        if !same_classes(&self.classes, &other.classes) {
            return Err(ChartabError::ClassMismatch);
        }
        let mut acc = Cyclotomic::zero();
        for j in 0..self.classes.len() {
            let term = &self.values[j] * &other.values[j].conjugate();
            acc = &acc + &term.scale(&rat(self.classes.size(j)));
        }
        let order = self.classes.group().order();
        Ok(acc.scale(&(rat(1) / rat(order))))
    }

    /// ⟨self, self⟩ as a rational (characters have rational norm).
    pub fn norm(&self) -> Result<Rational, ChartabError> {
        let ip = self.inner_product(self)?;
        ip.as_rational().ok_or_else(|| {
            ChartabError::NotACharacter("norm is not rational".into())
        })
    }

    /// Pointwise product; the irreducibility flag is set from the norm.
    pub fn product(&self, other: &Character) -> Result<Character, ChartabError> {
        if !same_classes(&self.classes, &other.classes) {
            return Err(ChartabError::ClassMismatch);
        }
        let values: Vec<Cyclotomic> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Character::from_values(self.classes.clone(), values)
    }

    /// Restriction to a subgroup via class fusion (each subgroup class
    /// representative is located in its ambient class).
    pub fn restrict_to(&self, sub: &Arc<ClassData>) -> Result<Character, ChartabError> {
        if !self.classes.group().contains_group(sub.group()) {
            return Err(ChartabError::NotASubgroup);
        }
        let values: Vec<Cyclotomic> = (0..sub.len())
            .map(|j| {
                let cls = self
                    .classes
                    .class_of(sub.representative(j))
                    .expect("subgroup element lies in an ambient class");
                self.values[cls].clone()
            })
            .collect();
        Character::from_values(sub.clone(), values)
    }

    /// The conjugate character (complex conjugate values).
    pub fn conjugate(&self) -> Character {
        let values = self.values.iter().map(|v| v.conjugate()).collect();
        Character {
            classes: self.classes.clone(),
            values,
            irreducible: self.irreducible,
        }
    }

    /// Order of the linear character `det ∘ ρ` for a representation `ρ`
    /// affording this character: on each class the eigenvalue multiplicities
    /// of `ρ(g)` are recovered exactly by Fourier inversion over `⟨g⟩`, and
    /// the determinant is the corresponding product of roots of unity.
    /// Errors if the values are not those of a genuine character.
    pub fn det_order(&self) -> Result<u64, ChartabError> {
        let mut result = 1u64;
        for j in 0..self.classes.len() {
            let o = self.classes.element_order(j);
            let mut exponent = 0u64;
            let mut total = 0u64;
            for t in 0..o {
                let mut acc = Cyclotomic::zero();
                for s in 0..o {
                    let cls = self.classes.power_class(j, s);
                    let root = Cyclotomic::root_of_unity(o, -((t * s) as i64))
                        .expect("element order is nonzero");
                    acc = &acc + &(&self.values[cls] * &root);
                }
                let mu = acc
                    .scale(&(rat(1) / rat(o)))
                    .as_nonneg_integer()
                    .ok_or_else(|| {
                        ChartabError::NotACharacter(format!(
                            "eigenvalue multiplicity on class {j} is not a \
                             nonnegative integer"
                        ))
                    })?;
                total += mu;
                exponent = (exponent + t * (mu % o)) % o;
            }
            if total != self.degree() {
                return Err(ChartabError::NotACharacter(format!(
                    "eigenvalue multiplicities on class {j} sum to {total}, \
                     expected the degree {}",
                    self.degree()
                )));
            }
            result = lcm(result, o / gcd(o, exponent));
        }
        Ok(result)
    }
}

impl CharacterTable {
    /// Compute the table of the group described by `classes`.
    pub fn compute(classes: Arc<ClassData>) -> Result<CharacterTable, ChartabError> {
        let k = classes.len();
        let order = classes.group().order();
        let m = classes.exponent();
        let l = dixon_prime(m, order, k);
        let zeta_m = {
            let root = primitive_root(l);
            pow_mod(root, (l - 1) / m, l)
        };

        // Split the class space into common eigenspaces of the A_i.
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect()];
        for i in 1..k {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let a: Vec<Vec<u64>> = classes
                .multiplication_matrix(i)
                .into_iter()
                .map(|row| row.into_iter().map(|x| x % l).collect())
                .collect();
            let mut next = Vec::with_capacity(k);
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                let dim = space.len();
                let r = restrict_matrix(&a, &space, l);
                let poly = char_poly(&r, l);
                let mut covered = 0;
                for lambda in poly_roots(&poly, l) {
                    let shifted: Vec<Vec<u64>> = (0..dim)
                        .map(|x| {
                            (0..dim)
                                .map(|y| {
                                    let d = if x == y { lambda } else { 0 };
                                    (r[x][y] + l - d) % l
                                })
                                .collect()
                        })
                        .collect();
                    let kern = kernel(&shifted, l);
                    covered += kern.len();
                    let lifted: Vec<Vec<u64>> = kern
                        .iter()
                        .map(|coords| {
                            let mut v = vec![0u64; k];
                            for (s, &c) in coords.iter().enumerate() {
                                for t in 0..k {
                                    v[t] = (v[t] + mul_mod(c, space[s][t], l)) % l;
                                }
                            }
                            v
                        })
                        .collect();
                    next.push(lifted);
                }
                assert_eq!(covered, dim, "class algebra splits completely over F_l");
            }
            spaces = next;
        }
        assert_eq!(spaces.len(), k, "found one eigenspace per character");
        assert!(spaces.iter().all(|s| s.len() == 1));

        let inv_sizes: Vec<u64> =
            (0..k).map(|j| inv_mod(classes.size(j) % l, l)).collect();
        let order_mod = order % l;
        let mut rows: Vec<Character> = Vec::with_capacity(k);
        for space in &spaces {
            let v = &space[0];
            assert_ne!(v[0], 0, "central character is 1 on the identity class");
            let inv0 = inv_mod(v[0], l);
            let w: Vec<u64> = v.iter().map(|&x| mul_mod(x, inv0, l)).collect();
            // 1/d^2 = (1/|G|) Σ_j ω_j ω_{j'} / h_j  (first orthogonality).
            let mut s = 0u64;
            for j in 0..k {
                let term = mul_mod(
                    mul_mod(w[j], w[classes.inverse_class(j)], l),
                    inv_sizes[j],
                    l,
                );
                s = (s + term) % l;
            }
            let d2 = mul_mod(order_mod, inv_mod(s, l), l);
            let d = (1..=l / 2)
                .find(|&r| mul_mod(r, r, l) == d2)
                .expect("degree square root below l/2");
            // Class values mod l: χ(g_j) ≡ ω_j · d / h_j.
            let c: Vec<u64> = (0..k)
                .map(|j| mul_mod(mul_mod(w[j], d % l, l), inv_sizes[j], l))
                .collect();
            let values: Vec<Cyclotomic> = (0..k)
                .map(|j| lift_class_value(&classes, &c, j, d, m, zeta_m, l))
                .collect();
            rows.push(Character {
                classes: classes.clone(),
                values,
                irreducible: true,
            });
        }

        rows.sort_by(|a, b| {
            (a.degree(), !a.is_trivial(), &a.values)
                .cmp(&(b.degree(), !b.is_trivial(), &b.values))
        });
        let table = CharacterTable { classes, irreducibles: rows };
        table.validate();
        Ok(table)
    }

    /// Panics unless the rows satisfy the first orthogonality relations and
    /// the degree sum; run on every computed table.
    fn validate(&self) {
        let order = self.classes.group().order();
        let degree_sum: u64 = self.irreducibles.iter().map(|c| c.degree().pow(2)).sum();
        assert_eq!(degree_sum, order, "degree squares sum to the group order");
        for (r, a) in self.irreducibles.iter().enumerate() {
            for (s, b) in self.irreducibles.iter().enumerate().skip(r) {
                let ip = a.inner_product(b).expect("same class data");
                let expected = if r == s { rat(1) } else { rat(0) };
                assert_eq!(
                    ip.as_rational(),
                    Some(expected),
                    "orthogonality of rows {r} and {s}"
                );
            }
        }
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.irreducibles[i]
    }

    /// Index of the row with exactly these values, if any.
    pub fn index_of_values(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.irreducibles.iter().position(|c| c.values() == values)
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles.iter().map(|c| c.degree()).collect()
    }
}

/// Smallest prime `l ≡ 1 (mod m)` with `l² > 4·order` (so integers of
/// absolute value up to `2√|G|` lift uniquely from `F_l`) and `l > k` (so
/// characteristic polynomials of k×k matrices interpolate from k+1 distinct
/// evaluation points).
fn dixon_prime(m: u64, order: u64, k: usize) -> u64 {
    let mut l = m + 1;
    loop {
        if (l as u128) * (l as u128) > 4 * (order as u128)
            && l > k as u64
            && is_prime(l)
            && l % m == 1 % m
        {
            return l;
        }
        l += m;
    }
}

fn primitive_root(l: u64) -> u64 {
    let phi = l - 1;
    let primes = prime_divisors(phi);
    (2..l)
        .find(|&g| primes.iter().all(|&q| pow_mod(g, phi / q, l) != 1))
        .expect("prime fields have primitive roots")
}

/// Exact value χ(g_j) from the residues `c` of the whole row: the
/// eigenvalue multiplicities of a representing matrix for g_j are
/// `μ_t ≡ (1/o) Σ_s χ(g_j^s) ζ_o^{-ts} (mod l)`, each lying in `[0, d]`, and
/// the value is `Σ_t μ_t ζ_o^t`.
fn lift_class_value(
    classes: &ClassData,
    c: &[u64],
    j: usize,
    d: u64,
    m: u64,
    zeta_m: u64,
    l: u64,
) -> Cyclotomic {
    let o = classes.element_order(j);
    let zeta_o = pow_mod(zeta_m, m / o, l);
    let inv_zeta = inv_mod(zeta_o, l);
    let inv_o = inv_mod(o % l, l);
    let mut terms: Vec<(u64, Rational)> = Vec::new();
    let mut total = 0u64;
    for t in 0..o {
        let zt = pow_mod(inv_zeta, t, l);
        let mut zpow = 1u64;
        let mut acc = 0u64;
        for s in 0..o {
            let cls = classes.power_class(j, s);
            acc = (acc + mul_mod(c[cls], zpow, l)) % l;
            zpow = mul_mod(zpow, zt, l);
        }
        let mu = mul_mod(acc, inv_o, l);
        assert!(mu <= d, "lifted multiplicity stays within the degree");
        total += mu;
        if mu > 0 {
            terms.push((t, rat(mu)));
        }
    }
    assert_eq!(total, d, "multiplicities sum to the degree");
    Cyclotomic::from_terms(o, terms).expect("element order is nonzero")
}

fn mat_vec(a: &[Vec<u64>], v: &[u64], l: u64) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, l)) % l)
        })
        .collect()
}

/// Coordinates of each target in the span of `basis` (rows independent).
fn solve_in_basis(basis: &[Vec<u64>], targets: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let k = basis[0].len();
    let dim = basis.len();
    let nt = targets.len();
    let mut m: Vec<Vec<u64>> = (0..k)
        .map(|coord| {
            let mut row = Vec::with_capacity(dim + nt);
            for b in basis {
                row.push(b[coord]);
            }
            for t in targets {
                row.push(t[coord]);
            }
            row
        })
        .collect();
    let width = dim + nt;
    for c in 0..dim {
        let pr = (c..k)
            .find(|&i| m[i][c] != 0)
            .expect("basis rows are independent");
        m.swap(c, pr);
        let inv = inv_mod(m[c][c], l);
        for x in m[c].iter_mut() {
            *x = mul_mod(*x, inv, l);
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && row[c] != 0 {
                let f = row[c];
                for t in 0..width {
                    row[t] = (row[t] + l - mul_mod(f, pivot[t], l)) % l;
                }
            }
        }
    }
    for row in m.iter().skip(dim) {
        assert!(
            row[dim..].iter().all(|&x| x == 0),
            "targets lie in the span of the basis"
        );
    }
    (0..nt)
        .map(|t| (0..dim).map(|c| m[c][dim + t]).collect())
        .collect()
}

/// Matrix of `a` restricted to the invariant subspace spanned by `basis`.
fn restrict_matrix(a: &[Vec<u64>], basis: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let dim = basis.len();
    let images: Vec<Vec<u64>> = basis.iter().map(|b| mat_vec(a, b, l)).collect();
    let coords = solve_in_basis(basis, &images, l);
    (0..dim)
        .map(|r| (0..dim).map(|s| coords[s][r]).collect())
        .collect()
}

fn determinant(mut a: Vec<Vec<u64>>, l: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            a.swap(c, pr);
            det = l - det;
        }
        det = mul_mod(det, a[c][c], l);
        let inv = inv_mod(a[c][c], l);
        let pivot: Vec<u64> = a[c].iter().map(|&x| mul_mod(x, inv, l)).collect();
        for i in c + 1..n {
            if a[i][c] != 0 {
                let f = a[i][c];
                for t in c..n {
                    a[i][t] = (a[i][t] + l - mul_mod(f, pivot[t], l)) % l;
                }
            }
        }
    }
    det % l
}

/// Monic characteristic polynomial `det(xI − M)`, coefficients ascending,
/// via evaluation at `0..=n` and Newton interpolation (requires `l > n`).
fn char_poly(m: &[Vec<u64>], l: u64) -> Vec<u64> {
    let n = m.len();
    assert!(l > n as u64);
    let xs: Vec<u64> = (0..=n as u64).collect();
    let ys: Vec<u64> = xs
        .iter()
        .map(|&x| {
            let shifted: Vec<Vec<u64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let d = if i == j { x } else { 0 };
                            (d + l - m[i][j] % l) % l
                        })
                        .collect()
                })
                .collect();
            determinant(shifted, l)
        })
        .collect();
    let poly = newton_interpolate(&xs, &ys, l);
    assert_eq!(*poly.last().unwrap(), 1, "characteristic polynomial is monic");
    poly
}

fn newton_interpolate(xs: &[u64], ys: &[u64], l: u64) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    let mut coeffs = vec![dd[0]];
    for level in 1..n {
        for i in 0..n - level {
            let num = (dd[i + 1] + l - dd[i]) % l;
            let den = (xs[i + level] + l - xs[i]) % l;
            dd[i] = mul_mod(num, inv_mod(den, l), l);
        }
        coeffs.push(dd[0]);
    }
    let mut poly = vec![0u64; n];
    let mut basis = vec![1u64];
    for (i, &c) in coeffs.iter().enumerate() {
        for (t, &b) in basis.iter().enumerate() {
            poly[t] = (poly[t] + mul_mod(c, b, l)) % l;
        }
        if i + 1 < n {
            let xi = xs[i] % l;
            let mut nb = vec![0u64; basis.len() + 1];
            for (t, &b) in basis.iter().enumerate() {
                nb[t + 1] = (nb[t + 1] + b) % l;
                nb[t] = (nb[t] + l - mul_mod(xi, b, l)) % l;
            }
            basis = nb;
        }
    }
    poly
}

fn poly_roots(poly: &[u64], l: u64) -> Vec<u64> {
    (0..l)
        .filter(|&x| {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = (mul_mod(acc, x, l) + c) % l;
            }
            acc == 0
        })
        .collect()
}

/// Null-space basis of a square matrix over `F_l`.
fn kernel(m: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if let Some(pr) = (r..n).find(|&i| a[i][c] != 0) {
            a.swap(r, pr);
            let inv = inv_mod(a[r][c], l);
            for x in a[r].iter_mut() {
                *x = mul_mod(*x, inv, l);
            }
            let pivot = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for t in 0..n {
                        row[t] = (row[t] + l - mul_mod(f, pivot[t], l)) % l;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    let pivot_cols: HashSet<usize> = pivots.iter().map(|p| p.1).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for &(pr, pc) in &pivots {
            v[pc] = (l - a[pr][free]) % l;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::PermGroup;
    use crate::perm::Permutation;
    use std::collections::HashMap;

    fn table_of(name: &str) -> CharacterTable {
        let group = corpus::builtin(name).unwrap().build().unwrap();
        let classes = Arc::new(ClassData::compute(&group, 100_000).unwrap());
        CharacterTable::compute(classes).unwrap()
    }

    #[test]
    fn s3_table() {
        let table = table_of("S3");
        assert_eq!(table.degrees(), vec![1, 1, 2]);
        // Standard character values on (1, transpositions, 3-cycles).
        let std = table.character(2);
        assert_eq!(std.value(0), &Cyclotomic::from_integer(2));
        assert_eq!(std.value(1), &Cyclotomic::zero());
        assert_eq!(std.value(2), &Cyclotomic::from_integer(-1));
        assert!(std.is_irreducible());
        assert!(table.character(0).is_trivial());
    }

    #[test]
    fn c4_table_has_quartic_roots() {
        let table = table_of("C4");
        assert_eq!(table.degrees(), vec![1, 1, 1, 1]);
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        // Some row takes the value i on a generator class (order-4 class).
        let gen_class = (0..4)
            .find(|&j| table.classes().element_order(j) == 4)
            .unwrap();
        assert!(table
            .irreducibles()
            .iter()
            .any(|chi| chi.value(gen_class) == &i));
        // All values are fourth roots of unity.
        for chi in table.irreducibles() {
            for v in chi.values() {
                assert_eq!((v * &v.conjugate()).as_rational(), Some(rat(1)));
            }
        }
    }

    /// Independent oracle for abelian tables: the dual group, built by
    /// extending characters one generator at a time.
    fn abelian_character_rows(group: &PermGroup, cd: &ClassData) -> Vec<Vec<Cyclotomic>> {
        assert!(group.is_abelian());
        let one = Cyclotomic::one();
        let id = Permutation::identity(group.degree());
        let mut sub = PermGroup::trivial(group.degree());
        let mut chars: Vec<HashMap<Permutation, Cyclotomic>> =
            vec![HashMap::from([(id.clone(), one.clone())])];
        for g in group.generators() {
            // Least t with g^t in the current subgroup.
            let t = (1..=g.order())
                .find(|&t| sub.contains(&g.pow(t as i64)))
                .unwrap();
            let mut elems = sub.elements().unwrap();
            let mut next_chars = Vec::new();
            for chi in &chars {
                let c = &chi[&g.pow(t as i64)];
                // Multiplicative order and exponent of the root of unity c.
                let mut ord = 1u64;
                let mut acc = c.clone();
                while acc != one {
                    acc = &acc * c;
                    ord += 1;
                }
                let e = (0..ord)
                    .find(|&e| &Cyclotomic::root_of_unity(ord, e as i64).unwrap() == c)
                    .unwrap();
                // w0^t = c; all extensions use w0 ζ_t^j.
                let w0 = Cyclotomic::root_of_unity(ord * t, e as i64).unwrap();
                for j in 0..t {
                    let w = &w0 * &Cyclotomic::root_of_unity(t, j as i64).unwrap();
                    let mut ext = HashMap::new();
                    for h in &elems {
                        let mut wi = one.clone();
                        for i in 0..t {
                            ext.insert(h.compose(&g.pow(i as i64)), &chi[h] * &wi);
                            wi = &wi * &w;
                        }
                    }
                    next_chars.push(ext);
                }
            }
            chars = next_chars;
            sub = sub.extended_with(g.clone()).unwrap();
            elems = sub.elements().unwrap();
            assert_eq!(chars[0].len(), elems.len());
        }
        let mut rows: Vec<Vec<Cyclotomic>> = chars
            .into_iter()
            .map(|chi| {
                let mut row = vec![Cyclotomic::zero(); cd.len()];
                for (g, v) in chi {
                    row[cd.class_of(&g).unwrap()] = v;
                }
                row
            })
            .collect();
        rows.sort();
        rows
    }

    #[test]
    fn abelian_tables_match_dual_group_oracle() {
        for name in ["C8", "C12", "C4xC3"] {
            let group = corpus::builtin(name).unwrap().build().unwrap();
            let cd = Arc::new(ClassData::compute(&group, 100_000).unwrap());
            let table = CharacterTable::compute(cd.clone()).unwrap();
            let mut got: Vec<Vec<Cyclotomic>> = table
                .irreducibles()
                .iter()
                .map(|c| c.values().to_vec())
                .collect();
            got.sort();
            let expected = abelian_character_rows(&group, &cd);
            assert_eq!(got, expected, "table of {name}");
        }
    }

    #[test]
    fn psl28_table_degrees_and_orthogonality() {
        let table = table_of("PSL2(8)");
        assert_eq!(table.classes().group().order(), 504);
        assert_eq!(table.len(), 9);
        assert_eq!(table.degrees(), vec![1, 7, 7, 7, 7, 8, 9, 9, 9]);
        let sum: u64 = table.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, 504);
        // Second orthogonality on a couple of columns.
        for j in [0usize, 3] {
            let mut acc = Cyclotomic::zero();
            for chi in table.irreducibles() {
                acc = &acc + &(chi.value(j) * &chi.value(j).conjugate());
            }
            let centralizer = 504 / table.classes().size(j);
            assert_eq!(acc.as_rational(), Some(rat(centralizer)));
        }
    }

    #[test]
    fn restriction_of_standard_s3_character() {
        let s3 = corpus::builtin("S3").unwrap().build().unwrap();
        let cd = Arc::new(ClassData::compute(&s3, 100_000).unwrap());
        let table = CharacterTable::compute(cd).unwrap();
        let std = table.character(2).clone();
        // C3 = ⟨(1,2,3)⟩ inside S3.
        let c3 = PermGroup::from_generators(
            3,
            vec![Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap()],
        )
        .unwrap();
        let c3_classes = Arc::new(ClassData::compute(&c3, 100_000).unwrap());
        let res = std.restrict_to(&c3_classes).unwrap();
        assert_eq!(res.degree(), 2);
        assert_eq!(res.value(1), &Cyclotomic::from_integer(-1));
        assert_eq!(res.value(2), &Cyclotomic::from_integer(-1));
        assert!(!res.is_irreducible());
        // ⟨res, res⟩ = 2: splits into the two nontrivial C3 characters.
        assert_eq!(res.norm().unwrap(), rat(2));
        // Restricting to a non-subgroup errors.
        let c4 = PermGroup::from_generators(
            4,
            vec![Permutation::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap()],
        )
        .unwrap();
        let c4_classes = Arc::new(ClassData::compute(&c4, 100_000).unwrap());
        assert!(matches!(
            std.restrict_to(&c4_classes),
            Err(ChartabError::NotASubgroup)
        ));
    }

    #[test]
    fn products_and_inner_products() {
        let table = table_of("S4");
        assert_eq!(table.degrees(), vec![1, 1, 2, 3, 3]);
        let sign = table.character(1);
        let chi3 = table.character(3);
        // sign ⊗ χ3 is the other degree-3 irreducible.
        let twisted = sign.product(chi3).unwrap();
        assert!(twisted.is_irreducible());
        assert_eq!(
            twisted.inner_product(table.character(4)).unwrap().as_rational(),
            Some(rat(1))
        );
        // χ3 ⊗ χ3 has norm 4 (decomposes into 4 distinct irreducibles).
        let square = chi3.product(chi3).unwrap();
        assert!(!square.is_irreducible());
        assert_eq!(square.degree(), 9);
        let norm = square.norm().unwrap();
        assert_eq!(norm, rat(4));
        // Its decomposition multiplicities against the table are 0/1 here
        // and reconstruct the degree.
        let mut degree = 0u64;
        for chi in table.irreducibles() {
            let mult = square.inner_product(chi).unwrap().as_nonneg_integer().unwrap();
            degree += mult * chi.degree();
        }
        assert_eq!(degree, 9);
    }

    #[test]
    fn det_orders() {
        let table = table_of("S4");
        assert_eq!(table.character(0).det_order().unwrap(), 1);
        // The sign character has determinant order 2.
        assert_eq!(table.character(1).det_order().unwrap(), 2);
        // deg-2 character of S4 (lifted from S3): det is the sign character.
        assert_eq!(table.character(2).det_order().unwrap(), 2);
        // C4 faithful linear character: det order 4.
        let c4 = table_of("C4");
        let faithful = c4
            .irreducibles()
            .iter()
            .find(|chi| {
                chi.values().iter().any(|v| v == &Cyclotomic::root_of_unity(4, 1).unwrap())
            })
            .unwrap();
        assert_eq!(faithful.det_order().unwrap(), 4);
        // A5 is perfect: every det is trivial.
        let a5 = table_of("A5");
        for chi in a5.irreducibles() {
            assert_eq!(chi.det_order().unwrap(), 1);
        }
    }

    #[test]
    fn galois_closure_of_rows() {
        // Tables are closed under the full Galois action on values.
        for name in ["S4", "A5", "Q8", "PSL2(8)", "C12"] {
            let table = table_of(name);
            let m = table.classes().exponent();
            for chi in table.irreducibles() {
                for kk in 2..m {
                    if crate::arith::gcd(kk, m) != 1 {
                        continue;
                    }
                    let twisted: Vec<Cyclotomic> = chi
                        .values()
                        .iter()
                        .map(|v| v.galois(kk).unwrap())
                        .collect();
                    assert!(
                        table.index_of_values(&twisted).is_some(),
                        "galois twist k={kk} of a row of {name} is a row"
                    );
                }
            }
        }
    }

    #[test]
    fn quaternion_table_is_rational_plus_2dim() {
        let table = table_of("Q8");
        assert_eq!(table.degrees(), vec![1, 1, 1, 1, 2]);
        let two_dim = table.character(4);
        // Values of the 2-dimensional character as a multiset: 2, -2, 0, 0, 0
        // (compared in the structural value ordering).
        let mut vals: Vec<Cyclotomic> = two_dim.values().to_vec();
        vals.sort();
        let mut expected = vec![
            Cyclotomic::from_integer(-2),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::from_integer(2),
        ];
        expected.sort();
        assert_eq!(vals, expected);
        assert_eq!(two_dim.det_order().unwrap(), 1);
    }
}
