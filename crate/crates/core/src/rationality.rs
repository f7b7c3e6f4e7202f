//! Conductors, p-rationality levels, σ_α actions on tables, fields of
//! values, level histograms over Irr_{p'}, and achieved-at analysis.
//!
//! The p-rationality level of a character χ is `v_p(c(χ))` where the
//! conductor `c(χ)` is the smallest `f` with `Q(χ) ⊆ Q_f`; it equals the
//! maximum level of a single value, so every level is achieved at some
//! class. For levels ≥ 2 the level is also the least `α` with χ invariant
//! under σ_α (the automorphism fixing p'-order roots of unity and raising
//! p-power roots to the `1+p^α`).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{gcd, lcm, valuation};
use crate::chartab::{Character, CharacterTable};
use crate::cyclo::Cyclotomic;

/// Per-character rationality data at a prime.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LevelProfile {
    pub conductor: u64,
    pub p_part: u64,
    pub level: u32,
    /// Classes where the value's level equals the character's level.
    pub achieved_classes: Vec<usize>,
    /// Does some achieved class consist of p-elements (identity included)?
    pub achieved_at_p_element: bool,
}

/// Distribution of levels over Irr_{p'}(G).
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LevelHistogram {
    pub prime: u64,
    /// level -> number of p'-degree irreducibles at that level.
    pub counts: BTreeMap<u32, u64>,
    pub total: u64,
}

/// Row action of σ_α on a table: by Galois closure each row maps to a row.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SigmaAction {
    pub prime: u64,
    pub alpha: u32,
    /// permutation[i] = index of the image row of row i.
    pub permutation: Vec<usize>,
    /// Indices of fixed rows, ascending.
    pub fixed: Vec<usize>,
}

/// Result of the smallest-invariance search: p-rational characters carry a
/// marker instead of an α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvarianceAlpha {
    /// lev(χ) = 0; every σ_α fixes χ.
    Rational,
    /// Minimal α ≥ 1 with χ^{σ_α} = χ.
    Alpha(u32),
}

/// Conductor of the field of values: lcm over classes of the value
/// conductors.
pub fn char_conductor(chi: &Character) -> u64 {
    chi.values().iter().fold(1u64, |acc, v| lcm(acc, v.conductor()))
}

/// p-rationality level: v_p(c(χ)).
pub fn char_level(chi: &Character, p: u64) -> u32 {
    valuation(char_conductor(chi), p)
}

/// Apply σ_α (in the ambient field Q_{exp G}) to every row; report the row
/// permutation and the fixed rows.
pub fn sigma_action(table: &CharacterTable, p: u64, alpha: u32) -> SigmaAction {
    assert!(alpha >= 1);
    let m = table.classes().exponent();
    let permutation: Vec<usize> = table
        .irreducibles()
        .iter()
        .map(|chi| {
            let twisted: Vec<Cyclotomic> = chi
                .values()
                .iter()
                .map(|v| {
                    v.sigma_alpha(p, alpha, m)
                        .expect("value order divides the group exponent")
                })
                .collect();
            table
                .index_of_values(&twisted)
                .expect("Galois closure: σ_α image of a row is a row")
        })
        .collect();
    let fixed: Vec<usize> = permutation
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i == j)
        .map(|(i, _)| i)
        .collect();
    SigmaAction { prime: p, alpha, permutation, fixed }
}

/// Is every value of χ fixed by σ_α taken in the ambient field Q_n?
pub fn is_sigma_invariant(chi: &Character, p: u64, alpha: u32, ambient: u64) -> bool {
    chi.values().iter().all(|v| {
        v.sigma_alpha(p, alpha, ambient)
            .expect("value order divides the ambient order")
            == *v
    })
}

/// Minimal α ≥ 1 with χ σ_α-invariant, or [`InvarianceAlpha::Rational`]
/// when lev(χ) = 0. Searches α = 1, 2, … and is guaranteed to terminate at
/// α = v_p(conductor) at the latest (σ_α is then trivial on Q(χ)).
pub fn smallest_invariance_alpha(chi: &Character, p: u64) -> InvarianceAlpha {
    let conductor = char_conductor(chi);
    let level = valuation(conductor, p);
    if level == 0 {
        return InvarianceAlpha::Rational;
    }
    for alpha in 1..=level {
        if is_sigma_invariant(chi, p, alpha, conductor) {
            return InvarianceAlpha::Alpha(alpha);
        }
    }
    InvarianceAlpha::Alpha(level)
}

/// Galois-correspondence test for i ∈ Q(χ): with c = lcm(c(χ), 4), the
/// subgroup of (Z/c)* fixing χ must lie inside the fixer of i, i.e. every
/// fixing k must have k ≡ 1 (mod 4).
pub fn field_contains_i(chi: &Character) -> bool {
    let c = lcm(char_conductor(chi), 4);
    for k in 2..c {
        if gcd(k, c) != 1 {
            continue;
        }
        let fixes = chi.values().iter().all(|v| {
            v.galois(k).expect("k is coprime to each value order") == *v
        });
        if fixes && k % 4 == 3 {
            return false;
        }
    }
    true
}

/// Levels of the p'-degree irreducible characters.
pub fn level_histogram(table: &CharacterTable, p: u64) -> LevelHistogram {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    let mut total = 0u64;
    for chi in table.irreducibles() {
        if chi.degree() % p == 0 {
            continue;
        }
        *counts.entry(char_level(chi, p)).or_insert(0) += 1;
        total += 1;
    }
    LevelHistogram { prime: p, counts, total }
}

/// Achieved-at analysis: classes where the value level equals lev(χ), and
/// whether one of them consists of p-elements. For p-rational characters
/// every class achieves level 0, in particular the identity, so the flag
/// is always true there.
pub fn achieved_analysis(chi: &Character, p: u64) -> LevelProfile {
    let conductor = char_conductor(chi);
    let level = valuation(conductor, p);
    let classes = chi.classes();
    let achieved_classes: Vec<usize> = (0..classes.len())
        .filter(|&j| chi.value(j).level(p) == level)
        .collect();
    let achieved_at_p_element = achieved_classes.iter().any(|&j| {
        let o = classes.element_order(j);
        o == crate::arith::p_part(o, p)
    });
    LevelProfile {
        conductor,
        p_part: p.pow(level),
        level,
        achieved_classes,
        achieved_at_p_element,
    }
}
