//! Acceptance suite: one test per criterion, each printing a single
//! PASS line (visible with `--nocapture`; a failed assertion fails the
//! test instead).
//!
//! The criteria pin down the externally observable behaviour of the
//! toolkit on the builtin corpus: the PSL₂(8) level anchor, the
//! exp(P/P')-type lower bound with its equality classification, level
//! continuity, the Isaacs–Navarro-style bound, the no-level-1
//! normalization, the imaginary-unit invariant for odd-degree characters,
//! the conductor identity, table validity, the σ_α/level equivalence, the
//! product-level scan, per-level McKay–Navarro counts, and report
//! determinism.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use charlev::arith::{divisors, gcd, lcm, prime_divisors, valuation};
use charlev::chartab::{Character, CharacterTable};
use charlev::classes::ClassData;
use charlev::corpus::{self, GroupSpec};
use charlev::cyclo::Cyclotomic;
use charlev::rationality::{
    achieved_analysis, char_conductor, char_level, field_contains_i, level_histogram,
    smallest_invariance_alpha, InvarianceAlpha,
};
use charlev::verify::{self, CheckStatus, GroupContext, GroupMeta, VerificationReport};

const MAX_ORDER: u64 = 100_000;
const MAX_CLASSES: usize = 30;

fn pass(number: u32, line: &str) {
    println!("acceptance {number:02}: PASS — {line}");
}

fn build_table(spec: &GroupSpec) -> CharacterTable {
    let group = spec.build().expect("corpus group builds");
    let classes = Arc::new(ClassData::compute(&group, MAX_ORDER).expect("classes fit the cap"));
    CharacterTable::compute(classes).expect("table computes")
}

fn corpus_tables() -> Vec<(GroupSpec, CharacterTable)> {
    corpus::builtin_corpus().into_iter().map(|spec| { let t = build_table(&spec); (spec, t) }).collect()
}

fn contexts() -> Vec<GroupContext> {
    corpus::builtin_corpus()
        .iter()
        .map(|spec| GroupContext::from_spec(spec, MAX_ORDER, MAX_CLASSES).expect("context builds"))
        .collect()
}

fn check(id: &str) -> Box<dyn verify::Check> {
    verify::registry().into_iter().find(|c| c.id() == id).expect("check is registered")
}

/// Fix-group conductor oracle, independent of per-value conductors: the
/// smallest f dividing the exponent such that every Galois automorphism
/// σ_k with k ≡ 1 (mod f) fixes all values of χ.
fn oracle_conductor(chi: &Character) -> u64 {
    let e = chi.classes().exponent();
    divisors(e)
        .into_iter()
        .find(|&f| {
            (1..=e)
                .filter(|&k| gcd(k, e) == 1 && k % f == 1 % f)
                .all(|k| chi.values().iter().all(|v| v.galois(k).unwrap() == *v))
        })
        .expect("f = e always works")
}

#[test]
fn criterion_01_psl2_8_level_anchor() {
    let start = Instant::now();
    let table = build_table(&corpus::builtin("PSL2(8)").unwrap());
    let hist = level_histogram(&table, 3);
    let expected: BTreeMap<u32, u64> = [(0, 3), (2, 3)].into();
    assert_eq!(hist.counts, expected, "3-levels over Irr_3' of PSL2(8)");
    assert_eq!(hist.counts.get(&1), None, "no character at 3-level 1");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "ran in {elapsed:?}, budget 30 s");
    pass(1, &format!("PSL2(8) 3-levels {{0:3, 2:3}}, none at level 1 ({elapsed:?})"));
}

#[test]
fn criterion_02_odd_degree_count_lower_bound() {
    let start = Instant::now();
    let mut equality_groups = Vec::new();
    let mut strict_groups = Vec::new();
    for (spec, table) in corpus_tables() {
        let group = table.classes().group();
        if group.order() % 2 != 0 {
            continue;
        }
        let count = table.irreducibles().iter().filter(|chi| chi.degree() % 2 == 1).count() as u64;
        let sylow = group.sylow_subgroup(2, MAX_ORDER).unwrap();
        let e = sylow.abelianized_exponent();
        assert!(count >= e, "{}: |Irr_2'| = {count} < exp(P/P') = {e}", spec.name);
        let cyclic = sylow.is_cyclic(MAX_ORDER).unwrap();
        let normalizer = group.normalizer(&sylow, MAX_ORDER).unwrap();
        let self_normalizing = normalizer.order() == sylow.order();
        assert_eq!(
            count == e,
            cyclic && self_normalizing,
            "{}: equality must hold exactly for cyclic self-normalizing Sylow 2-subgroups",
            spec.name
        );
        if count == e {
            equality_groups.push(spec.name.clone());
        } else {
            strict_groups.push(spec.name.clone());
        }
    }
    for name in ["C2", "S3"] {
        assert!(equality_groups.iter().any(|g| g == name), "{name} attains equality");
    }
    for name in ["SL2(3)", "S4", "PSL2(7)", "PSL2(8)"] {
        assert!(strict_groups.iter().any(|g| g == name), "{name} is strict");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "ran in {elapsed:?}, budget 10 min");
    pass(
        2,
        &format!(
            "|Irr_2'(G)| >= exp(P/P') corpus-wide; equality on {equality_groups:?} ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_03_continuity_at_two() {
    let continuity = check("continuity");
    let mut passed = 0;
    for ctx in contexts() {
        let result = continuity.run(&ctx, 2).unwrap();
        assert_ne!(result.status, CheckStatus::Fail, "continuity at 2 for {}", ctx.name());
        if ctx.group().order() % 2 == 0 {
            assert_eq!(result.status, CheckStatus::Pass, "even order: {}", ctx.name());
            passed += 1;
        }
    }
    let c8 = build_table(&corpus::builtin("C8").unwrap());
    let hist = level_histogram(&c8, 2);
    assert!(hist.counts.contains_key(&2), "C8 populates 2-level 2");
    assert!(hist.counts.contains_key(&3), "C8 populates 2-level 3");
    pass(3, &format!("2-level continuity on {passed} even-order groups; C8 hits levels 2 and 3"));
}

#[test]
fn criterion_04_max_level_equals_alpha() {
    let mut exercised = BTreeMap::new();
    for (spec, table) in corpus_tables() {
        let group = table.classes().group();
        let e = verify::sylow_abelianized_exponent(group, 2, MAX_ORDER).unwrap();
        let alpha = valuation(e, 2);
        let hist = level_histogram(&table, 2);
        let max_level = hist.counts.keys().max().copied().unwrap_or(0);
        assert!(max_level <= alpha, "{}: max 2-level {max_level} > alpha {alpha}", spec.name);
        if alpha >= 2 {
            assert_eq!(max_level, alpha, "{}: max 2-level attains alpha {alpha}", spec.name);
        }
        exercised.insert(spec.name.clone(), alpha);
    }
    assert_eq!(exercised["C8"], 3);
    assert_eq!(exercised["C12"], 2);
    pass(4, "max 2-level over Irr_2' is <= alpha, with equality whenever alpha >= 2");
}

#[test]
fn criterion_05_no_level_one_at_two() {
    let mut characters = 0u64;
    for (spec, table) in corpus_tables() {
        for chi in table.irreducibles() {
            characters += 1;
            assert_ne!(char_level(chi, 2), 1, "{}: character at 2-level 1", spec.name);
            for v in chi.values() {
                assert_ne!(v.level(2), 1, "{}: value at 2-level 1", spec.name);
            }
        }
    }
    pass(5, &format!("no 2-level-1 character or value among {characters} characters"));
}

#[test]
fn criterion_06_odd_degree_fields_contain_i() {
    let mut checked = 0u64;
    for (spec, table) in corpus_tables() {
        for chi in table.irreducibles() {
            if chi.degree() % 2 == 1 && char_level(chi, 2) >= 2 {
                checked += 1;
                assert!(
                    field_contains_i(chi),
                    "{}: odd-degree character of 2-level >= 2 without i",
                    spec.name
                );
            }
        }
    }
    assert!(checked > 0, "the corpus exercises the invariant");
    pass(6, &format!("i in Q(chi) for all {checked} odd-degree characters of 2-level >= 2"));
}

#[test]
fn criterion_07_conductor_is_lcm_of_value_conductors() {
    let mut characters = 0u64;
    for (spec, table) in corpus_tables() {
        for chi in table.irreducibles() {
            characters += 1;
            let per_value = chi.values().iter().fold(1u64, |acc, v| lcm(acc, v.conductor()));
            assert_eq!(char_conductor(chi), per_value, "{}", spec.name);
            assert_eq!(char_conductor(chi), oracle_conductor(chi), "{}", spec.name);
        }
    }
    pass(7, &format!("c(chi) = lcm_g c(chi(g)) = fix-group conductor on {characters} characters"));
}

#[test]
fn criterion_08_table_validity() {
    for (spec, table) in corpus_tables() {
        let classes = table.classes();
        let group = classes.group();
        let order = group.order();
        let k = classes.len();
        // Class equation.
        assert_eq!(classes.sizes().iter().sum::<u64>(), order, "{}", spec.name);
        // Degrees divide the order; degree squares sum to the order.
        let mut square_sum = 0u64;
        for chi in table.irreducibles() {
            assert_eq!(order % chi.degree(), 0, "{}", spec.name);
            square_sum += chi.degree() * chi.degree();
        }
        assert_eq!(square_sum, order, "{}", spec.name);
        // First orthogonality.
        for (i, chi) in table.irreducibles().iter().enumerate() {
            for (j, other) in table.irreducibles().iter().enumerate() {
                let ip = chi.inner_product(other).unwrap();
                let expected =
                    if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                assert_eq!(ip, expected, "{}: <X.{}, X.{}>", spec.name, i + 1, j + 1);
            }
        }
        // Second orthogonality: sum over rows of chi(g) conj(chi(h)) is the
        // centralizer order for g ~ h and zero otherwise.
        for j in 0..k {
            for j2 in 0..k {
                let mut acc = Cyclotomic::zero();
                for chi in table.irreducibles() {
                    acc = &acc + &(chi.value(j) * &chi.value(j2).conjugate());
                }
                let expected = if j == j2 {
                    Cyclotomic::from_integer((order / classes.size(j)) as i64)
                } else {
                    Cyclotomic::zero()
                };
                assert_eq!(acc, expected, "{}: columns {j}, {j2}", spec.name);
            }
        }
        // Galois closure: every coprime twist of a row is a row.
        let m = classes.exponent();
        for kk in 2..m {
            if gcd(kk, m) != 1 {
                continue;
            }
            for chi in table.irreducibles() {
                let twisted: Vec<Cyclotomic> =
                    chi.values().iter().map(|v| v.galois(kk).unwrap()).collect();
                assert!(
                    table.index_of_values(&twisted).is_some(),
                    "{}: Galois twist k={kk} lands outside the table",
                    spec.name
                );
            }
        }
        // Determinantal orders: the computation rejects non-integer or
        // negative eigenvalue multiplicities internally.
        for chi in table.irreducibles() {
            let o = chi.det_order().unwrap();
            assert!(o >= 1 && m % o == 0, "{}: det order divides the exponent", spec.name);
        }
        // Abelian tables are exactly the dual group: all rows are degree-1
        // homomorphisms (checked on every class pair), pairwise distinct,
        // and there are |G| of them.
        if group.is_abelian() {
            assert_eq!(k as u64, order, "{}", spec.name);
            let mut seen = HashSet::new();
            for chi in table.irreducibles() {
                assert_eq!(chi.degree(), 1, "{}", spec.name);
                for i in 0..k {
                    for j in 0..k {
                        let hij = classes.representative(i).compose(classes.representative(j));
                        let target = classes.class_of(&hij).unwrap();
                        assert_eq!(
                            chi.value(i) * chi.value(j),
                            chi.value(target).clone(),
                            "{}: row is multiplicative",
                            spec.name
                        );
                    }
                }
                assert!(seen.insert(format!("{:?}", chi.values())), "{}", spec.name);
            }
        }
    }
    pass(8, "orthogonality, degree sums, class equation, Galois closure, det orders, abelian duals");
}

#[test]
fn criterion_09_invariance_alpha_equals_level() {
    let mut checked = 0u64;
    for (spec, table) in corpus_tables() {
        let order = table.classes().group().order();
        for p in prime_divisors(order) {
            for chi in table.irreducibles() {
                if chi.degree() % p == 0 {
                    continue;
                }
                let level = char_level(chi, p);
                if level < 2 {
                    continue;
                }
                checked += 1;
                assert_eq!(
                    smallest_invariance_alpha(chi, p),
                    InvarianceAlpha::Alpha(level),
                    "{}: p = {p}",
                    spec.name
                );
            }
        }
    }
    assert!(checked > 0, "the corpus exercises the equivalence");
    pass(9, &format!("smallest sigma_alpha-invariance = level on {checked} characters of level >= 2"));
}

#[test]
fn criterion_10_product_level_pair_scan() {
    let product = check("product-lemma");
    let mut pairs = 0u64;
    for ctx in contexts() {
        let table = ctx.table();
        let order = ctx.group().order();
        for p in prime_divisors(order) {
            // Direct evaluation of both conclusions on all qualifying pairs.
            let rows: Vec<(usize, u32, bool)> = table
                .irreducibles()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.degree() % p != 0)
                .map(|(i, c)| {
                    let profile = achieved_analysis(c, p);
                    (i, profile.level, profile.achieved_at_p_element)
                })
                .collect();
            for &(i, lev_phi, _) in &rows {
                for &(j, lev_psi, psi_achieved) in &rows {
                    if !psi_achieved {
                        continue;
                    }
                    let prod = table.character(i).product(table.character(j)).unwrap();
                    let lev_prod = char_level(&prod, p);
                    if lev_phi > lev_prod {
                        continue;
                    }
                    pairs += 1;
                    assert!(
                        lev_psi <= lev_prod,
                        "{}: p = {p}, rows {i},{j}",
                        ctx.name()
                    );
                    assert_eq!(
                        lev_phi.max(lev_psi),
                        lev_prod,
                        "{}: p = {p}, rows {i},{j}",
                        ctx.name()
                    );
                }
            }
            let result = product.run(&ctx, p).unwrap();
            assert_eq!(result.status, CheckStatus::Pass, "{}: p = {p}", ctx.name());
        }
    }
    pass(10, &format!("product-level conclusions hold on {pairs} qualifying pairs"));
}

#[test]
fn criterion_11_mn_level_counts_at_two() {
    let mn = check("mn-levels");
    for ctx in contexts() {
        let result = mn.run(&ctx, 2).unwrap();
        assert_ne!(result.status, CheckStatus::Fail, "{}", ctx.name());
        if ctx.group().order() % 2 == 0 {
            assert_eq!(result.status, CheckStatus::Pass, "{}", ctx.name());
        }
        if ctx.name() == "S4" || ctx.name() == "PSL2(7)" {
            let expected = serde_json::json!({ "0": 4 });
            assert_eq!(result.details["group_histogram"], expected, "{}", ctx.name());
            assert_eq!(result.details["normalizer_histogram"], expected, "{}", ctx.name());
        }
    }
    pass(11, "per-level counts agree between G and N_G(P) at p = 2; S4 and PSL2(7) report {0:4}");
}

#[test]
fn criterion_12_report_determinism() {
    let run = || {
        let mut metas = Vec::new();
        let mut results = Vec::new();
        for ctx in contexts() {
            metas.push(GroupMeta::of(&ctx));
            results.extend(verify::run_all(&ctx, &prime_divisors(ctx.group().order())).unwrap());
        }
        serde_json::to_string_pretty(&VerificationReport::new(metas, results)).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "two full verification runs serialize identically");
    assert!(first.contains("\"fail\": 0"));
    pass(12, &format!("two full runs produce byte-identical {}-byte reports", first.len()));
}
