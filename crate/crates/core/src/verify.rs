//! Verification checks for level statements, run per group and prime.
//!
//! Each check inspects one statement about p-rationality levels of
//! p'-degree irreducible characters (continuity of levels, counting lower
//! bounds, Sylow-normalizer comparisons, …) and reports pass / fail /
//! not-applicable together with witnesses. Checks are registered as trait
//! objects so the runner, the CLI, and the report formatter stay agnostic
//! of the individual statements.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::arith::valuation;
use crate::chartab::{CharacterTable, ChartabError};
use crate::classes::ClassData;
use crate::corpus::GroupSpec;
use crate::group::{GroupError, PermGroup};
use crate::rationality::{
    achieved_analysis, char_level, field_contains_i, level_histogram, LevelHistogram,
};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] ChartabError),
    #[error(transparent)]
    Corpus(#[from] crate::corpus::CorpusError),
    #[error("group `{group}` has {count} conjugacy classes, exceeding the cap of {cap}")]
    ClassCapExceeded { group: String, count: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Evidence attached to a check result.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Character { index: usize, degree: u64, level: u32 },
    Subgroup { description: String, order: u64 },
    Note { note: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub group: String,
    pub prime: u64,
    pub status: CheckStatus,
    pub witnesses: Vec<Witness>,
    pub details: serde_json::Value,
}

/// A single verifiable statement.
pub trait Check {
    /// Stable kebab-case identifier.
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Proof status of the underlying statement.
    fn proved_for(&self) -> &'static str;
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError>;
}

/// All registered checks, in registry order.
pub fn registry() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(Continuity),
        Box::new(LowerBound),
        Box::new(IsaacsNavarro),
        Box::new(MnLevels),
        Box::new(Achieved),
        Box::new(ProductLemma),
        Box::new(ExpLemma),
        Box::new(SubgroupTransfer),
        Box::new(Ilnt),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckInfo {
    pub id: String,
    pub description: String,
    pub proved_for: String,
}

pub fn check_infos() -> Vec<CheckInfo> {
    registry()
        .iter()
        .map(|c| CheckInfo {
            id: c.id().to_string(),
            description: c.description().to_string(),
            proved_for: c.proved_for().to_string(),
        })
        .collect()
}

/// A subgroup together with its own character table.
pub struct SubgroupData {
    pub description: String,
    pub group: PermGroup,
    pub table: CharacterTable,
}

/// Everything the checks need about one group: its table plus cached
/// Sylow/normalizer data per prime.
pub struct GroupContext {
    name: String,
    group: PermGroup,
    max_order: u64,
    max_classes: usize,
    classes: Arc<ClassData>,
    table: CharacterTable,
    sylow: RefCell<BTreeMap<u64, Rc<SubgroupData>>>,
    normalizer: RefCell<BTreeMap<u64, Rc<SubgroupData>>>,
}

impl GroupContext {
    pub fn new(
        name: impl Into<String>,
        group: PermGroup,
        max_order: u64,
        max_classes: usize,
    ) -> Result<Self, VerifyError> {
        let name = name.into();
        let classes = Arc::new(ClassData::compute(&group, max_order)?);
        if classes.len() > max_classes {
            return Err(VerifyError::ClassCapExceeded {
                group: name,
                count: classes.len(),
                cap: max_classes,
            });
        }
        let table = CharacterTable::compute(Arc::clone(&classes))?;
        Ok(GroupContext {
            name,
            group,
            max_order,
            max_classes,
            classes,
            table,
            sylow: RefCell::new(BTreeMap::new()),
            normalizer: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn from_spec(
        spec: &GroupSpec,
        max_order: u64,
        max_classes: usize,
    ) -> Result<Self, VerifyError> {
        let group = spec.build()?;
        Self::new(&spec.name, group, max_order, max_classes)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn max_order(&self) -> u64 {
        self.max_order
    }

    pub fn histogram(&self, p: u64) -> LevelHistogram {
        level_histogram(&self.table, p)
    }

    fn subgroup_data(
        &self,
        description: String,
        group: PermGroup,
    ) -> Result<Rc<SubgroupData>, VerifyError> {
        let table = if group.order() == self.group.order() {
            self.table.clone()
        } else {
            let classes = Arc::new(ClassData::compute(&group, self.max_order)?);
            if classes.len() > self.max_classes {
                return Err(VerifyError::ClassCapExceeded {
                    group: format!("{} ({})", self.name, description),
                    count: classes.len(),
                    cap: self.max_classes,
                });
            }
            CharacterTable::compute(classes)?
        };
        Ok(Rc::new(SubgroupData { description, group, table }))
    }

    /// Sylow p-subgroup with its table, cached per prime.
    pub fn sylow(&self, p: u64) -> Result<Rc<SubgroupData>, VerifyError> {
        if let Some(data) = self.sylow.borrow().get(&p) {
            return Ok(Rc::clone(data));
        }
        let subgroup = self.group.sylow_subgroup(p, self.max_order)?;
        let data = self.subgroup_data(format!("Sylow {p}-subgroup"), subgroup)?;
        self.sylow.borrow_mut().insert(p, Rc::clone(&data));
        Ok(data)
    }

    /// Normalizer of the cached Sylow p-subgroup, with its table.
    pub fn sylow_normalizer(&self, p: u64) -> Result<Rc<SubgroupData>, VerifyError> {
        if let Some(data) = self.normalizer.borrow().get(&p) {
            return Ok(Rc::clone(data));
        }
        let sylow = self.sylow(p)?;
        let subgroup = self.group.normalizer(&sylow.group, self.max_order)?;
        let data = self.subgroup_data(format!("Sylow {p}-normalizer"), subgroup)?;
        self.normalizer.borrow_mut().insert(p, Rc::clone(&data));
        Ok(data)
    }
}

/// exp(P/P') for a Sylow p-subgroup P of `group`.
pub fn sylow_abelianized_exponent(
    group: &PermGroup,
    p: u64,
    cap: u64,
) -> Result<u64, GroupError> {
    Ok(group.sylow_subgroup(p, cap)?.abelianized_exponent())
}

fn result(
    check: &dyn Check,
    ctx: &GroupContext,
    p: u64,
    status: CheckStatus,
    witnesses: Vec<Witness>,
    details: serde_json::Value,
) -> CheckResult {
    CheckResult {
        check_id: check.id().to_string(),
        group: ctx.name().to_string(),
        prime: p,
        status,
        witnesses,
        details,
    }
}

/// Common degenerate case: p does not divide |G|.
fn guard_prime(check: &dyn Check, ctx: &GroupContext, p: u64) -> Option<CheckResult> {
    let order = ctx.group().order();
    if order % p != 0 {
        Some(result(
            check,
            ctx,
            p,
            CheckStatus::NotApplicable,
            vec![Witness::Note {
                note: format!("group order {order} is not divisible by {p}"),
            }],
            json!({}),
        ))
    } else {
        None
    }
}

fn histogram_levels_at_least_two(hist: &LevelHistogram) -> Vec<u32> {
    hist.counts.keys().copied().filter(|&a| a >= 2).collect()
}

struct Continuity;

impl Check for Continuity {
    fn id(&self) -> &'static str {
        "continuity"
    }
    fn description(&self) -> &'static str {
        "Levels of p'-degree irreducible characters are continuous: every \
         level between 2 and the maximum observed level occurs."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for p = 2; conjecture for odd primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let hist = ctx.histogram(p);
        let max_level = hist.counts.keys().max().copied().unwrap_or(0);
        let missing: Vec<u32> =
            (2..=max_level).filter(|a| !hist.counts.contains_key(a)).collect();
        let mut witnesses = Vec::new();
        let status = if missing.is_empty() {
            CheckStatus::Pass
        } else {
            for &a in &missing {
                witnesses.push(Witness::Note {
                    note: format!("no p'-degree irreducible character of level {a}"),
                });
            }
            if let Some((i, chi)) = ctx
                .table()
                .irreducibles()
                .iter()
                .enumerate()
                .find(|(_, c)| c.degree() % p != 0 && char_level(c, p) == max_level)
            {
                witnesses.push(Witness::Character {
                    index: i,
                    degree: chi.degree(),
                    level: max_level,
                });
            }
            CheckStatus::Fail
        };
        Ok(result(
            self,
            ctx,
            p,
            status,
            witnesses,
            json!({ "max_level": max_level, "histogram": hist.counts }),
        ))
    }
}

struct LowerBound;

impl Check for LowerBound {
    fn id(&self) -> &'static str {
        "lower-bound"
    }
    fn description(&self) -> &'static str {
        "|Irr_{p'}(G)| >= (exp(P/P') - 1)/(p - 1) + 2*sqrt(p - 1) - 1 for a \
         Sylow p-subgroup P; for p = 2 this reads |Irr_{2'}(G)| >= exp(P/P') \
         with equality exactly when P is cyclic and self-normalizing."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for p = 2; conjecture for odd primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let hist = ctx.histogram(p);
        let count = hist.total;
        let sylow = ctx.sylow(p)?;
        let exponent = sylow.group.abelianized_exponent();
        debug_assert_eq!(exponent, crate::arith::p_part(exponent, p));
        // The bound holds iff slack := count + 1 - (exponent - 1)/(p - 1)
        // is nonnegative with slack^2 >= 4(p - 1); both sides are integers.
        let slack = count as i128 + 1 - ((exponent - 1) / (p - 1)) as i128;
        let mut pass = slack >= 0 && slack * slack >= 4 * (p as i128 - 1);
        let mut details = json!({
            "p_prime_degree_count": count,
            "sylow_abelianized_exponent": exponent,
        });
        let mut witnesses = vec![Witness::Subgroup {
            description: sylow.description.clone(),
            order: sylow.group.order(),
        }];
        if p == 2 {
            let cyclic = sylow.group.is_cyclic(ctx.max_order())?;
            let self_normalizing =
                ctx.sylow_normalizer(2)?.group.order() == sylow.group.order();
            let equality = count == exponent;
            pass = pass && (equality == (cyclic && self_normalizing));
            details["sylow_cyclic"] = json!(cyclic);
            details["sylow_self_normalizing"] = json!(self_normalizing);
            details["equality"] = json!(equality);
        }
        let status = if pass { CheckStatus::Pass } else { CheckStatus::Fail };
        if status == CheckStatus::Fail {
            witnesses.push(Witness::Note {
                note: format!(
                    "{count} p'-degree irreducible characters against exp(P/P') = {exponent}"
                ),
            });
        }
        Ok(result(self, ctx, p, status, witnesses, details))
    }
}

struct IsaacsNavarro;

impl Check for IsaacsNavarro {
    fn id(&self) -> &'static str {
        "isaacs-navarro"
    }
    fn description(&self) -> &'static str {
        "Levels of p'-degree irreducible characters are at most \
         log_p exp(P/P'); for p = 2 and exp(P/P') >= 4 the maximum level \
         attains the bound."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for p = 2; conjecture for odd primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let sylow = ctx.sylow(p)?;
        let exponent = sylow.group.abelianized_exponent();
        let alpha = valuation(exponent, p);
        let hist = ctx.histogram(p);
        let max_level = hist.counts.keys().max().copied().unwrap_or(0);
        let mut pass = max_level <= alpha;
        if p == 2 && alpha >= 2 {
            pass = pass && max_level == alpha;
        }
        let status = if pass { CheckStatus::Pass } else { CheckStatus::Fail };
        let mut witnesses = vec![Witness::Subgroup {
            description: sylow.description.clone(),
            order: sylow.group.order(),
        }];
        if status == CheckStatus::Fail {
            witnesses.push(Witness::Note {
                note: format!("max level {max_level} against bound {alpha}"),
            });
        }
        Ok(result(
            self,
            ctx,
            p,
            status,
            witnesses,
            json!({
                "alpha": alpha,
                "max_level": max_level,
                "sylow_abelianized_exponent": exponent,
            }),
        ))
    }
}

struct MnLevels;

impl Check for MnLevels {
    fn id(&self) -> &'static str {
        "mn-levels"
    }
    fn description(&self) -> &'static str {
        "The level histogram over p'-degree irreducible characters agrees \
         between G and the normalizer of a Sylow p-subgroup."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for p = 2; conjecture for odd primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let normalizer = ctx.sylow_normalizer(p)?;
        let g_hist = ctx.histogram(p);
        let n_hist = level_histogram(&normalizer.table, p);
        let status = if g_hist.counts == n_hist.counts {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Ok(result(
            self,
            ctx,
            p,
            status,
            vec![Witness::Subgroup {
                description: normalizer.description.clone(),
                order: normalizer.group.order(),
            }],
            json!({
                "group_histogram": g_hist.counts,
                "normalizer_histogram": n_hist.counts,
            }),
        ))
    }
}

struct Achieved;

impl Check for Achieved {
    fn id(&self) -> &'static str {
        "achieved"
    }
    fn description(&self) -> &'static str {
        "Every p'-degree irreducible character of level >= 2 attains its \
         level at a p-element."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for p = 2; conjecture for odd primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let mut checked = 0u64;
        let mut witnesses = Vec::new();
        for (i, chi) in ctx.table().irreducibles().iter().enumerate() {
            if chi.degree() % p == 0 {
                continue;
            }
            let profile = achieved_analysis(chi, p);
            if profile.level < 2 {
                continue;
            }
            checked += 1;
            if !profile.achieved_at_p_element {
                witnesses.push(Witness::Character {
                    index: i,
                    degree: chi.degree(),
                    level: profile.level,
                });
            }
        }
        if checked == 0 {
            return Ok(result(
                self,
                ctx,
                p,
                CheckStatus::NotApplicable,
                vec![Witness::Note {
                    note: "no p'-degree irreducible character of level >= 2".into(),
                }],
                json!({ "characters_checked": 0 }),
            ));
        }
        let status = if witnesses.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        Ok(result(
            self,
            ctx,
            p,
            status,
            witnesses,
            json!({ "characters_checked": checked }),
        ))
    }
}

struct ProductLemma;

impl Check for ProductLemma {
    fn id(&self) -> &'static str {
        "product-lemma"
    }
    fn description(&self) -> &'static str {
        "For p'-degree irreducibles phi, psi with lev(phi) <= lev(phi*psi) \
         and psi attaining its level at a p-element: lev(psi) <= \
         lev(phi*psi) and max(lev(phi), lev(psi)) = lev(phi*psi)."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for all primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let rows: Vec<(usize, u32, bool)> = ctx
            .table()
            .irreducibles()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.degree() % p != 0)
            .map(|(i, c)| {
                let profile = achieved_analysis(c, p);
                (i, profile.level, profile.achieved_at_p_element)
            })
            .collect();
        let mut pairs_checked = 0u64;
        let mut witnesses = Vec::new();
        for &(i, lev_phi, _) in &rows {
            for &(j, lev_psi, psi_achieved) in &rows {
                if !psi_achieved {
                    continue;
                }
                let phi = ctx.table().character(i);
                let psi = ctx.table().character(j);
                let product = phi.product(psi)?;
                let lev_product = char_level(&product, p);
                if lev_phi > lev_product {
                    continue;
                }
                pairs_checked += 1;
                let ok = lev_psi <= lev_product
                    && lev_phi.max(lev_psi) == lev_product;
                if !ok {
                    witnesses.push(Witness::Note {
                        note: format!(
                            "rows {i} and {j}: levels {lev_phi}, {lev_psi}, \
                             product level {lev_product}"
                        ),
                    });
                }
            }
        }
        let status = if witnesses.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        Ok(result(
            self,
            ctx,
            p,
            status,
            witnesses,
            json!({ "pairs_checked": pairs_checked }),
        ))
    }
}

struct ExpLemma;

impl Check for ExpLemma {
    fn id(&self) -> &'static str {
        "exp-lemma"
    }
    fn description(&self) -> &'static str {
        "For normal subgroups N: exp(P_{G/N}/P'_{G/N}) <= exp(P/P') <= \
         exp(P_N/P'_N) * exp(P_{G/N}/P'_{G/N}), with P_H a Sylow p-subgroup \
         of H."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for all primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let group = ctx.group();
        let cap = ctx.max_order();
        let exp_g = sylow_abelianized_exponent(group, p, cap)?;
        let mut candidates: Vec<(&'static str, PermGroup)> = Vec::new();
        for (desc, n) in [
            ("derived subgroup", group.derived_subgroup()),
            ("center", group.center(cap)?),
            ("trivial subgroup", PermGroup::trivial(group.degree())),
        ] {
            let duplicate = candidates
                .iter()
                .any(|(_, m)| m.order() == n.order() && m.contains_group(&n));
            if !duplicate {
                candidates.push((desc, n));
            }
        }
        let mut cases = Vec::new();
        let mut witnesses = Vec::new();
        for (desc, n) in &candidates {
            let quotient = group.quotient(n, cap)?;
            let exp_n = sylow_abelianized_exponent(n, p, cap)?;
            let exp_q = sylow_abelianized_exponent(&quotient, p, cap)?;
            let ok = exp_q <= exp_g && exp_g <= exp_n * exp_q;
            cases.push(json!({
                "normal_subgroup": desc,
                "order": n.order(),
                "exp_quotient": exp_q,
                "exp_group": exp_g,
                "exp_normal": exp_n,
                "ok": ok,
            }));
            if !ok {
                witnesses.push(Witness::Subgroup {
                    description: (*desc).to_string(),
                    order: n.order(),
                });
            }
        }
        let status = if witnesses.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        Ok(result(self, ctx, p, status, witnesses, json!({ "cases": cases })))
    }
}

struct SubgroupTransfer;

impl Check for SubgroupTransfer {
    fn id(&self) -> &'static str {
        "subgroup-transfer"
    }
    fn description(&self) -> &'static str {
        "For subgroups M of p'-index (here: a Sylow p-subgroup and its \
         normalizer), G has a p'-degree irreducible character of level \
         alpha >= 2 exactly when M does."
    }
    fn proved_for(&self) -> &'static str {
        "theorem for p = 2; conjecture for odd primes"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let g_levels = histogram_levels_at_least_two(&ctx.histogram(p));
        let mut witnesses = Vec::new();
        let mut subgroups = Vec::new();
        let sylow = ctx.sylow(p)?;
        let normalizer = ctx.sylow_normalizer(p)?;
        let mut supply = vec![sylow];
        if supply[0].group.order() != normalizer.group.order() {
            supply.push(normalizer);
        }
        for sub in &supply {
            // Both subgroups contain a Sylow p-subgroup, so their index is
            // prime to p.
            debug_assert_ne!((ctx.group().order() / sub.group.order()) % p, 0);
            let m_levels = histogram_levels_at_least_two(&level_histogram(&sub.table, p));
            let agree = g_levels == m_levels;
            subgroups.push(json!({
                "description": sub.description,
                "order": sub.group.order(),
                "levels": m_levels,
                "agree": agree,
            }));
            if !agree {
                witnesses.push(Witness::Subgroup {
                    description: sub.description.clone(),
                    order: sub.group.order(),
                });
            }
        }
        let status = if witnesses.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        Ok(result(
            self,
            ctx,
            p,
            status,
            witnesses,
            json!({ "group_levels": g_levels, "subgroups": subgroups }),
        ))
    }
}

struct Ilnt;

impl Check for Ilnt {
    fn id(&self) -> &'static str {
        "ilnt"
    }
    fn description(&self) -> &'static str {
        "The field of values of every non-2-rational odd-degree irreducible \
         character contains the imaginary unit i."
    }
    fn proved_for(&self) -> &'static str {
        "theorem (p = 2 only)"
    }
    fn run(&self, ctx: &GroupContext, p: u64) -> Result<CheckResult, VerifyError> {
        if p != 2 {
            return Ok(result(
                self,
                ctx,
                p,
                CheckStatus::NotApplicable,
                vec![Witness::Note { note: "statement specific to p = 2".into() }],
                json!({}),
            ));
        }
        if let Some(r) = guard_prime(self, ctx, p) {
            return Ok(r);
        }
        let mut checked = 0u64;
        let mut witnesses = Vec::new();
        for (i, chi) in ctx.table().irreducibles().iter().enumerate() {
            if chi.degree() % 2 == 0 {
                continue;
            }
            let level = char_level(chi, 2);
            if level == 0 {
                continue;
            }
            checked += 1;
            if !field_contains_i(chi) {
                witnesses.push(Witness::Character {
                    index: i,
                    degree: chi.degree(),
                    level,
                });
            }
        }
        let status = if witnesses.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        Ok(result(
            self,
            ctx,
            p,
            status,
            witnesses,
            json!({ "characters_checked": checked }),
        ))
    }
}

/// Run every registered check for every listed prime, sorted by
/// (group, prime, check id).
pub fn run_all(ctx: &GroupContext, primes: &[u64]) -> Result<Vec<CheckResult>, VerifyError> {
    let checks = registry();
    let mut out = Vec::new();
    for &p in primes {
        for check in &checks {
            out.push(check.run(ctx, p)?);
        }
    }
    sort_results(&mut out);
    Ok(out)
}

pub fn sort_results(results: &mut [CheckResult]) {
    results.sort_by(|a, b| {
        (a.group.as_str(), a.prime, a.check_id.as_str())
            .cmp(&(b.group.as_str(), b.prime, b.check_id.as_str()))
    });
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupMeta {
    pub name: String,
    pub order: u64,
    pub degree: usize,
    pub num_classes: usize,
    pub exponent: u64,
}

impl GroupMeta {
    pub fn of(ctx: &GroupContext) -> Self {
        GroupMeta {
            name: ctx.name().to_string(),
            order: ctx.group().order(),
            degree: ctx.group().degree(),
            num_classes: ctx.classes().len(),
            exponent: ctx.classes().exponent(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct StatusCounts {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
}

impl StatusCounts {
    fn add(&mut self, status: CheckStatus) {
        match status {
            CheckStatus::Pass => self.pass += 1,
            CheckStatus::Fail => self.fail += 1,
            CheckStatus::NotApplicable => self.not_applicable += 1,
        }
    }
}

/// Full machine-readable verification report.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub corpus: Vec<GroupMeta>,
    pub checks: Vec<CheckInfo>,
    pub results: Vec<CheckResult>,
    pub summary: BTreeMap<String, StatusCounts>,
    pub totals: StatusCounts,
}

impl VerificationReport {
    pub fn new(mut corpus: Vec<GroupMeta>, mut results: Vec<CheckResult>) -> Self {
        corpus.sort_by(|a, b| a.name.cmp(&b.name));
        sort_results(&mut results);
        let mut summary: BTreeMap<String, StatusCounts> = BTreeMap::new();
        let mut totals = StatusCounts::default();
        for r in &results {
            summary.entry(r.check_id.clone()).or_default().add(r.status);
            totals.add(r.status);
        }
        VerificationReport { corpus, checks: check_infos(), results, summary, totals }
    }

    pub fn all_passed(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.status == CheckStatus::Fail)
    }
}
