//! Group specifications, builtin families, and the builtin corpus.
//!
//! A [`GroupSpec`] is the serialized form of a permutation group: a name, a
//! degree, and generators written as lists of disjoint 1-based cycles. Specs
//! are produced by family builders (`cyclic:12`, `psl2(7)`, …), by the
//! builtin corpus, or parsed from JSON files.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{GroupError, PermGroup};
use crate::perm::{PermError, Permutation};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown family or builtin group `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter for family `{family}`: {reason}")]
    InvalidParameter { family: String, reason: String },
    #[error("invalid group spec `{name}`: {source}")]
    InvalidCycles {
        name: String,
        #[source]
        source: PermError,
    },
    #[error("group construction failed for `{name}`: {source}")]
    Group {
        name: String,
        #[source]
        source: GroupError,
    },
    #[error("cannot read group file `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse group file `{path}`: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

/// Serialized permutation group: generators as disjoint 1-based cycles.
///
/// ```json
/// {"name": "S4", "degree": 4, "generators": [[[1,2]], [[1,2,3,4]]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Vec<Vec<usize>>>) -> Self {
        GroupSpec { name: name.into(), degree, generators }
    }

    /// Spec from explicit permutations (cycles are recovered, 1-based).
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        perms: &[Permutation],
    ) -> Self {
        let generators = perms
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| {
                g.cycles()
                    .into_iter()
                    .map(|c| c.into_iter().map(|x| x + 1).collect())
                    .collect()
            })
            .collect();
        GroupSpec { name: name.into(), degree, generators }
    }

    /// Realize the spec as a permutation group with a stabilizer chain.
    pub fn build(&self) -> Result<PermGroup, CorpusError> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for cycles in &self.generators {
            let g = Permutation::from_cycles(self.degree, cycles).map_err(|source| {
                CorpusError::InvalidCycles { name: self.name.clone(), source }
            })?;
            gens.push(g);
        }
        PermGroup::from_generators(self.degree, gens)
            .map_err(|source| CorpusError::Group { name: self.name.clone(), source })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {})", self.name, self.degree)
    }
}

/// Read a [`GroupSpec`] from a JSON file and validate it builds.
pub fn parse_group_file(path: &std::path::Path) -> Result<GroupSpec, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let spec: GroupSpec = serde_json::from_str(&text).map_err(|source| CorpusError::Json {
        path: path.display().to_string(),
        source,
    })?;
    spec.build()?;
    Ok(spec)
}

/// A parametrized family of groups, e.g. `cyclic` or `psl2`.
pub trait FamilyBuilder: Send + Sync {
    /// Family keyword used in `family:params` / `family(params)` specs.
    fn family(&self) -> &'static str;
    /// Human-readable description of the parameters.
    fn describe(&self) -> &'static str;
    /// Build a spec from the raw parameter string.
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError>;
}

fn param_err(family: &str, reason: impl Into<String>) -> CorpusError {
    CorpusError::InvalidParameter { family: family.to_string(), reason: reason.into() }
}

fn parse_u64(family: &str, params: &str) -> Result<u64, CorpusError> {
    params
        .trim()
        .parse::<u64>()
        .map_err(|_| param_err(family, format!("expected an integer, got `{params}`")))
}

struct Cyclic;

impl FamilyBuilder for Cyclic {
    fn family(&self) -> &'static str {
        "cyclic"
    }
    fn describe(&self) -> &'static str {
        "cyclic group C_n; parameter: order n >= 1"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        let n = parse_u64(self.family(), params)?;
        if n == 0 {
            return Err(param_err(self.family(), "order must be >= 1"));
        }
        let name = format!("C{n}");
        if n == 1 {
            return Ok(GroupSpec::new(name, 1, vec![]));
        }
        let cycle: Vec<usize> = (1..=n as usize).collect();
        Ok(GroupSpec::new(name, n as usize, vec![vec![cycle]]))
    }
}

struct Dihedral;

impl FamilyBuilder for Dihedral {
    fn family(&self) -> &'static str {
        "dihedral"
    }
    fn describe(&self) -> &'static str {
        "dihedral group of order n (n even, n >= 4); D4 is the Klein four-group"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        let n = parse_u64(self.family(), params)?;
        if n < 4 || n % 2 != 0 {
            return Err(param_err(self.family(), "order must be even and >= 4"));
        }
        let name = format!("D{n}");
        if n == 4 {
            // Degenerate polygon: the Klein four-group on 4 points.
            return Ok(GroupSpec::new(
                name,
                4,
                vec![vec![vec![1, 2], vec![3, 4]], vec![vec![1, 3], vec![2, 4]]],
            ));
        }
        let m = (n / 2) as usize;
        let rotation: Vec<usize> = (1..=m).collect();
        // Reflection fixing vertex 1: j <-> m + 2 - j.
        let reflection: Vec<Vec<usize>> = (2..)
            .take_while(|&j| j < m + 2 - j)
            .map(|j| vec![j, m + 2 - j])
            .collect();
        Ok(GroupSpec::new(name, m, vec![vec![rotation], reflection]))
    }
}

struct Symmetric;

impl FamilyBuilder for Symmetric {
    fn family(&self) -> &'static str {
        "symmetric"
    }
    fn describe(&self) -> &'static str {
        "symmetric group S_n; parameter: degree n >= 1"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        let n = parse_u64(self.family(), params)? as usize;
        if n == 0 {
            return Err(param_err(self.family(), "degree must be >= 1"));
        }
        let name = format!("S{n}");
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(vec![vec![1, 2]]);
        }
        if n >= 3 {
            gens.push(vec![(1..=n).collect()]);
        }
        Ok(GroupSpec::new(name, n, gens))
    }
}

struct Alternating;

impl FamilyBuilder for Alternating {
    fn family(&self) -> &'static str {
        "alternating"
    }
    fn describe(&self) -> &'static str {
        "alternating group A_n; parameter: degree n >= 3"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        let n = parse_u64(self.family(), params)? as usize;
        if n < 3 {
            return Err(param_err(self.family(), "degree must be >= 3"));
        }
        let name = format!("A{n}");
        let mut gens = vec![vec![vec![1, 2, 3]]];
        if n >= 4 {
            if n % 2 == 1 {
                gens.push(vec![(1..=n).collect()]);
            } else {
                gens.push(vec![(2..=n).collect()]);
            }
        }
        Ok(GroupSpec::new(name, n, gens))
    }
}

struct Quaternion8;

impl FamilyBuilder for Quaternion8 {
    fn family(&self) -> &'static str {
        "quaternion8"
    }
    fn describe(&self) -> &'static str {
        "the quaternion group Q8 in its regular representation; no parameters"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        if !params.trim().is_empty() {
            return Err(param_err(self.family(), "takes no parameters"));
        }
        Ok(GroupSpec::new(
            "Q8",
            8,
            vec![
                vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]],
                vec![vec![1, 5, 3, 7], vec![2, 8, 4, 6]],
            ],
        ))
    }
}

/// Arithmetic in GF(p^k) with elements coded as base-p digit strings of the
/// polynomial coefficients (code = sum c_i p^i for sum c_i t^i).
#[derive(Clone, Copy)]
struct Gf {
    p: u64,
    k: u32,
    /// Reduction rule: t^k = sum of these coefficients (codes of 0..k-1
    /// degree terms), i.e. the code of the reductum of the monic modulus.
    reductum: u64,
}

impl Gf {
    fn new(q: u64) -> Option<Gf> {
        match q {
            q if crate::arith::is_prime(q) => Some(Gf { p: q, k: 1, reductum: 0 }),
            4 => Some(Gf { p: 2, k: 2, reductum: 0b11 }),       // t^2 = t + 1
            8 => Some(Gf { p: 2, k: 3, reductum: 0b011 }),      // t^3 = t + 1
            9 => Some(Gf { p: 3, k: 2, reductum: 2 }),          // t^2 = -1 = 2
            _ => None,
        }
    }

    fn size(&self) -> u64 {
        self.p.pow(self.k)
    }

    fn digits(&self, code: u64) -> Vec<u64> {
        let mut c = code;
        (0..self.k)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    fn neg(&self, a: u64) -> u64 {
        let digits: Vec<u64> = self.digits(a).iter().map(|&d| (self.p - d) % self.p).collect();
        self.from_digits(&digits)
    }

    fn mul_by_t(&self, a: u64) -> u64 {
        let mut d = self.digits(a);
        let top = d[self.k as usize - 1];
        d.rotate_right(1);
        d[0] = 0;
        let shifted = self.from_digits(&d);
        if top == 0 {
            shifted
        } else {
            // t^k = reductum, scaled by the carried top coefficient.
            let mut acc = shifted;
            for _ in 0..top {
                acc = self.add(acc, self.reductum);
            }
            acc
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let mut acc = 0;
        let mut shifted = a;
        for d in self.digits(b) {
            for _ in 0..d {
                acc = self.add(acc, shifted);
            }
            shifted = self.mul_by_t(shifted);
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        assert_ne!(a, 0, "zero has no inverse");
        (1..self.size())
            .find(|&b| self.mul(a, b) == 1)
            .expect("nonzero field elements are invertible")
    }
}

struct Psl2;

impl FamilyBuilder for Psl2 {
    fn family(&self) -> &'static str {
        "psl2"
    }
    fn describe(&self) -> &'static str {
        "PSL(2,q) on the projective line; parameter: q a prime or 4, 8, 9"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        let q = parse_u64(self.family(), params)?;
        let field = Gf::new(q).ok_or_else(|| {
            param_err(self.family(), format!("q = {q} is not a supported prime power"))
        })?;
        // Points 0..q-1 are the field element codes, point q is infinity.
        let degree = q as usize + 1;
        let infinity = q as usize;
        let mut perms = Vec::new();
        // Translations x -> x + t^i for an F_p-basis of GF(q).
        for i in 0..field.k {
            let b = field.p.pow(i);
            let mut images: Vec<u32> = (0..q).map(|x| field.add(x, b) as u32).collect();
            images.push(infinity as u32);
            perms.push(Permutation::from_images(images).expect("translation is a bijection"));
        }
        // Inversion x -> -1/x, swapping 0 and infinity.
        let mut images = vec![0u32; degree];
        images[0] = infinity as u32;
        images[infinity] = 0;
        for x in 1..q {
            images[x as usize] = field.neg(field.inv(x)) as u32;
        }
        perms.push(Permutation::from_images(images).expect("inversion is a bijection"));
        Ok(GroupSpec::from_permutations(format!("PSL2({q})"), degree, &perms))
    }
}

struct Sl23;

impl FamilyBuilder for Sl23 {
    fn family(&self) -> &'static str {
        "sl23"
    }
    fn describe(&self) -> &'static str {
        "SL(2,3) on the 8 nonzero vectors of GF(3)^2; no parameters"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        if !params.trim().is_empty() {
            return Err(param_err(self.family(), "takes no parameters"));
        }
        // Vectors (x, y) != (0, 0) in lexicographic order; the matrix
        // [[a, b], [c, d]] acts by (x, y) -> (a x + b y, c x + d y) mod 3.
        let vectors: Vec<(u64, u64)> = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&v| v != (0, 0))
            .collect();
        let index_of = |v: (u64, u64)| vectors.iter().position(|&w| w == v).unwrap() as u32;
        let act = |m: [[u64; 2]; 2]| {
            let images: Vec<u32> = vectors
                .iter()
                .map(|&(x, y)| {
                    index_of((
                        (m[0][0] * x + m[0][1] * y) % 3,
                        (m[1][0] * x + m[1][1] * y) % 3,
                    ))
                })
                .collect();
            Permutation::from_images(images).expect("invertible matrices act bijectively")
        };
        let gens = vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])];
        Ok(GroupSpec::from_permutations("SL2(3)", 8, &gens))
    }
}

struct DirectProduct;

impl FamilyBuilder for DirectProduct {
    fn family(&self) -> &'static str {
        "direct_product"
    }
    fn describe(&self) -> &'static str {
        "direct product of comma-separated specs, e.g. direct_product(cyclic(4),cyclic(3))"
    }
    fn build(&self, params: &str) -> Result<GroupSpec, CorpusError> {
        let parts = split_top_level(params);
        if parts.len() < 2 {
            return Err(param_err(self.family(), "needs at least two factors"));
        }
        let specs: Vec<GroupSpec> =
            parts.iter().map(|p| parse_spec(p)).collect::<Result<_, _>>()?;
        let name = specs.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join("x");
        let degree: usize = specs.iter().map(|s| s.degree).sum();
        let mut generators = Vec::new();
        let mut offset = 0usize;
        for spec in &specs {
            for cycles in &spec.generators {
                generators.push(
                    cycles
                        .iter()
                        .map(|c| c.iter().map(|&x| x + offset).collect())
                        .collect(),
                );
            }
            offset += spec.degree;
        }
        Ok(GroupSpec::new(name, degree, generators))
    }
}

/// Split on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current = String::new();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}

/// All registered family builders.
pub fn family_registry() -> Vec<Box<dyn FamilyBuilder>> {
    vec![
        Box::new(Cyclic),
        Box::new(Dihedral),
        Box::new(Symmetric),
        Box::new(Alternating),
        Box::new(Quaternion8),
        Box::new(Sl23),
        Box::new(Psl2),
        Box::new(DirectProduct),
    ]
}

/// Parse a group spec string: a builtin name (`S4`, `PSL2(7)`), or a family
/// with parameters in either `family:params` or `family(params)` form.
pub fn parse_spec(input: &str) -> Result<GroupSpec, CorpusError> {
    let input = input.trim();
    if let Some(spec) = builtin(input) {
        return Ok(spec);
    }
    let (family, params) = if let Some((f, p)) = input.split_once(':') {
        (f.trim(), p.trim().to_string())
    } else if let Some(open) = input.find('(') {
        if !input.ends_with(')') {
            return Err(CorpusError::UnknownFamily(input.to_string()));
        }
        (input[..open].trim(), input[open + 1..input.len() - 1].to_string())
    } else {
        (input, String::new())
    };
    for builder in family_registry() {
        if builder.family() == family {
            return builder.build(&params);
        }
    }
    Err(CorpusError::UnknownFamily(input.to_string()))
}

/// The builtin corpus: name -> family spec string.
fn builtin_table() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("C1", "cyclic:1"),
        ("C2", "cyclic:2"),
        ("C3", "cyclic:3"),
        ("C4", "cyclic:4"),
        ("C6", "cyclic:6"),
        ("C8", "cyclic:8"),
        ("C9", "cyclic:9"),
        ("C12", "cyclic:12"),
        ("C16", "cyclic:16"),
        ("C24", "cyclic:24"),
        ("D8", "dihedral:8"),
        ("D12", "dihedral:12"),
        ("D16", "dihedral:16"),
        ("S3", "symmetric:3"),
        ("S4", "symmetric:4"),
        ("S5", "symmetric:5"),
        ("S6", "symmetric:6"),
        ("A4", "alternating:4"),
        ("A5", "alternating:5"),
        ("A6", "alternating:6"),
        ("Q8", "quaternion8:"),
        ("SL2(3)", "sl23:"),
        ("PSL2(4)", "psl2:4"),
        ("PSL2(5)", "psl2:5"),
        ("PSL2(7)", "psl2:7"),
        ("PSL2(8)", "psl2:8"),
        ("PSL2(9)", "psl2:9"),
        ("PSL2(11)", "psl2:11"),
        ("PSL2(13)", "psl2:13"),
        ("C4xC3", "direct_product(cyclic(4),cyclic(3))"),
    ])
}

/// Look up a builtin corpus group by name.
pub fn builtin(name: &str) -> Option<GroupSpec> {
    let table = builtin_table();
    let spec_str = table.get(name)?;
    let mut spec = parse_spec(spec_str).expect("builtin table entries parse");
    spec.name = name.to_string();
    Some(spec)
}

/// All builtin corpus groups in deterministic (name) order.
pub fn builtin_corpus() -> Vec<GroupSpec> {
    builtin_table()
        .keys()
        .map(|name| builtin(name).expect("builtin names resolve"))
        .collect()
}

/// Corpus-wide computation limits.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub groups: Vec<GroupSpec>,
    /// Largest group order for which elements are enumerated.
    pub max_order: u64,
    /// Largest class count for which a character table is computed.
    pub max_classes: usize,
}

impl Default for CorpusManifest {
    fn default() -> Self {
        CorpusManifest {
            groups: builtin_corpus(),
            max_order: crate::group::DEFAULT_ORDER_CAP,
            max_classes: 30,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders_are_frozen() {
        let expected: Vec<(&str, u64)> = vec![
            ("C1", 1),
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("C6", 6),
            ("C8", 8),
            ("C9", 9),
            ("C12", 12),
            ("C16", 16),
            ("C24", 24),
            ("D8", 8),
            ("D12", 12),
            ("D16", 16),
            ("S3", 6),
            ("S4", 24),
            ("S5", 120),
            ("S6", 720),
            ("A4", 12),
            ("A5", 60),
            ("A6", 360),
            ("Q8", 8),
            ("SL2(3)", 24),
            ("PSL2(4)", 60),
            ("PSL2(5)", 60),
            ("PSL2(7)", 168),
            ("PSL2(8)", 504),
            ("PSL2(9)", 360),
            ("PSL2(11)", 660),
            ("PSL2(13)", 1092),
            ("C4xC3", 12),
        ];
        for (name, order) in expected {
            let group = builtin(name).unwrap().build().unwrap();
            assert_eq!(group.order(), order, "order of {name}");
        }
        // PSL2 orders follow q(q-1)(q+1)/gcd(2, q-1).
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            let group = builtin(&format!("PSL2({q})")).unwrap().build().unwrap();
            let formula = q * (q - 1) * (q + 1) / crate::arith::gcd(2, q - 1);
            assert_eq!(group.order(), formula);
        }
    }

    #[test]
    fn corpus_is_complete_and_sorted() {
        let corpus = builtin_corpus();
        assert_eq!(corpus.len(), 30);
        let names: Vec<&str> = corpus.iter().map(|s| s.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(corpus.iter().all(|s| s.build().is_ok()));
        // All orders stay within the default manifest cap.
        let manifest = CorpusManifest::default();
        for spec in &manifest.groups {
            assert!(spec.build().unwrap().order() <= manifest.max_order);
        }
    }

    #[test]
    fn dihedral_structure() {
        let d8 = builtin("D8").unwrap().build().unwrap();
        assert!(!d8.is_abelian());
        assert_eq!(d8.derived_subgroup().order(), 2);
        let d4 = parse_spec("dihedral:4").unwrap().build().unwrap();
        assert_eq!(d4.order(), 4);
        assert!(d4.is_abelian());
        assert!(!d4.is_cyclic(1000).unwrap());
        let d12 = builtin("D12").unwrap().build().unwrap();
        assert_eq!(d12.order(), 12);
        assert_eq!(d12.derived_subgroup().order(), 3);
    }

    #[test]
    fn sl23_structure() {
        let g = builtin("SL2(3)").unwrap().build().unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.abelianized_exponent(), 3);
        let sylow2 = g.sylow_subgroup(2, 100_000).unwrap();
        assert_eq!(sylow2.order(), 8);
        // The Sylow 2-subgroup is quaternion: a unique involution.
        let involutions = sylow2
            .elements()
            .unwrap()
            .into_iter()
            .filter(|g| g.order() == 2)
            .count();
        assert_eq!(involutions, 1);
        assert_eq!(g.center(100_000).unwrap().order(), 2);
    }

    #[test]
    fn quaternion_vs_dihedral() {
        let q8 = builtin("Q8").unwrap().build().unwrap();
        let d8 = builtin("D8").unwrap().build().unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(d8.order(), 8);
        let count_involutions = |g: &PermGroup| {
            g.elements().unwrap().into_iter().filter(|x| x.order() == 2).count()
        };
        assert_eq!(count_involutions(&q8), 1);
        assert_eq!(count_involutions(&d8), 5);
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"name":"S4","degree":4,"generators":[[[1,2]],[[1,2,3,4]]]}"#;
        let spec: GroupSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec.name, "S4");
        assert_eq!(spec.build().unwrap().order(), 24);
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(back, json);
        for original in builtin_corpus() {
            let text = serde_json::to_string(&original).unwrap();
            let reparsed: GroupSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(reparsed, original);
            assert_eq!(reparsed.build().unwrap().order(), original.build().unwrap().order());
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        // Repeated point within a cycle list.
        let bad = GroupSpec::new("bad", 3, vec![vec![vec![1, 1]]]);
        assert!(matches!(bad.build(), Err(CorpusError::InvalidCycles { .. })));
        // Point out of range.
        let bad = GroupSpec::new("bad", 2, vec![vec![vec![1, 5]]]);
        assert!(bad.build().is_err());
        // Unknown family.
        assert!(matches!(
            parse_spec("frobnicate:7"),
            Err(CorpusError::UnknownFamily(_))
        ));
        // Bad parameters.
        assert!(parse_spec("cyclic:x").is_err());
        assert!(parse_spec("dihedral:7").is_err());
        assert!(parse_spec("psl2:6").is_err());
        assert!(parse_spec("alternating:2").is_err());
    }

    #[test]
    fn spec_forms_agree() {
        for (colon, paren) in [
            ("cyclic:8", "cyclic(8)"),
            ("psl2:7", "psl2(7)"),
            ("symmetric:4", "symmetric(4)"),
        ] {
            let a = parse_spec(colon).unwrap();
            let b = parse_spec(paren).unwrap();
            assert_eq!(a, b);
        }
        let product = parse_spec("direct_product(cyclic(4),cyclic(3))").unwrap();
        assert_eq!(product.name, "C4xC3");
        assert_eq!(product.degree, 7);
        let group = product.build().unwrap();
        assert_eq!(group.order(), 12);
        assert!(group.is_cyclic(1000).unwrap());
        // Nested products parse via depth-aware comma splitting.
        let nested =
            parse_spec("direct_product(direct_product(cyclic(2),cyclic(3)),cyclic(5))").unwrap();
        assert_eq!(nested.name, "C2xC3xC5");
        assert_eq!(nested.build().unwrap().order(), 30);
    }

    #[test]
    fn psl2_field_arithmetic() {
        for q in [4u64, 8, 9] {
            let f = Gf::new(q).unwrap();
            // Field axioms by brute force on the small domain.
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            // The multiplicative group is cyclic of order q - 1: some
            // element has full multiplicative order.
            let ord = |a: u64| {
                let mut x = a;
                let mut n = 1;
                while x != 1 {
                    x = f.mul(x, a);
                    n += 1;
                }
                n
            };
            assert!((1..q).any(|a| ord(a) == q - 1));
        }
    }

    #[test]
    fn alternating_groups_are_simple_sized() {
        for (name, order) in [("A4", 12u64), ("A5", 60), ("A6", 360)] {
            let g = builtin(name).unwrap().build().unwrap();
            assert_eq!(g.order(), order);
            // Every generator is even: contained in the derived subgroup of
            // the ambient symmetric group.
            let sn = parse_spec(&format!("symmetric:{}", g.degree())).unwrap().build().unwrap();
            assert!(sn.derived_subgroup().contains_group(&g));
        }
        let a5 = builtin("A5").unwrap().build().unwrap();
        assert_eq!(a5.derived_subgroup().order(), 60);
    }

    #[test]
    fn group_file_parsing() {
        let dir = std::env::temp_dir().join("corpus-file-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("v4.json");
        std::fs::write(
            &path,
            r#"{"name":"V4","degree":4,"generators":[[[1,2],[3,4]],[[1,3],[2,4]]]}"#,
        )
        .unwrap();
        let spec = parse_group_file(&path).unwrap();
        assert_eq!(spec.build().unwrap().order(), 4);
        let bad_path = dir.join("bad.json");
        std::fs::write(&bad_path, r#"{"name":"bad","degree":2}"#).unwrap();
        assert!(matches!(
            parse_group_file(&bad_path),
            Err(CorpusError::Json { .. })
        ));
        std::fs::write(&bad_path, r#"{"name":"bad","degree":2,"generators":[[[1,7]]]}"#).unwrap();
        assert!(matches!(
            parse_group_file(&bad_path),
            Err(CorpusError::InvalidCycles { .. })
        ));
        std::fs::remove_dir_all(&dir).ok();
    }
}
