//! Exact root data: roots as integer vectors, weights as rational vectors,
//! and the compact subsystem selected by a real form.
//!
//! Roots are stored with the positive roots first (indices `0..N`) in a
//! canonical order, followed by their negatives: root `N + i` is `-root(i)`.
//! Simple roots occupy the first `rank` positive slots.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::parse;

/// Default ceiling on the number of roots produced by reflection closure.
pub const DEFAULT_ROOT_BOUND: usize = 10_000;
const MAX_AMBIENT_DIM: usize = 256;
const MAX_INPUT_COORD: i64 = 1 << 20;

/// A vector in the ambient rational space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(Vec<BigRational>);

impl Weight {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Weight(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![BigRational::zero(); dim])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        self.check_dim(other.dim())?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        self.check_dim(other.dim())?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, factor: &BigRational) -> Weight {
        Weight(self.0.iter().map(|a| a * factor).collect())
    }

    /// Pairing against a root of the same dimension.
    pub fn pair_root(&self, root: &Root) -> BigRational {
        debug_assert_eq!(self.dim(), root.dim());
        let mut acc = BigRational::zero();
        for (a, &r) in self.0.iter().zip(&root.0) {
            if r != 0 {
                acc += a * BigRational::from_integer(r.into());
            }
        }
        acc
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Standard symmetric bilinear form on ambient coordinates.
pub fn pairing(u: &Weight, v: &Weight) -> Result<BigRational> {
    u.check_dim(v.dim())?;
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
}

/// A root in integer lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Root) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn to_weight(&self) -> Weight {
        Weight::from_integers(&self.0)
    }

    fn checked_dot(&self, other: &Root) -> Option<i64> {
        self.0.iter().zip(&other.0).try_fold(0i64, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// A reduced crystallographic root system with a fixed positive system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ambient_dim: usize,
    rank: usize,
    /// Positive roots followed by their negatives.
    roots: Vec<Root>,
    /// Simple-root coefficients of each positive root.
    coefficients: Vec<Vec<i64>>,
    lookup: HashMap<Root, usize>,
    rho: Weight,
    type_a: bool,
    fingerprint: u64,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rank == other.rank
            && self.roots == other.roots
            && self.rho == other.rho
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    fn from_positive(ambient_dim: usize, rank: usize, mut positives: Vec<(Root, Vec<i64>)>) -> Result<Self> {
        positives.sort_by(|(_, a), (_, b)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n = positives.len();
        let mut roots = Vec::with_capacity(2 * n);
        let mut coefficients = Vec::with_capacity(n);
        for (r, c) in positives {
            roots.push(r);
            coefficients.push(c);
        }
        for i in 0..n {
            let neg = roots[i].neg();
            roots.push(neg);
        }
        let mut lookup = HashMap::with_capacity(2 * n);
        for (i, r) in roots.iter().enumerate() {
            if lookup.insert(r.clone(), i).is_some() {
                return Err(Error::InconsistentPositivity(r.to_string()));
            }
        }
        let mut rho = Weight::zero(ambient_dim);
        let half = BigRational::new(1.into(), 2.into());
        for r in &roots[..n] {
            rho = rho.checked_add(&r.to_weight())?;
        }
        rho = rho.scale(&half);

        let type_a = n == ambient_dim * (ambient_dim - 1) / 2
            && roots.iter().all(|r| {
                let plus = r.0.iter().filter(|&&c| c == 1).count();
                let minus = r.0.iter().filter(|&&c| c == -1).count();
                let zero = r.0.iter().filter(|&&c| c == 0).count();
                plus == 1 && minus == 1 && zero == ambient_dim - 2
            });

        let mut hasher = DefaultHasher::new();
        ambient_dim.hash(&mut hasher);
        roots.hash(&mut hasher);
        let fingerprint = hasher.finish();

        Ok(RootSystem { ambient_dim, rank, roots, coefficients, lookup, rho, type_a, fingerprint })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `N`, the number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.coefficients.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.roots[index]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.roots[..self.rank]
    }

    pub fn coefficients(&self, positive_index: usize) -> &[i64] {
        &self.coefficients[positive_index]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn is_type_a(&self) -> bool {
        self.type_a
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.lookup.get(root).copied()
    }

    pub fn is_positive_index(&self, index: usize) -> bool {
        index < self.num_positive()
    }

    /// Index of `-root(index)`.
    pub fn negated_index(&self, index: usize) -> usize {
        let n = self.num_positive();
        if index < n {
            index + n
        } else {
            index - n
        }
    }

    /// `<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)`; exact for a validated system.
    pub fn coroot_pairing(&self, beta: usize, alpha: usize) -> i64 {
        let a = &self.roots[alpha];
        2 * self.roots[beta].dot(a) / a.dot(a)
    }

    /// Image of root `beta` under the reflection in root `alpha`.
    pub fn reflect(&self, alpha: usize, beta: usize) -> usize {
        let k = self.coroot_pairing(beta, alpha);
        let a = &self.roots[alpha];
        let image = Root(self.roots[beta].0.iter().zip(&a.0).map(|(b, a)| b - k * a).collect());
        self.lookup[&image]
    }

    /// The reflection in root `alpha` as a permutation of root indices.
    pub fn reflection_permutation(&self, alpha: usize) -> Vec<u16> {
        (0..self.roots.len()).map(|b| self.reflect(alpha, b) as u16).collect()
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: w.dim() });
        }
        Ok(())
    }

    /// True iff `lambda + rho` is orthogonal to every root.
    pub fn is_tdlds_character(&self, lambda: &Weight) -> Result<bool> {
        self.check_weight(lambda)?;
        let shifted = lambda.checked_add(&self.rho)?;
        Ok(self.positive_roots().iter().all(|r| shifted.pair_root(r).is_zero()))
    }

    pub fn classify_weight(&self, lambda: &Weight) -> Result<WeightClass> {
        self.check_weight(lambda)?;
        let shifted = lambda.checked_add(&self.rho)?;
        let mut integral = true;
        let mut dominant_shifted = true;
        let mut singular_simple = Vec::new();
        for (i, a) in self.simple_roots().iter().enumerate() {
            let norm = BigRational::from_integer(a.dot(a).into());
            let coroot = lambda.pair_root(a) * BigRational::from_integer(2.into()) / norm;
            if !coroot.is_integer() {
                integral = false;
            }
            let p = shifted.pair_root(a);
            if p.is_negative() {
                dominant_shifted = false;
            } else if p.is_zero() {
                singular_simple.push(i);
            }
        }
        Ok(WeightClass { integral, dominant_shifted, singular_simple })
    }

    /// The fundamental weight `e_1 + ... + e_i` of a standard type A realization (1-based `i`).
    pub fn type_a_fundamental_weight(&self, i: usize) -> Result<Weight> {
        if !self.type_a || i == 0 || i >= self.ambient_dim {
            return Err(Error::NotTypeA);
        }
        let coords: Vec<i64> = (0..self.ambient_dim).map(|j| i64::from(j < i)).collect();
        Ok(Weight::from_integers(&coords))
    }
}

/// Integrality and dominance data for a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClass {
    pub integral: bool,
    pub dominant_shifted: bool,
    /// Indices of simple roots orthogonal to `lambda + rho`.
    pub singular_simple: Vec<usize>,
}

/// `A_{n-1}` realized in `n` coordinates: roots `e_i - e_j`, simple roots `e_i - e_{i+1}`.
pub fn build_type_a(n: usize) -> Result<RootSystem> {
    if n == 0 {
        return Err(Error::InvalidRank("type A needs n >= 1".into()));
    }
    if n > MAX_AMBIENT_DIM {
        return Err(Error::InvalidRank(format!("n = {} exceeds {}", n, MAX_AMBIENT_DIM)));
    }
    let mut positives = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut coords = vec![0i64; n];
            coords[i] = 1;
            coords[j] = -1;
            let coeffs: Vec<i64> = (0..n - 1).map(|k| i64::from(k >= i && k < j)).collect();
            positives.push((Root(coords), coeffs));
        }
    }
    RootSystem::from_positive(n, n - 1, positives)
}

/// Generates a root system from its simple roots by reflection closure.
pub fn load_root_system(ambient_dim: usize, simple: &[Vec<i64>], bound: usize) -> Result<RootSystem> {
    if ambient_dim == 0 || ambient_dim > MAX_AMBIENT_DIM {
        return Err(Error::InvalidRootData(format!("ambient_dim must be in 1..={}", MAX_AMBIENT_DIM)));
    }
    let rank = simple.len();
    if rank > ambient_dim {
        return Err(Error::NotABase(format!("{} simple roots in dimension {}", rank, ambient_dim)));
    }
    let mut simple_roots = Vec::with_capacity(rank);
    for s in simple {
        if s.len() != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: s.len() });
        }
        if s.iter().any(|c| c.abs() > MAX_INPUT_COORD) {
            return Err(Error::InvalidRootData(format!("coordinate magnitude above {}", MAX_INPUT_COORD)));
        }
        let r = Root(s.clone());
        if r.is_zero() {
            return Err(Error::InvalidRootData("zero simple root".into()));
        }
        simple_roots.push(r);
    }
    let norms: Vec<i64> = simple_roots.iter().map(|a| a.dot(a)).collect();

    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let p = simple_roots[i].dot(&simple_roots[j]);
            if p > 0 {
                return Err(Error::NotABase(format!(
                    "simple roots {} and {} have positive pairing",
                    simple_roots[i], simple_roots[j]
                )));
            }
            if (2 * p) % norms[j] != 0 {
                return Err(Error::NonCrystallographic(format!(
                    "<{}, {}^vee> is not an integer",
                    simple_roots[i], simple_roots[j]
                )));
            }
        }
    }
    let rows: Vec<Vec<BigInt>> = simple_roots.iter().map(|r| r.0.iter().map(|&c| BigInt::from(c)).collect()).collect();
    if linalg::rank_of_rows(&rows, ambient_dim) != rank {
        return Err(Error::NotABase("simple roots are linearly dependent".into()));
    }

    // Closure under simple reflections, tracking simple-root coefficients.
    let mut seen: HashMap<Root, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for (i, r) in simple_roots.iter().enumerate() {
        let coeffs: Vec<i64> = (0..rank).map(|k| i64::from(k == i)).collect();
        seen.insert(r.clone(), coeffs.clone());
        queue.push_back((r.clone(), coeffs));
    }
    while let Some((beta, coeffs)) = queue.pop_front() {
        for (i, alpha) in simple_roots.iter().enumerate() {
            let overflow = || Error::UnboundedClosure { bound };
            let dot = beta.checked_dot(alpha).ok_or_else(overflow)?;
            let twice = dot.checked_mul(2).ok_or_else(overflow)?;
            if twice % norms[i] != 0 {
                return Err(Error::NonCrystallographic(format!("<{}, {}^vee> is not an integer", beta, alpha)));
            }
            let k = twice / norms[i];
            if k == 0 {
                continue;
            }
            let mut image = Vec::with_capacity(ambient_dim);
            for (b, a) in beta.0.iter().zip(&alpha.0) {
                image.push(k.checked_mul(*a).and_then(|ka| b.checked_sub(ka)).ok_or_else(overflow)?);
            }
            let mut new_coeffs = coeffs.clone();
            new_coeffs[i] = new_coeffs[i].checked_sub(k).ok_or_else(overflow)?;
            let image = Root(image);
            if !seen.contains_key(&image) {
                if seen.len() >= bound {
                    return Err(Error::UnboundedClosure { bound });
                }
                seen.insert(image.clone(), new_coeffs.clone());
                queue.push_back((image, new_coeffs));
            }
        }
    }

    let mut positives = Vec::new();
    for (root, coeffs) in seen {
        let nonneg = coeffs.iter().all(|&c| c >= 0);
        let nonpos = coeffs.iter().all(|&c| c <= 0);
        if nonneg == nonpos {
            return Err(Error::InconsistentPositivity(root.to_string()));
        }
        if nonneg {
            positives.push((root, coeffs));
        }
    }
    let rs = RootSystem::from_positive(ambient_dim, rank, positives)?;
    if rs.roots.len() != 2 * rs.num_positive() {
        return Err(Error::InconsistentPositivity("roots are not closed under negation".into()));
    }
    Ok(rs)
}

/// The compact roots `Phi_K`, stored as a mask over the root indices of a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactSubsystem {
    mask: Vec<bool>,
    fingerprint: u64,
    pattern: Option<String>,
    num_positive: usize,
}

impl CompactSubsystem {
    pub fn empty(rs: &RootSystem) -> Self {
        CompactSubsystem {
            mask: vec![false; rs.roots.len()],
            fingerprint: rs.fingerprint,
            pattern: None,
            num_positive: 0,
        }
    }

    /// `Phi_K = {e_i - e_j : pattern_i = pattern_j}` for a type A system.
    pub fn from_signature(rs: &RootSystem, pattern: &str) -> Result<Self> {
        if !rs.is_type_a() {
            return Err(Error::NotTypeA);
        }
        let signs = parse::parse_pattern(pattern)?;
        if signs.len() != rs.ambient_dim {
            return Err(Error::InvalidPattern(format!(
                "pattern has length {}, system has dimension {}",
                signs.len(),
                rs.ambient_dim
            )));
        }
        let mask: Vec<bool> = rs
            .roots
            .iter()
            .map(|r| {
                let i = r.0.iter().position(|&c| c == 1).expect("type A root");
                let j = r.0.iter().position(|&c| c == -1).expect("type A root");
                signs[i] == signs[j]
            })
            .collect();
        let num_positive = mask[..rs.num_positive()].iter().filter(|&&m| m).count();
        let text: String = signs.iter().map(|&s| if s { '+' } else { '-' }).collect();
        Ok(CompactSubsystem { mask, fingerprint: rs.fingerprint, pattern: Some(text), num_positive })
    }

    /// An explicit compact root list; must be closed under negation and under root addition.
    pub fn from_roots(rs: &RootSystem, roots: &[Root]) -> Result<Self> {
        let mut mask = vec![false; rs.roots.len()];
        for r in roots {
            let idx = rs.index_of(r).ok_or_else(|| Error::InvalidCompactSet(format!("{} is not a root", r)))?;
            mask[idx] = true;
        }
        let num_positive = mask[..rs.num_positive()].iter().filter(|&&m| m).count();
        let k = CompactSubsystem { mask, fingerprint: rs.fingerprint, pattern: None, num_positive };
        k.validate(rs)?;
        Ok(k)
    }

    /// Checks closure under negation and under addition within `Phi`.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        self.check_system(rs)?;
        let members: Vec<usize> = self.indices().collect();
        for &a in &members {
            if !self.mask[rs.negated_index(a)] {
                return Err(Error::InvalidCompactSet(format!("{} present without its negative", rs.roots[a])));
            }
        }
        let set: HashSet<usize> = members.iter().copied().collect();
        for &a in &members {
            for &b in &members {
                let sum = Root(rs.roots[a].0.iter().zip(&rs.roots[b].0).map(|(x, y)| x + y).collect());
                if let Some(idx) = rs.index_of(&sum) {
                    if !set.contains(&idx) {
                        return Err(Error::InvalidCompactSet(format!(
                            "{} + {} = {} is a root but not compact",
                            rs.roots[a], rs.roots[b], sum
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_system(&self, rs: &RootSystem) -> Result<()> {
        if self.fingerprint != rs.fingerprint || self.mask.len() != rs.roots.len() {
            return Err(Error::ForeignCompactSubsystem);
        }
        Ok(())
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask[index]
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices().take_while(move |&i| i < self.mask.len() / 2)
    }

    /// `#(Phi^+ ∩ Phi_K)`.
    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pattern(&self) -> Option<&str> {
        self.pattern.as_deref()
    }

    pub fn roots(&self, rs: &RootSystem) -> Vec<Root> {
        self.indices().map(|i| rs.roots[i].clone()).collect()
    }

    /// True iff some simple root is compact.
    pub fn meets_simple(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).any(|i| self.mask[i])
    }
}

/// Root-data document: the input format for generic systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootData {
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compact_roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature_pattern: Option<String>,
}

impl RootData {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the system and, when the document carries one, its compact subsystem.
    pub fn build(&self, bound: usize) -> Result<(RootSystem, Option<CompactSubsystem>)> {
        let rs = load_root_system(self.ambient_dim, &self.simple_roots, bound)?;
        let compact = match (&self.compact_roots, &self.signature_pattern) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidRootData("give either compact_roots or signature_pattern, not both".into()))
            }
            (Some(list), None) => {
                for r in list {
                    if r.len() != self.ambient_dim {
                        return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: r.len() });
                    }
                }
                let roots: Vec<Root> = list.iter().map(|r| Root(r.clone())).collect();
                Some(CompactSubsystem::from_roots(&rs, &roots)?)
            }
            (None, Some(p)) => Some(CompactSubsystem::from_signature(&rs, p)?),
            (None, None) => None,
        };
        Ok((rs, compact))
    }
}
