//! Minimum-size linear sets built from bounded-degree polynomial tuples.
//!
//! For a partition `t_1, …, t_{l+1}` of `k` and an `alpha` of degree `s` over
//! `F_q`, the rank-`k` subspace
//!
//! ```text
//! U = { (f_1(α), …, f_{l+1}(α)) : f_i ∈ F_q[X], deg f_i ≤ t_i − 1 }
//! ```
//!
//! of `F_{q^h}^{l+1}` defines a linear set in `PG(l, q^h)`. When
//! `t_i + t_j ≤ s + 1` for all `i ≠ j` its points correspond one-to-one to the
//! reduced tuples, so its size is `q^{k−1} + ⋯ + q^{k−l} + 1`.
//!
//! [`build_evaluation_set`] computes the set by brute force over all `q^k`
//! vectors. [`ProjectionFrame`] realizes the same set as a projection of the
//! canonical subgeometry `PG(k − 1, q)`. The [`predict`] and [`spectra`]
//! submodules hold the closed-form weight counts and the spectrum solver.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field_tower::{Field, FieldElement};
use crate::polyring::{PolyRing, PolyTuple};
use crate::projective::{FieldReduction, ProjectivePoint};

mod frame;
pub mod predict;
pub mod spectra;

pub use frame::{build_projection_frame, project_subgeometry, ProjectionFrame};
pub use predict::{predicted_spectrum, predicted_spectrum_line, predicted_stratum_counts};
pub use spectra::feasible_spectra;

/// Parameters of one construction. The partition keeps the caller's order,
/// which fixes the coordinate order of the output.
#[derive(Debug, Clone)]
pub struct ConstructionSpec<'a> {
    field: &'a Field,
    s: u32,
    alpha: FieldElement,
    partition: Vec<usize>,
}

impl<'a> ConstructionSpec<'a> {
    /// Uses the `alpha` picked by [`Field::select_alpha`].
    pub fn new(field: &'a Field, s: u32, partition: &[usize]) -> Result<Self> {
        let alpha = field.select_alpha(s)?;
        Self::with_alpha(field, alpha, partition)
    }

    pub fn with_alpha(field: &'a Field, alpha: FieldElement, partition: &[usize]) -> Result<Self> {
        let spec = Self::new_unchecked(field, alpha, partition);
        spec.validate()?;
        Ok(spec)
    }

    /// Skips validation, so frames can be built for an `alpha` whose degree
    /// is too small.
    pub fn new_unchecked(field: &'a Field, alpha: FieldElement, partition: &[usize]) -> Self {
        ConstructionSpec { field, s: field.degree_over_base(alpha), alpha, partition: partition.to_vec() }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: alloc::string::String| Err(Error::SpecInvariantViolated(m));
        if self.partition.len() < 2 {
            return fail(format!("need at least two parts, got {}", self.partition.len()));
        }
        if self.partition.contains(&0) {
            return fail("every part must be at least 1".into());
        }
        if self.s < 2 {
            return fail(format!("alpha has degree {} over F_q, need at least 2", self.s));
        }
        let mut sorted = self.partition.clone();
        sorted.sort_unstable();
        let n = sorted.len();
        let (a, b) = (sorted[n - 2], sorted[n - 1]);
        if a + b > self.s as usize + 1 {
            return fail(format!("t_i + t_j = {a} + {b} = {} exceeds s + 1 = {}", a + b, self.s + 1));
        }
        Ok(())
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn sorted_partition(&self) -> Vec<usize> {
        let mut t = self.partition.clone();
        t.sort_unstable();
        t
    }

    pub fn k(&self) -> usize {
        self.partition.iter().sum()
    }

    pub fn l(&self) -> usize {
        self.partition.len() - 1
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// One vector per power `α^j`, `j < t_i`, placed in coordinate `i`.
    pub fn source_basis(&self) -> Vec<Vec<FieldElement>> {
        let n = self.partition.len();
        let mut out = Vec::with_capacity(self.k());
        for (i, &t) in self.partition.iter().enumerate() {
            for j in 0..t as u64 {
                let mut v = vec![FieldElement::ZERO; n];
                v[i] = self.field.pow(self.alpha, j);
                out.push(v);
            }
        }
        out
    }

    /// `f(α)` for every polynomial of degree `< t_i`, indexed as in
    /// [`PolyRing::from_index`].
    fn value_tables(&self) -> Vec<Vec<FieldElement>> {
        let f = self.field;
        let base = f.base_elements();
        let q = base.len();
        self.partition
            .iter()
            .map(|&t| {
                let size = q.pow(t as u32);
                let mut vals = vec![FieldElement::ZERO; size];
                for idx in 1..size {
                    vals[idx] = f.add(base[idx % q], f.mul(self.alpha, vals[idx / q]));
                }
                vals
            })
            .collect()
    }
}

/// Club status of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClubStatus {
    Club,
    NotClub,
    /// Rank at most two: a head of weight `k − 1 ≤ 1` says nothing.
    Degenerate,
}

/// A linear set with its weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSetReport {
    q: u64,
    k: usize,
    points: Vec<(ProjectivePoint, u32)>,
    spectrum: Vec<u64>,
    source_basis: Option<Vec<Vec<FieldElement>>>,
    forms: Option<Vec<PolyTuple>>,
}

impl LinearSetReport {
    pub(crate) fn from_parts(
        q: u64,
        k: usize,
        points: Vec<(ProjectivePoint, u32)>,
        source_basis: Option<Vec<Vec<FieldElement>>>,
        forms: Option<Vec<PolyTuple>>,
    ) -> Self {
        let mut spectrum = vec![0u64; k];
        for &(_, w) in &points {
            spectrum[w as usize - 1] += 1;
        }
        LinearSetReport { q, k, points, spectrum, source_basis, forms }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Rank of the underlying subspace.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Points with their weights, in report order.
    pub fn points(&self) -> &[(ProjectivePoint, u32)] {
        &self.points
    }

    /// `x_1, …, x_k`: entry `i − 1` counts points of weight `i`.
    pub fn spectrum(&self) -> &[u64] {
        &self.spectrum
    }

    pub fn max_weight(&self) -> u32 {
        self.points.iter().map(|&(_, w)| w).max().unwrap_or(0)
    }

    pub fn source_basis(&self) -> Option<&[Vec<FieldElement>]> {
        self.source_basis.as_deref()
    }

    /// Reduced tuples matching [`LinearSetReport::points`] one-to-one, when
    /// the report came from the evaluation construction.
    pub fn forms(&self) -> Option<&[PolyTuple]> {
        self.forms.as_deref()
    }

    /// Dimension of the ambient vector space, `l + 1`.
    pub fn ambient(&self) -> usize {
        self.points.first().map_or(0, |(p, _)| p.ambient())
    }

    pub fn weight_of(&self, p: &ProjectivePoint) -> Option<u32> {
        self.points.iter().find(|(x, _)| x == p).map(|&(_, w)| w)
    }

    /// Point → weight map, for order-independent comparison.
    pub fn weight_map(&self) -> BTreeMap<ProjectivePoint, u32> {
        self.points.iter().cloned().collect()
    }

    /// `Σ x_i = |L|` and `Σ x_i (q^i − 1)/(q − 1) = (q^k − 1)/(q − 1)`.
    pub fn counting_identities_hold(&self) -> bool {
        let q = BigUint::from(self.q);
        let theta = |i: usize| (q.pow(i as u32) - 1u32) / (&q - 1u32);
        let total: u64 = self.spectrum.iter().sum();
        let weighted = self.spectrum.iter().enumerate().fold(BigUint::default(), |acc, (i, &x)| acc + theta(i + 1) * x);
        total as usize == self.size() && weighted == theta(self.k)
    }

    pub fn same_points_and_weights(&self, other: &LinearSetReport) -> bool {
        self.weight_map() == other.weight_map()
    }
}

/// `w ≥ 1` with `n + 1 = q^w`, if any.
pub fn log_q_plus_one(n: u64, q: u64) -> Option<u32> {
    let mut m = n + 1;
    let mut w = 0;
    while m.is_multiple_of(q) {
        m /= q;
        w += 1;
    }
    (m == 1 && w > 0).then_some(w)
}

fn normalize(field: &Field, v: &mut [FieldElement]) -> bool {
    let Some(&lead) = v.iter().find(|c| !c.is_zero()) else {
        return false;
    };
    if lead != FieldElement::ONE {
        let inv = field.inv(lead).expect("nonzero");
        for c in v.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    true
}

/// Enumerates all `q^k` vectors of `U`, groups them by projective point and
/// reads each weight off the group size. Points are listed in the order of
/// their reduced forms.
pub fn build_evaluation_set(spec: &ConstructionSpec<'_>) -> Result<LinearSetReport> {
    spec.validate()?;
    let field = spec.field();
    let q = spec.q();
    let tables = spec.value_tables();
    let n = tables.len();

    let mut counts: BTreeMap<Vec<FieldElement>, u64> = BTreeMap::new();
    let mut digits = vec![0usize; n];
    let mut v = vec![FieldElement::ZERO; n];
    'outer: loop {
        for (i, &d) in digits.iter().enumerate() {
            v[i] = tables[i][d];
        }
        if normalize(field, &mut v) {
            *counts.entry(v.clone()).or_insert(0) += 1;
        }
        for (d, t) in digits.iter_mut().zip(&tables) {
            *d += 1;
            if *d < t.len() {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }

    let mut weights: BTreeMap<Vec<FieldElement>, Option<u32>> = BTreeMap::new();
    for (p, &c) in &counts {
        let w = log_q_plus_one(c, q).ok_or(Error::NonIntegralWeight(c))?;
        weights.insert(p.clone(), Some(w));
    }

    let ring = PolyRing::new(field);
    let mut points = Vec::with_capacity(counts.len());
    let mut forms = Vec::with_capacity(counts.len());
    for tuple in ring.enumerate_reduced(spec.partition()) {
        for (i, f) in tuple.entries().iter().enumerate() {
            let idx = ring.index_of(f).expect("coefficients lie in F_q") as usize;
            v[i] = tables[i][idx];
        }
        normalize(field, &mut v);
        let w = weights
            .get_mut(&v)
            .and_then(Option::take)
            .ok_or_else(|| Error::SpecInvariantViolated("two reduced forms give the same point".into()))?;
        points.push((ProjectivePoint::from_normalized(v.clone()), w));
        forms.push(tuple);
    }
    if points.len() != counts.len() {
        return Err(Error::SpecInvariantViolated("a point has no reduced form".into()));
    }
    Ok(LinearSetReport::from_parts(q, spec.k(), points, Some(spec.source_basis()), Some(forms)))
}

/// Club detection from the spectrum alone.
pub fn detect_club(report: &LinearSetReport) -> ClubStatus {
    let k = report.k();
    if k <= 2 {
        return ClubStatus::Degenerate;
    }
    let x = report.spectrum();
    let q_pow = (report.q() as u128).pow(k as u32 - 1);
    let ok =
        x[k - 2] == 1 && x[0] as u128 == q_pow && x.iter().enumerate().all(|(i, &c)| i == 0 || i == k - 2 || c == 0);
    if ok {
        ClubStatus::Club
    } else {
        ClubStatus::NotClub
    }
}

/// Rank of `φ(P) ∩ π_U` computed by field reduction, where `π_U` is the
/// `F_q`-span of the expanded source basis.
pub struct WeightOracle<'a> {
    reduction: FieldReduction<'a>,
    pi_u: crate::projective::Subspace,
    field: &'a Field,
}

impl<'a> WeightOracle<'a> {
    pub fn new(field: &'a Field, report: &LinearSetReport) -> Result<Self> {
        let basis = report.source_basis().ok_or(Error::MissingSource)?;
        let reduction = FieldReduction::new(field);
        let pi_u = reduction.reduce_vectors(report.ambient(), basis)?;
        Ok(WeightOracle { reduction, pi_u, field })
    }

    pub fn weight(&self, p: &ProjectivePoint) -> Result<usize> {
        let phi = self.reduction.reduce_point(p);
        Ok(phi.meet(self.field, &self.pi_u)?.rank())
    }
}

/// `q^{k−1} + ⋯ + q^{k−l} + 1` for the partition of `spec`.
pub fn predicted_size(spec: &ConstructionSpec<'_>) -> BigUint {
    crate::polyring::count_reduced_closed_form(spec.partition(), spec.q())
}

/// `q^{k−1}`, the size of a club of rank `k`.
pub fn club_size(q: u64, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    BigUint::from(q).pow(k as u32 - 1)
}
