//! Blocking-set certification in `PG(2, q^h)`.
//!
//! Lines are handled as dual points: the line with coordinates `(a, b, c)` is
//! `{⟨x⟩ : a x_0 + b x_1 + c x_2 = 0}`. One scan over the `q^{2h} + q^h + 1`
//! lines produces a [`LineIncidenceProfile`], from which blocking, minimality
//! and secant data are read.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field_tower::{Field, FieldElement};
use crate::linear_sets::{log_q_plus_one, LinearSetReport};
use crate::matrix::Matrix;
use crate::projective::{space_points, FieldReduction, ProjectivePoint};

fn dot(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// The line through two distinct points, as a normalized dual vector.
pub fn line_through(field: &Field, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<ProjectivePoint> {
    if p.ambient() != 3 || q.ambient() != 3 {
        return Err(Error::NotAPlane);
    }
    let (a, b) = (p.coords(), q.coords());
    let cross = |i: usize, j: usize| field.sub(field.mul(a[i], b[j]), field.mul(a[j], b[i]));
    ProjectivePoint::new(field, vec![cross(1, 2), cross(2, 0), cross(0, 1)])
}

pub fn on_line(field: &Field, line: &ProjectivePoint, p: &ProjectivePoint) -> bool {
    dot(field, line.coords(), p.coords()).is_zero()
}

/// Intersection sizes of every line with a point set, plus the number of
/// tangent lines through each point of the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineIncidenceProfile {
    order: u64,
    lines: Vec<ProjectivePoint>,
    counts: Vec<u32>,
    tangents: Vec<u32>,
}

impl LineIncidenceProfile {
    pub fn new(field: &Field, points: &[ProjectivePoint]) -> Result<Self> {
        if points.iter().any(|p| p.ambient() != 3) {
            return Err(Error::NotAPlane);
        }
        let mut lines = Vec::new();
        let mut counts = Vec::new();
        let mut tangents = vec![0u32; points.len()];
        for line in space_points(field, 3) {
            let mut n = 0u32;
            let mut last = 0;
            for (i, p) in points.iter().enumerate() {
                if on_line(field, &line, p) {
                    n += 1;
                    last = i;
                }
            }
            if n == 1 {
                tangents[last] += 1;
            }
            lines.push(line);
            counts.push(n);
        }
        Ok(LineIncidenceProfile { order: field.order() as u64, lines, counts, tangents })
    }

    /// `q^h`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn lines(&self) -> &[ProjectivePoint] {
        &self.lines
    }

    /// `|ℓ ∩ B|` for each line, aligned with [`LineIncidenceProfile::lines`].
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Tangent count per point, aligned with the input point list.
    pub fn tangents(&self) -> &[u32] {
        &self.tangents
    }

    pub fn count_on(&self, line: &ProjectivePoint) -> Option<u32> {
        self.lines.iter().position(|l| l == line).map(|i| self.counts[i])
    }

    /// Intersection size → number of lines.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for &c in &self.counts {
            *h.entry(c).or_insert(0) += 1;
        }
        h
    }

    /// `Σ_ℓ |ℓ ∩ B| = |B|(q^h + 1)`.
    pub fn double_count_holds(&self) -> bool {
        let total: u64 = self.counts.iter().map(|&c| c as u64).sum();
        total == self.tangents.len() as u64 * (self.order + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingReport {
    pub size: usize,
    pub blocking: bool,
    /// `2|B| < 3(q^h + 1)`.
    pub small: bool,
    /// First line in scan order missing the set, if any.
    pub missed_line: Option<ProjectivePoint>,
    pub histogram: BTreeMap<u32, u64>,
}

pub fn verify_blocking(profile: &LineIncidenceProfile) -> BlockingReport {
    let size = profile.tangents.len();
    let missed_line = profile.counts.iter().position(|&c| c == 0).map(|i| profile.lines[i].clone());
    BlockingReport {
        size,
        blocking: missed_line.is_none(),
        small: 2 * (size as u64) < 3 * (profile.order + 1),
        missed_line,
        histogram: profile.histogram(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// Tangent count per point of the set.
    pub tangents: Vec<u32>,
}

/// A blocking set is minimal iff each of its points is on a tangent line.
pub fn verify_minimal(profile: &LineIncidenceProfile) -> Result<MinimalityReport> {
    if profile.counts.contains(&0) {
        return Err(Error::NotBlocking);
    }
    Ok(MinimalityReport { minimal: profile.tangents.iter().all(|&t| t > 0), tangents: profile.tangents.clone() })
}

/// A line together with the rank of the linear set it cuts out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineRank {
    pub line: ProjectivePoint,
    pub rank: u32,
}

/// Rank of `U ∩ ℓ` for every line, computed twice: from the point weights
/// (`m_ℓ = Σ_{P ∈ ℓ} (q^{w(P)} − 1)` nonzero vectors) and as the kernel
/// dimension of the `F_q`-linear map `u ↦ ⟨ℓ, u⟩` on the source basis.
pub fn line_ranks(field: &Field, report: &LinearSetReport, profile: &LineIncidenceProfile) -> Result<Vec<LineRank>> {
    let basis = report.source_basis().ok_or(Error::MissingSource)?;
    if report.ambient() != 3 {
        return Err(Error::NotAPlane);
    }
    let q = report.q();
    let k = report.k();
    let reduction = FieldReduction::new(field);
    let mut out = Vec::with_capacity(profile.lines.len());
    for (idx, line) in profile.lines.iter().enumerate() {
        let mut m: u64 = 0;
        if profile.counts[idx] > 0 {
            for (p, w) in report.points() {
                if on_line(field, line, p) {
                    m += q.pow(*w) - 1;
                }
            }
        }
        let by_weights = if m == 0 { 0 } else { log_q_plus_one(m, q).ok_or(Error::NonIntegralWeight(m))? };
        let images = basis.iter().map(|u| reduction.coordinates(dot(field, line.coords(), u))).collect();
        let by_kernel = (k - Matrix::new(field.h() as usize, images).rank(field)) as u32;
        if by_kernel != by_weights {
            return Err(Error::SpecInvariantViolated(alloc::format!(
                "line rank {by_weights} from weights disagrees with kernel rank {by_kernel}"
            )));
        }
        out.push(LineRank { line: line.clone(), rank: by_weights });
    }
    Ok(out)
}

/// Lines meeting the set in a linear set of rank `k − 1`.
pub fn redei_lines(field: &Field, report: &LinearSetReport, profile: &LineIncidenceProfile) -> Result<Vec<LineRank>> {
    let k = report.k() as u32;
    Ok(line_ranks(field, report, profile)?.into_iter().filter(|r| r.rank + 1 == k).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecantSpectrum {
    pub histogram: BTreeMap<u32, u64>,
    /// Whether some line meets the set in exactly `q + 1` points.
    pub has_q_plus_one_secant: bool,
}

pub fn secant_spectrum(profile: &LineIncidenceProfile, q: u64) -> SecantSpectrum {
    let histogram = profile.histogram();
    let has_q_plus_one_secant = histogram.contains_key(&((q + 1) as u32));
    SecantSpectrum { histogram, has_q_plus_one_secant }
}

/// Everything certified about a planar point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingCertificate {
    pub size: usize,
    pub blocking: bool,
    pub minimal: bool,
    pub small: bool,
    pub redei_lines: Vec<LineRank>,
    pub secant_histogram: BTreeMap<u32, u64>,
    pub double_count_holds: bool,
}

/// Runs every check on a planar linear set. `minimal` is false when the set
/// does not block.
pub fn certify(field: &Field, report: &LinearSetReport) -> Result<BlockingCertificate> {
    let points: Vec<ProjectivePoint> = report.points().iter().map(|(p, _)| p.clone()).collect();
    let profile = LineIncidenceProfile::new(field, &points)?;
    let blocking = verify_blocking(&profile);
    let minimal = match verify_minimal(&profile) {
        Ok(m) => m.minimal,
        Err(Error::NotBlocking) => false,
        Err(e) => return Err(e),
    };
    Ok(BlockingCertificate {
        size: blocking.size,
        blocking: blocking.blocking,
        minimal,
        small: blocking.small,
        redei_lines: redei_lines(field, report, &profile)?,
        secant_histogram: blocking.histogram,
        double_count_holds: profile.double_count_holds(),
    })
}
