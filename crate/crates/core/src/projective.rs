//! Points, subspaces, projections and field reduction.
//!
//! Points are stored with their first nonzero coordinate equal to one and
//! subspaces by a reduced echelon basis, so equality is structural.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field_tower::{Field, FieldElement};
use crate::matrix::Matrix;

/// A point of `PG(n − 1, ·)` with normalized homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    pub fn new(field: &Field, mut coords: Vec<FieldElement>) -> Result<Self> {
        let lead = *coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        if lead != FieldElement::ONE {
            let inv = field.inv(lead).expect("nonzero");
            for c in coords.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        Ok(ProjectivePoint { coords })
    }

    /// Trusts the caller that `coords` is already normalized.
    pub(crate) fn from_normalized(coords: Vec<FieldElement>) -> Self {
        debug_assert!(coords.iter().find(|c| !c.is_zero()) == Some(&FieldElement::ONE));
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<FieldElement> {
        self.coords
    }

    /// Length of the coordinate vector.
    pub fn ambient(&self) -> usize {
        self.coords.len()
    }
}

/// True iff the normalized coordinates all lie in `F_q`.
pub fn in_canonical_subgeometry(field: &Field, p: &ProjectivePoint) -> bool {
    p.coords.iter().all(|&c| field.is_in_base(c))
}

/// Points of the canonical subgeometry `PG(n − 1, q)`, ordered by the
/// position of the leading one and then lexicographically by base ordinals.
pub fn subgeometry_points(field: &Field, n: usize) -> impl Iterator<Item = ProjectivePoint> {
    points_over(field.base_elements().to_vec(), n)
}

/// All points of `PG(n − 1, q^h)`, in the same order as
/// [`subgeometry_points`] with codes in place of base ordinals.
pub fn space_points(field: &Field, n: usize) -> impl Iterator<Item = ProjectivePoint> {
    points_over(field.elements().collect(), n)
}

fn points_over(elems: Vec<FieldElement>, n: usize) -> impl Iterator<Item = ProjectivePoint> {
    let q = elems.len() as u64;
    (0..n).rev().flat_map(move |lead| {
        let free = n - 1 - lead;
        let elems = elems.clone();
        (0..q.pow(free as u32)).map(move |idx| point_from_index(&elems, n, lead, idx))
    })
}

fn point_from_index(elems: &[FieldElement], n: usize, lead: usize, mut idx: u64) -> ProjectivePoint {
    let q = elems.len() as u64;
    let mut coords = vec![FieldElement::ZERO; n];
    coords[lead] = FieldElement::ONE;
    for c in coords[lead + 1..].iter_mut().rev() {
        *c = elems[(idx % q) as usize];
        idx /= q;
    }
    ProjectivePoint::from_normalized(coords)
}

/// A subspace of an `ambient`-dimensional vector space, stored as a reduced
/// echelon basis. The empty projective subspace has no rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn empty(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zero(0, ambient) }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::AmbientMismatch(ambient, v.len()));
        }
        let (basis, _) = Matrix::new(ambient, vectors).rref(field);
        Ok(Subspace { ambient, basis })
    }

    pub fn from_point(p: &ProjectivePoint) -> Self {
        Subspace { ambient: p.ambient(), basis: Matrix::new(p.ambient(), vec![p.coords.clone()]) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        self.basis.rows()
    }

    /// Vector-space dimension.
    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    /// `None` for the empty subspace.
    pub fn projective_dim(&self) -> Option<usize> {
        self.rank().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    /// The single point of a rank-one subspace.
    pub fn as_point(&self) -> Option<ProjectivePoint> {
        (self.rank() == 1).then(|| ProjectivePoint::from_normalized(self.basis.rows()[0].clone()))
    }

    pub fn span(field: &Field, parts: &[&Subspace]) -> Result<Self> {
        let ambient = parts.first().map_or(0, |s| s.ambient);
        let mut rows = Vec::new();
        for s in parts {
            if s.ambient != ambient {
                return Err(Error::AmbientMismatch(ambient, s.ambient));
            }
            rows.extend(s.basis.rows().iter().cloned());
        }
        Subspace::from_vectors(field, ambient, rows)
    }

    pub fn join(&self, field: &Field, other: &Subspace) -> Result<Self> {
        Subspace::span(field, &[self, other])
    }

    /// Vectors `x` with `⟨b, x⟩ = 0` for every basis vector `b`.
    pub fn annihilator(&self, field: &Field) -> Matrix {
        self.basis.kernel(field)
    }

    pub fn meet(&self, field: &Field, other: &Subspace) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut duals = self.annihilator(field).into_rows();
        duals.extend(other.annihilator(field).into_rows());
        let basis = Matrix::new(self.ambient, duals).kernel(field);
        Ok(Subspace { ambient: self.ambient, basis })
    }

    pub fn contains_vector(&self, field: &Field, v: &[FieldElement]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // reduce v against the echelon basis
        let mut w = v.to_vec();
        for row in self.basis.rows() {
            let pivot = row.iter().position(|c| !c.is_zero()).expect("echelon rows are nonzero");
            let f = w[pivot];
            if f.is_zero() {
                continue;
            }
            for (x, &y) in w.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    pub fn contains(&self, field: &Field, p: &ProjectivePoint) -> bool {
        self.contains_vector(field, &p.coords)
    }
}

/// `⟨P, axis⟩ ∩ target`.
pub fn project(field: &Field, p: &ProjectivePoint, axis: &Subspace, target: &Subspace) -> Result<ProjectivePoint> {
    let n = axis.ambient();
    if target.ambient() != n || p.ambient() != n {
        return Err(Error::AmbientMismatch(n, if target.ambient() != n { target.ambient() } else { p.ambient() }));
    }
    if axis.rank() + target.rank() != n {
        return Err(Error::BadFrame("axis and target dimensions do not complement".into()));
    }
    if !axis.meet(field, target)?.is_empty() {
        return Err(Error::BadFrame("axis meets target".into()));
    }
    project_unchecked(field, p, axis, target)
}

/// [`project`] without the frame checks; the caller validated the frame once.
pub(crate) fn project_unchecked(
    field: &Field,
    p: &ProjectivePoint,
    axis: &Subspace,
    target: &Subspace,
) -> Result<ProjectivePoint> {
    if axis.contains(field, p) {
        return Err(Error::PointOnAxis);
    }
    let joined = axis.join(field, &Subspace::from_point(p))?;
    joined.meet(field, target)?.as_point().ok_or_else(|| Error::BadFrame("projection is not a single point".into()))
}

/// Field reduction with respect to the `F_q`-basis `1, g, …, g^{h−1}` of
/// `F_{q^h}`, `g` the field generator.
#[derive(Debug, Clone)]
pub struct FieldReduction<'a> {
    field: &'a Field,
    basis: Vec<FieldElement>,
    dual: Vec<FieldElement>,
}

impl<'a> FieldReduction<'a> {
    pub fn new(field: &'a Field) -> Self {
        let h = field.h() as usize;
        let g = field.generator();
        let basis: Vec<FieldElement> = (0..h as u64).map(|j| field.pow(g, j)).collect();
        let gram = Matrix::new(
            h,
            basis.iter().map(|&a| basis.iter().map(|&b| field.trace(field.mul(a, b))).collect()).collect(),
        );
        let inv = gram.inverse(field).expect("trace form is nondegenerate");
        let dual = inv
            .rows()
            .iter()
            .map(|row| row.iter().zip(&basis).fold(FieldElement::ZERO, |acc, (&c, &b)| field.add(acc, field.mul(c, b))))
            .collect();
        FieldReduction { field, basis, dual }
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// `F_q`-coordinates of `x` in the chosen basis.
    pub fn coordinates(&self, x: FieldElement) -> Vec<FieldElement> {
        self.dual.iter().map(|&d| self.field.trace(self.field.mul(x, d))).collect()
    }

    /// Concatenated coordinates of each entry: `F_{q^h}^r → F_q^{rh}`.
    pub fn expand(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        v.iter().flat_map(|&x| self.coordinates(x)).collect()
    }

    /// The `(h − 1)`-dimensional subspace of `PG(rh − 1, q)` representing `p`.
    pub fn reduce_point(&self, p: &ProjectivePoint) -> Subspace {
        let rows = self
            .basis
            .iter()
            .map(|&b| {
                let scaled: Vec<FieldElement> = p.coords().iter().map(|&c| self.field.mul(b, c)).collect();
                self.expand(&scaled)
            })
            .collect();
        Subspace::from_vectors(self.field, p.ambient() * self.basis.len(), rows).expect("lengths agree")
    }

    /// The `F_q`-span of the expanded vectors.
    pub fn reduce_vectors(&self, ambient: usize, vectors: &[Vec<FieldElement>]) -> Result<Subspace> {
        let rows = vectors.iter().map(|v| self.expand(v)).collect();
        Subspace::from_vectors(self.field, ambient * self.basis.len(), rows)
    }
}

fn det2(field: &Field, a: &ProjectivePoint, b: &ProjectivePoint) -> FieldElement {
    let (a, b) = (a.coords(), b.coords());
    field.sub(field.mul(a[0], b[1]), field.mul(a[1], b[0]))
}

/// Cross-ratio `[P1,P4][P2,P3] / ([P1,P3][P2,P4])` of four distinct points
/// of `PG(1, q^h)`, where `[A,B]` is the determinant of the coordinate pair.
///
/// The frame `⟨(1,0)⟩, ⟨(0,1)⟩, ⟨(1,1)⟩, ⟨(1,λ)⟩` gives `λ`. Distinct points
/// never give `0`, `1` or infinity.
pub fn cross_ratio(field: &Field, pts: [&ProjectivePoint; 4]) -> Result<FieldElement> {
    if let Some(p) = pts.iter().find(|p| p.ambient() != 2) {
        return Err(Error::AmbientMismatch(2, p.ambient()));
    }
    let [p1, p2, p3, p4] = pts;
    let num = field.mul(det2(field, p1, p4), det2(field, p2, p3));
    let den = field.mul(det2(field, p1, p3), det2(field, p2, p4));
    if num.is_zero() || den.is_zero() || det2(field, p1, p2).is_zero() || det2(field, p3, p4).is_zero() {
        return Err(Error::NotDistinct);
    }
    Ok(field.div(num, den))
}

/// The six values the cross-ratio takes under reordering of the four points:
/// `λ, 1/λ, 1−λ, 1/(1−λ), (λ−1)/λ, λ/(λ−1)`.
pub fn cross_ratio_orbit(field: &Field, lambda: FieldElement) -> [FieldElement; 6] {
    let one = FieldElement::ONE;
    let om = field.sub(one, lambda);
    let lm = field.sub(lambda, one);
    [lambda, field.div(one, lambda), om, field.div(one, om), field.div(lm, lambda), field.div(lambda, lm)]
}
