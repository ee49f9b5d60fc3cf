//! The linear set as a projection of the canonical subgeometry.
//!
//! Coordinates of `PG(k − 1, q^h)` are grouped by part: `e_{i,1}, …, e_{i,t_i}`
//! occupy consecutive positions. Part `i` contributes the axis piece
//! `π_i = ⟨e_{i,j} − α e_{i,j+1} : j < t_i⟩`, empty when `t_i = 1`, and the
//! target is spanned by the last vectors `e_{i,t_i}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field_tower::{Field, FieldElement};
use crate::projective::{project_unchecked, subgeometry_points, ProjectivePoint, Subspace};

use super::{log_q_plus_one, ConstructionSpec, LinearSetReport};

/// Axis `Π`, target `Ω` and the data needed to read projected points back
/// as points of `PG(l, q^h)`.
#[derive(Debug, Clone)]
pub struct ProjectionFrame<'a> {
    field: &'a Field,
    partition: Vec<usize>,
    parts: Vec<Subspace>,
    axis: Subspace,
    target: Subspace,
}

impl<'a> ProjectionFrame<'a> {
    /// Builds the frame and checks that the axis misses both the subgeometry
    /// and the target.
    pub fn build(spec: &ConstructionSpec<'a>) -> Result<Self> {
        let frame = Self::assemble(spec)?;
        frame.check_disjoint()?;
        Ok(frame)
    }

    fn assemble(spec: &ConstructionSpec<'a>) -> Result<Self> {
        let field = spec.field();
        let k = spec.k();
        let alpha = spec.alpha();
        let minus_alpha = field.neg(alpha);
        let mut parts = Vec::new();
        let mut target_rows = Vec::new();
        let mut offset = 0;
        for &t in spec.partition() {
            let rows = (0..t.saturating_sub(1))
                .map(|j| {
                    let mut v = vec![FieldElement::ZERO; k];
                    v[offset + j] = FieldElement::ONE;
                    v[offset + j + 1] = minus_alpha;
                    v
                })
                .collect();
            parts.push(Subspace::from_vectors(field, k, rows)?);
            let mut e = vec![FieldElement::ZERO; k];
            e[offset + t - 1] = FieldElement::ONE;
            target_rows.push(e);
            offset += t;
        }
        let refs: Vec<&Subspace> = parts.iter().collect();
        let axis = if refs.is_empty() { Subspace::empty(k) } else { Subspace::span(field, &refs)? };
        let target = Subspace::from_vectors(field, k, target_rows)?;
        Ok(ProjectionFrame { field, partition: spec.partition().to_vec(), parts, axis, target })
    }

    /// Exhaustive test of every subgeometry point against the axis, and a
    /// meet computation for the target.
    pub fn check_disjoint(&self) -> Result<()> {
        let k = self.k();
        if subgeometry_points(self.field, k).any(|p| self.axis.contains(self.field, &p)) {
            return Err(Error::DisjointnessFailure("canonical subgeometry"));
        }
        if !self.axis.meet(self.field, &self.target)?.is_empty() {
            return Err(Error::DisjointnessFailure("target subspace"));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.partition.iter().sum()
    }

    pub fn axis(&self) -> &Subspace {
        &self.axis
    }

    pub fn target(&self) -> &Subspace {
        &self.target
    }

    /// The pieces `π_i`, in partition order.
    pub fn axis_parts(&self) -> &[Subspace] {
        &self.parts
    }

    /// Reads a point of the target in the basis `e_{1,t_1}, …, e_{l+1,t_{l+1}}`.
    pub fn target_coordinates(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let mut offset = 0;
        let mut out = Vec::with_capacity(self.partition.len());
        for &t in &self.partition {
            out.push(p.coords()[offset + t - 1]);
            offset += t;
        }
        ProjectivePoint::new(self.field, out)
    }
}

/// Builds the frame of `spec`; see [`ProjectionFrame::build`].
pub fn build_projection_frame<'a>(spec: &ConstructionSpec<'a>) -> Result<ProjectionFrame<'a>> {
    ProjectionFrame::build(spec)
}

/// Projects every point of `PG(k − 1, q)` from the axis onto the target.
/// A point of weight `w` is hit `(q^w − 1)/(q − 1)` times. Points are listed
/// in coordinate order.
pub fn project_subgeometry(frame: &ProjectionFrame<'_>) -> Result<LinearSetReport> {
    let field = frame.field;
    let q = field.q() as u64;
    let mut hits: BTreeMap<ProjectivePoint, u64> = BTreeMap::new();
    for p in subgeometry_points(field, frame.k()) {
        let image = project_unchecked(field, &p, &frame.axis, &frame.target)
            .map_err(|_| Error::BadFrame("axis meets the subgeometry".into()))?;
        *hits.entry(frame.target_coordinates(&image)?).or_insert(0) += 1;
    }
    let points = hits
        .into_iter()
        .map(|(p, n)| {
            // n = (q^w − 1)/(q − 1)  ⇔  n(q − 1) = q^w − 1
            log_q_plus_one(n * (q - 1), q).map(|w| (p, w)).ok_or(Error::NonIntegralWeight(n))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearSetReport::from_parts(q, frame.k(), points, None, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::make_field;
    use crate::linear_sets::build_evaluation_set;

    #[test]
    fn two_two_frame_axis_is_a_line() {
        let f = make_field(2, 1, 5, None).unwrap();
        let spec = ConstructionSpec::new(&f, 5, &[2, 2]).unwrap();
        let frame = ProjectionFrame::build(&spec).unwrap();
        assert_eq!(frame.axis().projective_dim(), Some(1));
        let a = spec.alpha();
        let (o, z) = (FieldElement::ONE, FieldElement::ZERO);
        let expected = Subspace::from_vectors(&f, 4, vec![vec![o, f.neg(a), z, z], vec![z, z, o, f.neg(a)]]).unwrap();
        assert_eq!(frame.axis(), &expected);
        let r = project_subgeometry(&frame).unwrap();
        assert_eq!(r.size(), 9);
        assert_eq!(r.spectrum(), &[6, 3, 0, 0]);
    }

    #[test]
    fn singleton_part_has_empty_axis_piece() {
        let f = make_field(2, 1, 4, None).unwrap();
        let spec = ConstructionSpec::new(&f, 4, &[1, 3]).unwrap();
        let frame = ProjectionFrame::build(&spec).unwrap();
        assert!(frame.axis_parts()[0].is_empty());
        assert_eq!(frame.axis_parts()[1].rank(), 2);
    }

    #[test]
    fn subline_is_its_own_projection() {
        let f = make_field(3, 1, 2, None).unwrap();
        let spec = ConstructionSpec::new(&f, 2, &[1, 1]).unwrap();
        let frame = ProjectionFrame::build(&spec).unwrap();
        assert!(frame.axis().is_empty());
        let r = project_subgeometry(&frame).unwrap();
        let e = build_evaluation_set(&spec).unwrap();
        assert!(r.same_points_and_weights(&e));
        assert_eq!(r.size(), 4);
    }

    #[test]
    fn small_alpha_breaks_disjointness() {
        let f = make_field(2, 1, 6, None).unwrap();
        let alpha = f.select_alpha(2).unwrap();
        let spec = ConstructionSpec::new_unchecked(&f, alpha, &[3, 1]);
        assert!(spec.validate().is_err());
        assert_eq!(ProjectionFrame::build(&spec).unwrap_err(), Error::DisjointnessFailure("canonical subgeometry"));
    }
}
