//! Dense univariate polynomials over `F_q`, monic gcd, reduced forms of
//! polynomial tuples and the counts of reduced tuples.
//!
//! A tuple `(f_1, …, f_{l+1})` with `deg f_i ≤ t_i − 1` is *reduced* when its
//! first nonzero entry is monic and the entries are coprime. Evaluated at an
//! `alpha` of large enough degree, reduced tuples are in bijection with the
//! points of the corresponding linear set, which is why their number is the
//! size of that set.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field_tower::{Field, FieldElement};

/// Degree of a polynomial; the zero polynomial sits below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// Coefficients over `F_q`, lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![FieldElement::ONE] }
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn monomial(c: FieldElement, d: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; d + 1];
        coeffs[d] = c;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElement::ONE)
    }

    /// `deg f ≤ t − 1`, the bound attached to a tuple slot.
    pub fn fits_bound(&self, t: usize) -> bool {
        self.coeffs.len() <= t
    }
}

/// Polynomial arithmetic over the base field `F_q` of a [`Field`].
#[derive(Debug, Clone, Copy)]
pub struct PolyRing<'a> {
    field: &'a Field,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a Field) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `X`.
    pub fn x(&self) -> Polynomial {
        Polynomial::monomial(FieldElement::ONE, 1)
    }

    /// Builds a polynomial from base-field ordinals (see
    /// [`Field::base_elements`]).
    pub fn from_ordinals(&self, digits: &[u32]) -> Polynomial {
        let base = self.field.base_elements();
        Polynomial::new(digits.iter().map(|&d| base[d as usize]).collect())
    }

    /// Polynomial whose coefficient ordinals are the base-`q` digits of
    /// `index`, least significant digit = constant term.
    pub fn from_index(&self, mut index: u64) -> Polynomial {
        let q = self.q() as u64;
        let base = self.field.base_elements();
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push(base[(index % q) as usize]);
            index /= q;
        }
        Polynomial::new(coeffs)
    }

    /// Inverse of [`PolyRing::from_index`]; `None` if a coefficient is not in
    /// `F_q`.
    pub fn index_of(&self, f: &Polynomial) -> Option<u64> {
        let q = self.q() as u64;
        f.coeffs.iter().rev().try_fold(0u64, |acc, &c| self.field.base_ordinal(c).map(|o| acc * q + o as u64))
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let n = f.coeffs.len().max(g.coeffs.len());
        Polynomial::new((0..n).map(|i| self.field.add(f.coeff(i), g.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let n = f.coeffs.len().max(g.coeffs.len());
        Polynomial::new((0..n).map(|i| self.field.sub(f.coeff(i), g.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Polynomial, c: FieldElement) -> Polynomial {
        Polynomial::new(f.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(a, b));
            }
        }
        Polynomial::new(out)
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, f: &Polynomial, g: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let lead = g.leading()?;
        let lead_inv = self.field.inv(lead)?;
        let dg = g.coeffs.len() - 1;
        let mut rem = f.coeffs.clone();
        if rem.len() <= dg {
            return Some((Polynomial::zero(), f.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dg];
        for d in (dg..rem.len()).rev() {
            let c = self.field.mul(rem[d], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[d - dg] = c;
            for (i, &b) in g.coeffs.iter().enumerate() {
                let idx = d - dg + i;
                rem[idx] = self.field.sub(rem[idx], self.field.mul(c, b));
            }
        }
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Scales a nonzero polynomial to be monic; zero stays zero.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading() {
            None => Polynomial::zero(),
            Some(l) => self.scale(f, self.field.inv(l).unwrap_or(FieldElement::ONE)),
        }
    }

    pub fn gcd_monic(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let (_, r) = self.div_rem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// Horner evaluation at a point of the big field.
    pub fn eval(&self, f: &Polynomial, x: FieldElement) -> FieldElement {
        f.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Monic gcd of every entry; `None` if all entries are zero.
    pub fn gcd_all(&self, fs: &[Polynomial]) -> Option<Polynomial> {
        fs.iter()
            .filter(|f| !f.is_zero())
            .try_fold(Polynomial::zero(), |acc, f| self.gcd_monic(&acc, f).ok())
            .filter(|g| !g.is_zero())
    }

    pub fn is_reduced(&self, t: &PolyTuple) -> bool {
        match t.entries.iter().find(|f| !f.is_zero()) {
            None => false,
            Some(first) => first.is_monic() && self.gcd_all(&t.entries) == Some(Polynomial::one()),
        }
    }

    /// Divides out the common monic gcd and scales so the first nonzero entry
    /// is monic.
    pub fn reduce_tuple(&self, t: &PolyTuple) -> Result<PolyTuple> {
        let g = self.gcd_all(&t.entries).ok_or(Error::AllZero)?;
        let divided: Vec<Polynomial> =
            t.entries.iter().map(|f| self.div_rem(f, &g).expect("gcd is nonzero").0).collect();
        let lead = divided.iter().find_map(|f| f.leading()).ok_or(Error::AllZero)?;
        let inv = self.field.inv(lead).expect("leading coefficient is nonzero");
        Ok(PolyTuple { entries: divided.iter().map(|f| self.scale(f, inv)).collect(), bounds: t.bounds.clone() })
    }

    /// Every reduced tuple with `deg f_i ≤ t_i − 1`, in lexicographic order of
    /// the concatenated coefficient vectors, most significant coefficient last.
    pub fn enumerate_reduced(&self, bounds: &[usize]) -> ReducedTuples<'a> {
        ReducedTuples::new(*self, bounds)
    }
}

/// A tuple `(f_1, …, f_{l+1})` with per-slot degree bounds `deg f_i ≤ t_i − 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyTuple {
    entries: Vec<Polynomial>,
    bounds: Vec<usize>,
}

impl PolyTuple {
    pub fn new(entries: Vec<Polynomial>, bounds: Vec<usize>) -> Result<Self> {
        if entries.len() != bounds.len() {
            return Err(Error::BadShape("entries and bounds differ in length".into()));
        }
        if let Some(index) = entries.iter().zip(&bounds).position(|(f, &t)| !f.fits_bound(t)) {
            return Err(Error::BoundViolated { index, bound: bounds[index] });
        }
        if entries.iter().all(Polynomial::is_zero) {
            return Err(Error::AllZero);
        }
        Ok(PolyTuple { entries, bounds })
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }
}

/// Pairwise monic-gcd table over all polynomials with index `< size`.
struct GcdTable {
    size: usize,
    table: Vec<u32>,
}

/// Tables are used while the polynomial universe stays this small.
const GCD_TABLE_LIMIT: u64 = 256;

impl GcdTable {
    fn build(ring: &PolyRing<'_>, size: usize) -> Self {
        let polys: Vec<Polynomial> = (0..size as u64).map(|i| ring.from_index(i)).collect();
        let mut table = vec![0u32; size * size];
        for a in 0..size {
            for b in a..size {
                let g = match ring.gcd_monic(&polys[a], &polys[b]) {
                    Ok(g) => ring.index_of(&g).expect("gcd has base coefficients") as u32,
                    Err(_) => 0,
                };
                table[a * size + b] = g;
                table[b * size + a] = g;
            }
        }
        GcdTable { size, table }
    }

    #[inline]
    fn gcd(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.size + b as usize]
    }
}

/// Odometer over coefficient indices yielding reduced tuples.
///
/// [`Iterator::count`] walks the same odometer without materializing
/// polynomials.
pub struct ReducedTuples<'a> {
    ring: PolyRing<'a>,
    bounds: Vec<usize>,
    limits: Vec<u64>,
    digits: Vec<u64>,
    done: bool,
    table: Option<GcdTable>,
}

impl<'a> ReducedTuples<'a> {
    fn new(ring: PolyRing<'a>, bounds: &[usize]) -> Self {
        let q = ring.q() as u64;
        let limits: Vec<u64> = bounds.iter().map(|&t| q.pow(t as u32)).collect();
        let universe = limits.iter().copied().max().unwrap_or(1);
        let table = (universe <= GCD_TABLE_LIMIT).then(|| GcdTable::build(&ring, universe as usize));
        ReducedTuples {
            ring,
            bounds: bounds.to_vec(),
            done: bounds.is_empty() || bounds.contains(&0),
            digits: vec![0; bounds.len()],
            limits,
            table,
        }
    }

    /// Leading base-`q` digit of a nonzero index equals ordinal 1, i.e. the
    /// polynomial is monic.
    fn index_is_monic(&self, mut idx: u64) -> bool {
        let q = self.ring.q() as u64;
        while idx >= q {
            idx /= q;
        }
        idx == 1
    }

    fn current_is_reduced(&self) -> bool {
        let Some(&first) = self.digits.iter().find(|&&d| d != 0) else {
            return false;
        };
        if !self.index_is_monic(first) {
            return false;
        }
        match &self.table {
            Some(table) => {
                let mut g = 0u32;
                for &d in &self.digits {
                    g = table.gcd(g, d as u32);
                    if g == 1 {
                        return true;
                    }
                }
                g == 1
            }
            None => {
                let polys: Vec<Polynomial> = self.digits.iter().map(|&d| self.ring.from_index(d)).collect();
                self.ring.gcd_all(&polys) == Some(Polynomial::one())
            }
        }
    }

    fn advance(&mut self) {
        for (d, &lim) in self.digits.iter_mut().zip(&self.limits) {
            *d += 1;
            if *d < lim {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }

    fn materialize(&self) -> PolyTuple {
        PolyTuple {
            entries: self.digits.iter().map(|&d| self.ring.from_index(d)).collect(),
            bounds: self.bounds.clone(),
        }
    }
}

impl Iterator for ReducedTuples<'_> {
    type Item = PolyTuple;

    fn next(&mut self) -> Option<PolyTuple> {
        while !self.done {
            let hit = self.current_is_reduced();
            let out = hit.then(|| self.materialize());
            self.advance();
            if out.is_some() {
                return out;
            }
        }
        None
    }

    fn count(mut self) -> usize {
        let mut n = 0;
        while !self.done {
            if self.current_is_reduced() {
                n += 1;
            }
            self.advance();
        }
        n
    }
}

/// `q^{k−1} + q^{k−2} + ⋯ + q^{k−l} + 1` with `k = Σ t_i`, `l + 1` slots.
pub fn count_reduced_closed_form(bounds: &[usize], q: u64) -> BigUint {
    let mut sorted = bounds.to_vec();
    sorted.sort_unstable();
    let k: usize = sorted.iter().sum();
    let l = sorted.len().saturating_sub(1);
    let q = BigUint::from(q);
    (1..=l).fold(BigUint::one(), |acc, j| acc + q.pow((k - j) as u32))
}

/// Number of reduced tuples whose first entry is monic of degree exactly `n`
/// and whose remaining entries have degree at most `m_j`.
pub fn count_r_stratum(n: usize, bound_vector: &[usize], q: u64) -> BigUint {
    let l = bound_vector.len() as u32;
    let m: u32 = bound_vector.iter().map(|&x| x as u32).sum();
    let q = BigUint::from(q);
    if n == 0 {
        return q.pow(m + l);
    }
    let n = n as u32;
    if l == 0 {
        // a lone monic entry of positive degree is never coprime to itself
        return BigUint::zero();
    }
    q.pow(m + l + n) - q.pow(m + n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::make_field;

    fn gf(p: u32) -> Field {
        make_field(p, 1, 1, None).unwrap()
    }

    fn poly(ring: &PolyRing<'_>, c: &[u32]) -> Polynomial {
        ring.from_ordinals(c)
    }

    #[test]
    fn degree_marker_orders_below_everything() {
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Polynomial::zero().degree(), Degree::NegInfinity);
        assert_eq!(Polynomial::one().degree(), Degree::Finite(0));
    }

    #[test]
    fn gcd_examples_over_f2() {
        let f = gf(2);
        let r = PolyRing::new(&f);
        let x1 = poly(&r, &[1, 1]);
        assert_eq!(r.gcd_monic(&x1, &x1).unwrap(), x1);
        let x2x = poly(&r, &[0, 1, 1]);
        assert_eq!(r.gcd_monic(&x2x, &r.x()).unwrap(), r.x());
        assert_eq!(r.gcd_monic(&x2x, &Polynomial::one()).unwrap(), Polynomial::one());
        assert_eq!(r.gcd_monic(&x2x, &Polynomial::zero()).unwrap(), x2x);
        assert_eq!(r.gcd_monic(&Polynomial::zero(), &Polynomial::zero()), Err(Error::BothZero));
    }

    #[test]
    fn gcd_of_nonmonic_input_is_monic() {
        let f = gf(3);
        let r = PolyRing::new(&f);
        // 2X + 2 and 2X^2 + 2X share X + 1
        let a = poly(&r, &[2, 2]);
        let b = poly(&r, &[0, 2, 2]);
        assert_eq!(r.gcd_monic(&a, &b).unwrap(), poly(&r, &[1, 1]));
    }

    #[test]
    fn reduce_tuple_examples() {
        let f = gf(2);
        let r = PolyRing::new(&f);
        let t = PolyTuple::new(vec![poly(&r, &[0, 1, 1]), r.x()], vec![3, 2]).unwrap();
        let red = r.reduce_tuple(&t).unwrap();
        assert_eq!(red.entries(), &[poly(&r, &[1, 1]), Polynomial::one()]);
        assert_eq!(r.reduce_tuple(&red).unwrap(), red);

        let f3 = gf(3);
        let r3 = PolyRing::new(&f3);
        let t = PolyTuple::new(vec![Polynomial::zero(), poly(&r3, &[2])], vec![2, 2]).unwrap();
        let red = r3.reduce_tuple(&t).unwrap();
        assert_eq!(red.entries(), &[Polynomial::zero(), Polynomial::one()]);
    }

    #[test]
    fn tuple_construction_errors() {
        let f = gf(2);
        let r = PolyRing::new(&f);
        assert_eq!(PolyTuple::new(vec![Polynomial::zero(), Polynomial::zero()], vec![1, 1]), Err(Error::AllZero));
        assert_eq!(
            PolyTuple::new(vec![r.x(), Polynomial::one()], vec![1, 1]),
            Err(Error::BoundViolated { index: 0, bound: 1 })
        );
    }

    #[test]
    fn constants_pair_enumeration() {
        let f = gf(2);
        let r = PolyRing::new(&f);
        let all: Vec<PolyTuple> = r.enumerate_reduced(&[1, 1]).collect();
        let got: Vec<Vec<Polynomial>> = all.iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![Polynomial::one(), Polynomial::zero()],
                vec![Polynomial::zero(), Polynomial::one()],
                vec![Polynomial::one(), Polynomial::one()],
            ]
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_reduced_closed_form(&[1, 1], 2), BigUint::from(3u32));
        assert_eq!(count_reduced_closed_form(&[2, 2], 3), BigUint::from(28u32));
        assert_eq!(count_reduced_closed_form(&[4, 2, 3], 2), BigUint::from(385u32));
        assert_eq!(count_reduced_closed_form(&[5], 2), BigUint::from(1u32));
    }

    #[test]
    fn stratum_examples() {
        assert_eq!(count_r_stratum(0, &[1], 2), BigUint::from(4u32));
        assert_eq!(count_r_stratum(1, &[1], 2), BigUint::from(4u32));
        assert_eq!(count_r_stratum(2, &[1, 1], 2), BigUint::from(48u32));
    }

    #[test]
    fn table_and_direct_gcd_paths_agree() {
        let f = gf(2);
        let r = PolyRing::new(&f);
        // universe 2^9 > 256 forces the direct path
        let direct = r.enumerate_reduced(&[9, 1]).count();
        assert_eq!(BigUint::from(direct), count_reduced_closed_form(&[9, 1], 2));
        let tabled: Vec<PolyTuple> = r.enumerate_reduced(&[3, 4]).collect();
        assert!(tabled.iter().all(|t| r.is_reduced(t)));
        assert_eq!(BigUint::from(tabled.len()), count_reduced_closed_form(&[3, 4], 2));
    }

    #[test]
    fn evaluation_uses_big_field() {
        let f = make_field(2, 1, 4, None).unwrap();
        let r = PolyRing::new(&f);
        let g = f.generator();
        // X^2 + X + 1 at g equals g^2 + g + 1
        let v = r.eval(&poly(&r, &[1, 1, 1]), g);
        assert_eq!(v, f.add(f.add(f.mul(g, g), g), FieldElement::ONE));
    }
}
