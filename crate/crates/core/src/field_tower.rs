//! Arithmetic in the tower `F_p ⊆ F_q ⊆ F_{q^h}` with `q = p^e`.
//!
//! The big field is a single extension `F_p[X]/(m(X))` of degree `n = e·h`.
//! An element is stored as the integer `Σ c_i p^i` built from its coefficient
//! vector `(c_0, …, c_{n-1})` in the power basis of the root of `m`; equality
//! is therefore coefficient-wise. Multiplication and addition go through
//! discrete-log and Zech-log tables that are built once from a primitive
//! element, so every operation on a [`Field`] is O(1).
//!
//! Subfields are never modelled separately: `F_{q^d}` is the fixed set of
//! `x ↦ x^{q^d}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported field order; tables cost three `u32` per element.
pub const MAX_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// Plain description of a field: characteristic, tower degrees and the
/// defining polynomial of `F_{q^h}` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub h: u32,
    /// Monic modulus of degree `e·h`, lowest coefficient first.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn degree(&self) -> u32 {
        self.e * self.h
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }
}

/// An element of `F_{q^h}`, encoded as `Σ c_i p^i`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw code. The caller is responsible for `code < p^n`.
    pub const fn from_code(code: u32) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Arithmetic context for `F_{q^h}`. Immutable once built.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    order: u32,
    q: u32,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    minus_one: FieldElement,
    base: Vec<FieldElement>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.spec.p)
            .field("e", &self.spec.e)
            .field("h", &self.spec.h)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

/// Builds `F_{q^h}` with `q = p^e`, choosing the modulus by a lexicographic
/// search over monic polynomials of degree `e·h`. The optional seed rotates
/// the starting point of that search.
pub fn make_field(p: u32, e: u32, h: u32, seed: Option<u64>) -> Result<Field> {
    let n = check_params(p, e, h)?;
    let modulus = find_irreducible(p, n, seed.unwrap_or(0))?;
    Field::from_spec(FieldSpec { p, e, h, modulus })
}

fn check_params(p: u32, e: u32, h: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrimeP(p));
    }
    if e == 0 || h == 0 {
        return Err(Error::InvalidField("e and h must be positive".into()));
    }
    let n = e.checked_mul(h).ok_or_else(|| Error::InvalidField("degree overflow".into()))?;
    match (p as u64).checked_pow(n) {
        Some(order) if order <= MAX_ORDER => Ok(n),
        _ => Err(Error::FieldTooLarge { p, n }),
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn find_irreducible(p: u32, n: u32, seed: u64) -> Result<Vec<u32>> {
    let count = (p as u64).pow(n);
    let start = seed % count;
    for offset in 0..count {
        let mut m = (start + offset) % count;
        let mut poly = Vec::with_capacity(n as usize + 1);
        for _ in 0..n {
            poly.push((m % p as u64) as u32);
            m /= p as u64;
        }
        poly.push(1);
        if fp_poly::is_irreducible(&poly, p) {
            return Ok(poly);
        }
    }
    Err(Error::NoIrreducibleFound)
}

impl Field {
    /// Builds the arithmetic tables for an explicit description. The modulus
    /// must be monic of degree `e·h` and irreducible over `F_p`.
    pub fn from_spec(spec: FieldSpec) -> Result<Field> {
        let n = check_params(spec.p, spec.e, spec.h)?;
        let p = spec.p;
        if spec.modulus.len() != n as usize + 1
            || spec.modulus.last() != Some(&1)
            || spec.modulus.iter().any(|&c| c >= p)
            || !fp_poly::is_irreducible(&spec.modulus, p)
        {
            return Err(Error::ReducibleModulus(n));
        }
        let order = p.pow(n);
        let q = p.pow(spec.e);
        let slow = SlowArith { p, n, modulus: &spec.modulus };

        let group = order as u64 - 1;
        let factors = prime_factors(group);
        let generator = (1..order)
            .find(|&c| factors.iter().all(|&r| slow.pow(c, group / r) != 1))
            .ok_or(Error::NoIrreducibleFound)?;

        let mut exp = vec![0u32; group as usize];
        let mut log = vec![NO_LOG; order as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        let zech = exp
            .iter()
            .map(|&v| {
                let s = slow.add(v, 1);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();

        let mut field = Field {
            order,
            q,
            generator: FieldElement(generator),
            exp,
            log,
            zech,
            minus_one: FieldElement::ONE,
            base: Vec::new(),
            spec,
        };
        field.minus_one = field.neg_slow(FieldElement::ONE);
        let step = group / (q as u64 - 1);
        let mut base: Vec<FieldElement> = core::iter::once(FieldElement::ZERO)
            .chain((0..q as u64 - 1).map(|j| FieldElement(field.exp[(j * step) as usize])))
            .collect();
        base.sort_unstable();
        field.base = base;
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn h(&self) -> u32 {
        self.spec.h
    }

    /// Order of the base field `F_q`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the whole field `F_{q^h}`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The primitive element used for the log tables (smallest code that
    /// generates the multiplicative group).
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Elements of `F_q`, sorted by code. Index 0 is zero and index 1 is one.
    pub fn base_elements(&self) -> &[FieldElement] {
        &self.base
    }

    /// Position of `x` in [`Field::base_elements`], if `x ∈ F_q`.
    pub fn base_ordinal(&self, x: FieldElement) -> Option<usize> {
        self.base.binary_search(&x).ok()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Coefficient vector of `x` over `F_p`, lowest power first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let p = self.spec.p;
        let mut c = x.0;
        (0..self.spec.degree())
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    /// Inverse of [`Field::coeffs`]. Returns `None` on a wrong length or an
    /// unreduced coefficient.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Option<FieldElement> {
        let p = self.spec.p;
        if coeffs.len() != self.spec.degree() as usize || coeffs.iter().any(|&c| c >= p) {
            return None;
        }
        Some(FieldElement(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)))
    }

    pub fn element(&self, code: u32) -> Option<FieldElement> {
        (code < self.order).then_some(FieldElement(code))
    }

    /// Image of the integer `m` under `Z → F_p ⊆ F_{q^h}`.
    pub fn from_int(&self, m: i64) -> FieldElement {
        FieldElement(m.rem_euclid(self.spec.p as i64) as u32)
    }

    #[inline]
    fn group(&self) -> u32 {
        self.order - 1
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + self.group() - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return FieldElement::ZERO;
        }
        let s = la as u64 + z as u64;
        FieldElement(self.exp[(s % self.group() as u64) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.mul(a, self.minus_one)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        FieldElement(self.exp[(s % self.group() as u64) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(FieldElement(self.exp[((self.group() - l) % self.group()) as usize]))
    }

    /// `a / b`; panics when `b` is zero.
    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero field element"))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let g = self.group() as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % g)) % g;
        FieldElement(self.exp[l as usize])
    }

    /// Discrete log to the base [`Field::generator`]; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.exp[(i % self.group() as u64) as usize])
    }

    /// `x ↦ x^{q^d}`.
    pub fn frobenius_pow(&self, a: FieldElement, d: u32) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        let g = self.group() as u64;
        let qd = pow_mod(self.q as u64, d as u64, g);
        let l = (self.log[a.0 as usize] as u64 * qd) % g;
        FieldElement(self.exp[l as usize])
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.frobenius_pow(a, 1)
    }

    /// Least `d ≥ 1` with `x^{q^d} = x`; always divides `h`.
    pub fn degree_over_base(&self, x: FieldElement) -> u32 {
        let mut y = self.frobenius(x);
        let mut d = 1;
        while y != x {
            y = self.frobenius(y);
            d += 1;
        }
        d
    }

    /// Least `d ≥ 1` with `x^{p^d} = x`.
    pub fn degree_over_prime(&self, x: FieldElement) -> u32 {
        let mut y = self.pow(x, self.spec.p as u64);
        let mut d = 1;
        while y != x {
            y = self.pow(y, self.spec.p as u64);
            d += 1;
        }
        d
    }

    /// Whether `x` lies in the subfield of order `q^d`.
    pub fn subfield_membership(&self, x: FieldElement, d: u32) -> Result<bool> {
        if d == 0 || !self.spec.h.is_multiple_of(d) {
            return Err(Error::InvalidDegree { degree: d, h: self.spec.h });
        }
        Ok(self.frobenius_pow(x, d) == x)
    }

    /// Whether `x` lies in the subfield of order `p^d` (`d | e·h`).
    pub fn prime_subfield_membership(&self, x: FieldElement, d: u32) -> Result<bool> {
        let n = self.spec.degree();
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::InvalidDegree { degree: d, h: n });
        }
        let pd = (self.spec.p as u64).pow(d);
        Ok(self.pow_big_exponent(x, pd) == x)
    }

    fn pow_big_exponent(&self, x: FieldElement, e: u64) -> FieldElement {
        if x.0 == 0 {
            return x;
        }
        let g = self.group() as u64;
        let l = (self.log[x.0 as usize] as u64 * (e % g)) % g;
        FieldElement(self.exp[l as usize])
    }

    /// First power `g^j`, `j = 1, 2, …`, of the table generator whose degree
    /// over `F_q` is exactly `s`.
    pub fn select_alpha(&self, s: u32) -> Result<FieldElement> {
        if s < 2 || !self.spec.h.is_multiple_of(s) {
            return Err(Error::InvalidDegree { degree: s, h: self.spec.h });
        }
        (1..self.group() as u64)
            .map(|j| self.exp(j))
            .find(|&x| self.degree_over_base(x) == s)
            .ok_or(Error::InvalidDegree { degree: s, h: self.spec.h })
    }

    /// Relative trace `F_{q^h} → F_q`.
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..self.spec.h {
            acc = self.add(acc, y);
            y = self.frobenius(y);
        }
        acc
    }

    pub fn is_in_base(&self, x: FieldElement) -> bool {
        self.frobenius(x) == x
    }

    fn neg_slow(&self, a: FieldElement) -> FieldElement {
        let p = self.spec.p;
        let c: Vec<u32> = self.coeffs(a).into_iter().map(|d| (p - d) % p).collect();
        self.from_coeffs(&c).unwrap_or_default()
    }

    /// Multiplication by schoolbook polynomial product and reduction modulo
    /// the defining polynomial, independent of the log tables.
    pub fn mul_reference(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let slow = SlowArith { p: self.spec.p, n: self.spec.degree(), modulus: &self.spec.modulus };
        FieldElement(slow.mul(a.0, b.0))
    }

    /// Addition by coefficient-wise sums mod p, independent of the log tables.
    pub fn add_reference(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let slow = SlowArith { p: self.spec.p, n: self.spec.degree(), modulus: &self.spec.modulus };
        FieldElement(slow.add(a.0, b.0))
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    let mut b = b % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Table-free arithmetic on packed codes, used to build the tables and as an
/// independent check of them.
struct SlowArith<'a> {
    p: u32,
    n: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn unpack(&self, mut c: u32) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.unpack(a), self.unpack(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let n = self.n as usize;
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut prod = vec![0u64; 2 * n];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for d in (n..2 * n).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus[..n].iter().enumerate() {
                let t = c * m as u64 % p;
                prod[d - n + i] = (prod[d - n + i] + p - t) % p;
            }
        }
        let r: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.pack(&r)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
}

/// Dense polynomials over `F_p` with `u32` coefficients, just enough for
/// Rabin's irreducibility test.
pub(crate) mod fp_poly {
    use alloc::vec;
    use alloc::vec::Vec;

    fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let d = r.len() - 1;
            let c = r[d] as u64 * lead_inv % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let t = c * mi as u64 % p as u64;
                let idx = d - dm + i;
                r[idx] = ((r[idx] as u64 + p as u64 - t) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, m, p)
    }

    fn pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut r = rem(&[1], m, p);
        let mut b = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out: Vec<u32> = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Rabin's test: `f | X^{p^n} − X` and `gcd(X^{p^{n/r}} − X, f) = 1`
    /// for every prime `r | n`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let mut f = f.to_vec();
        trim(&mut f);
        if f.len() < 2 {
            return false;
        }
        let n = (f.len() - 1) as u64;
        if n == 1 {
            return true;
        }
        let x = [0u32, 1];
        // x_pows[i] = X^{p^i} mod f
        let mut x_pows = vec![rem(&x, &f, p)];
        for i in 0..n as usize {
            let next = pow_mod(&x_pows[i], p as u64, &f, p);
            x_pows.push(next);
        }
        if !sub(&x_pows[n as usize], &rem(&x, &f, p), p).is_empty() {
            return false;
        }
        super::prime_factors(n).into_iter().all(|r| {
            let d = sub(&x_pows[(n / r) as usize], &x, p);
            let g = gcd(&f, &d, p);
            g.len() == 1
        })
    }
}
