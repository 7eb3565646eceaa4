//! Number fields `K = Q[λ]/(f)` of degree at most 4, and the relative
//! quadratic extensions `K(√δ)` where constructed points live.
//!
//! Elements carry a reference to their field and cross-field arithmetic is
//! a hard error, never a coercion: the constructions juggle `Q ⊂ K ⊂ K(√δ)`
//! and silent mixing of those levels is the principal bug risk. Moving an
//! element *up* the tower is always explicit ([`QuadExtElement::from_base`]).
//!
//! `K(√δ)` is represented relative to `K` with `δ` a squarefree integer —
//! never as an absolute degree-8 field. Two collapses are recognized at
//! construction time: `δ = 1` (the extension is `K` itself) and, when
//! `K = Q(√m)`, `δ = m` (same thing, since `√δ = λ ∈ K`). In both cases the
//! radical part is folded into the base and the element is marked as lying
//! in `K`. For quartic `K` no attempt is made to decide whether `δ` is a
//! square in `K`; elements are taken at face value there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

use crate::poly::UniPoly;
use crate::rational::denominator_lcm;
use crate::squarefree::{factorize, DEFAULT_TRIAL_BOUND};
use crate::{Error, Result};

/// A number field `Q[λ]/(minpoly)`, `minpoly` monic and irreducible of
/// degree 2–4 (degree 1 is allowed through [`NumberField::rationals`] so
/// curves over `Q` fit the same interfaces).
#[derive(Debug)]
pub struct NumberField {
    minpoly: UniPoly,
    degree: usize,
    /// reduction[k] = coordinates of λ^(degree+k), k = 0..degree-1
    reduction: Vec<Vec<BigRational>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// Builds the field, rejecting non-monic and reducible polynomials.
    ///
    /// Irreducibility over `Q`: degrees 2 and 3 need only the rational-root
    /// test; degree 4 additionally rules out a factorization into two
    /// rational quadratics through the resolvent cubic. Reducible input is
    /// rejected with a witness factor in the error.
    pub fn new(minpoly: UniPoly) -> Result<Arc<Self>> {
        if !minpoly.is_monic() {
            return Err(Error::NotMonic);
        }
        let degree = minpoly.degree().unwrap_or(0);
        if !(2..=4).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        if let Some(root) = rational_roots(&minpoly).into_iter().next() {
            let witness = UniPoly::new(vec![-root, BigRational::one()]);
            return Err(Error::Reducible(witness.to_string()));
        }
        if degree == 4 {
            if let Some(factor) = quartic_quadratic_factor(&minpoly) {
                return Err(Error::Reducible(factor.to_string()));
            }
        }
        Ok(Arc::new(Self::build(minpoly, degree)))
    }

    /// The degree-1 "field" `Q` itself, with `λ = 0`. Not reachable through
    /// [`NumberField::new`], which keeps its degree 2–4 contract; this
    /// exists so elliptic curves over `Q` share the element types.
    pub fn rationals() -> Arc<Self> {
        Arc::new(Self::build(
            UniPoly::new(vec![BigRational::zero(), BigRational::one()]),
            1,
        ))
    }

    /// `Q(√m)` as `Q[t]/(t² − m)`; `m` must not be a perfect square.
    pub fn quadratic(m: &BigInt) -> Result<Arc<Self>> {
        Self::new(UniPoly::new(vec![
            BigRational::from_integer(-m.clone()),
            BigRational::zero(),
            BigRational::one(),
        ]))
    }

    fn build(minpoly: UniPoly, degree: usize) -> Self {
        // λ^degree = -(c_0 + c_1 λ + ... + c_{degree-1} λ^{degree-1})
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let base: Vec<BigRational> = (0..degree).map(|i| -minpoly.coeff(i)).collect();
        rows.push(base);
        for k in 1..degree {
            let prev = rows[k - 1].clone();
            // multiply by λ: shift up, then reduce the overflowing top term
            let mut next = vec![BigRational::zero(); degree];
            let top = prev[degree - 1].clone();
            for i in 1..degree {
                next[i] = prev[i - 1].clone();
            }
            for (i, r) in rows[0].iter().enumerate() {
                next[i] += &top * r;
            }
            rows.push(next);
        }
        NumberField {
            minpoly,
            degree,
            reduction: rows,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    /// For a field of the shape `Q[t]/(t² − m)`, the parameter `m`.
    pub fn sqrt_param(&self) -> Option<BigRational> {
        if self.degree == 2 && self.minpoly.coeff(1).is_zero() {
            Some(-self.minpoly.coeff(0))
        } else {
            None
        }
    }

    /// Reduces an arbitrary polynomial in λ to power-basis coordinates.
    pub fn reduce_poly(self: &Arc<Self>, p: &UniPoly) -> NFElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        for (i, c) in p.coeffs().iter().enumerate() {
            if i < self.degree {
                coords[i] += c;
            } else {
                let row = &self.reduction[i - self.degree];
                for (j, r) in row.iter().enumerate() {
                    coords[j] += c * r;
                }
            }
        }
        NFElement {
            field: Arc::clone(self),
            coords,
        }
    }

    pub fn zero(self: &Arc<Self>) -> NFElement {
        NFElement {
            field: Arc::clone(self),
            coords: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> NFElement {
        self.from_rat(BigRational::one())
    }

    pub fn from_rat(self: &Arc<Self>, q: BigRational) -> NFElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        coords[0] = q;
        NFElement {
            field: Arc::clone(self),
            coords,
        }
    }

    /// The generator λ (zero in the degree-1 field, where λ = 0).
    pub fn generator(self: &Arc<Self>) -> NFElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        if self.degree > 1 {
            coords[1] = BigRational::one();
        }
        NFElement {
            field: Arc::clone(self),
            coords,
        }
    }

    pub fn from_coords(self: &Arc<Self>, coords: Vec<BigRational>) -> NFElement {
        assert_eq!(coords.len(), self.degree, "coordinate vector length");
        NFElement {
            field: Arc::clone(self),
            coords,
        }
    }
}

/// All rational roots of a monic polynomial over `Q`, ordered by height
/// with positive roots first.
pub fn rational_roots(f: &UniPoly) -> Vec<BigRational> {
    assert!(f.is_monic(), "rational root scan expects a monic polynomial");
    if f.coeff(0).is_zero() {
        // strip the power of t and recurse on the cofactor
        let k = f.coeffs().iter().take_while(|c| c.is_zero()).count();
        let rest = UniPoly::new(f.coeffs()[k..].to_vec());
        let mut roots = vec![BigRational::zero()];
        if rest.degree().unwrap_or(0) > 0 {
            for r in rational_roots(&rest) {
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        sort_roots(&mut roots);
        return roots;
    }
    let n = f.degree().unwrap();
    // integerize: g(x) = D^n f(x/D) is monic with integer coefficients
    let d = denominator_lcm(f.coeffs().iter());
    let d_rat = BigRational::from_integer(d.clone());
    let mut g_coeffs: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut dpow = BigRational::one();
    for i in (0..=n).rev() {
        // coefficient of x^i in g is f_i * D^(n-i)
        let c = f.coeff(i) * &dpow;
        debug_assert!(c.is_integer());
        g_coeffs.push(c.to_integer());
        dpow *= &d_rat;
    }
    g_coeffs.reverse();
    let g = |x: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for c in g_coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let constant = g_coeffs[0].clone();
    let mut roots = Vec::new();
    for div in divisors(&constant.abs()) {
        for cand in [div.clone(), -div] {
            if g(&cand).is_zero() {
                let r = BigRational::new(cand, d.clone());
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    sort_roots(&mut roots);
    roots
}

fn sort_roots(roots: &mut [BigRational]) {
    roots.sort_by(|a, b| {
        (crate::rational::height(a), a.is_negative()).cmp(&(crate::rational::height(b), b.is_negative()))
    });
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e, _) in factorize(n, DEFAULT_TRIAL_BOUND) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// For a monic quartic with no rational roots: a monic rational quadratic
/// factor, if one exists. Works through the resolvent cubic of the
/// depressed quartic.
fn quartic_quadratic_factor(f: &UniPoly) -> Option<UniPoly> {
    let p = f.coeff(3);
    let q = f.coeff(2);
    let r = f.coeff(1);
    let s = f.coeff(0);
    let quarter = crate::rational::rat(1, 4);
    let shift = &p * &quarter; // t = y - p/4
    // depressed quartic y^4 + P y^2 + Q y + R
    let pp = &q - crate::rational::rat(3, 8) * &p * &p;
    let qq = &r - crate::rational::rat(1, 2) * &p * &q
        + crate::rational::rat(1, 8) * &p * &p * &p;
    let rr = &s - &quarter * &p * &r + crate::rational::rat(1, 16) * &p * &p * &q
        - crate::rational::rat(3, 256) * &p * &p * &p * &p;
    // resolvent cubic z^3 + 2P z^2 + (P^2 - 4R) z - Q^2
    let resolvent = UniPoly::new(vec![
        -(&qq * &qq),
        &pp * &pp - crate::rational::rat_int(4) * &rr,
        crate::rational::rat_int(2) * &pp,
        BigRational::one(),
    ]);
    for z in rational_roots(&resolvent) {
        if z.is_negative() {
            continue;
        }
        let two = crate::rational::rat_int(2);
        let (e, fq) = if z.is_zero() {
            // Q must vanish here; factorization needs P^2 - 4R to be square
            if !qq.is_zero() {
                continue;
            }
            let disc = &pp * &pp - crate::rational::rat_int(4) * &rr;
            match crate::rational::rat_sqrt_exact(&disc) {
                Some(rho) => (BigRational::zero(), (&pp - &rho) / &two),
                None => continue,
            }
        } else {
            match crate::rational::rat_sqrt_exact(&z) {
                Some(e) => {
                    let fq = (&pp + &z - &qq / &e) / &two;
                    (e, fq)
                }
                None => continue,
            }
        };
        // factor y^2 + e y + fq of the depressed quartic; undo y = t + p/4
        let y_factor = UniPoly::new(vec![fq, e, BigRational::one()]);
        let t_plus_shift = UniPoly::new(vec![shift.clone(), BigRational::one()]);
        let factor = compose(&y_factor, &t_plus_shift);
        debug_assert!(f.div_rem(&factor).1.is_zero());
        return Some(factor);
    }
    None
}

fn compose(outer: &UniPoly, inner: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in outer.coeffs().iter().rev() {
        acc = acc.mul(inner).add(&UniPoly::constant(c.clone()));
    }
    acc
}

/// An element of a number field in the power basis `1, λ, …, λ^(deg−1)`.
#[derive(Debug, Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}
impl Eq for NFElement {}

impl NFElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field.minpoly(),
            other.field.minpoly()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        NFElement {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        NFElement {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        NFElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let d = self.field.degree();
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                conv[i + j] += a * b;
            }
        }
        let mut coords: Vec<BigRational> = conv[..d].to_vec();
        for (k, c) in conv[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in self.field.reduction[k].iter().enumerate() {
                coords[j] += c * r;
            }
        }
        NFElement {
            field: Arc::clone(&self.field),
            coords,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        NFElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Checked product for public use; cross-field input is an error
    /// rather than a panic.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.add(other))
    }

    /// Multiplicative inverse through the extended Euclidean algorithm
    /// against the minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let elem = UniPoly::new(self.coords.clone());
        let (g, s, _) = elem.extended_gcd(self.field.minpoly());
        if g.degree() != Some(0) {
            // impossible for an irreducible modulus and nonzero element
            return Err(Error::NotInvertible);
        }
        Ok(self.field.reduce_poly(&s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.field.one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Splits an element of `Q(√m)` (minimal polynomial exactly `t² − m`)
    /// into its rational part and its `√m`-coefficient.
    pub fn quadratic_parts(&self) -> Result<(BigRational, BigRational)> {
        if self.field.sqrt_param().is_none() {
            return Err(Error::NotQuadratic);
        }
        Ok((self.coords[0].clone(), self.coords[1].clone()))
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", UniPoly::new(self.coords.clone()))
    }
}

/// An element `a + b·√δ` of the relative quadratic extension `K(√δ)`,
/// with `a, b ∈ K` and `δ` a squarefree integer.
///
/// Elements of `K` itself are represented with `delta = 1` and a zero
/// radical part; the constructor folds the recognizable collapses
/// (`δ = 1`, and `δ = m` over `K = Q(√m)`) into that shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtElement {
    base: NFElement,
    radical: NFElement,
    delta: BigInt,
}

impl QuadExtElement {
    pub fn new(base: NFElement, radical: NFElement, delta: BigInt) -> Self {
        assert!(!delta.is_zero(), "delta must be nonzero");
        base.assert_same_field(&radical);
        if delta.is_one() {
            // a + b·√1 = a + b
            let folded = base.add(&radical);
            let zero = folded.field().zero();
            return QuadExtElement {
                base: folded,
                radical: zero,
                delta: BigInt::one(),
            };
        }
        if let Some(m) = base.field().sqrt_param() {
            if m == BigRational::from_integer(delta.clone()) {
                // √δ = λ inside K = Q(√m)
                let lambda = base.field().generator();
                let folded = base.add(&radical.mul(&lambda));
                let zero = folded.field().zero();
                return QuadExtElement {
                    base: folded,
                    radical: zero,
                    delta: BigInt::one(),
                };
            }
        }
        QuadExtElement {
            base,
            radical,
            delta,
        }
    }

    /// Lifts an element of `K` into `K(√δ)`.
    pub fn from_base(elem: NFElement, delta: BigInt) -> Self {
        let zero = elem.field().zero();
        QuadExtElement::new(elem, zero, delta)
    }

    pub fn base(&self) -> &NFElement {
        &self.base
    }

    pub fn radical(&self) -> &NFElement {
        &self.radical
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.base.field()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.radical.is_zero()
    }

    /// True when the element lies in the base field `K`.
    pub fn in_base_field(&self) -> bool {
        self.radical.is_zero()
    }

    fn assert_compatible(&self, other: &Self) {
        self.base.assert_same_field(&other.base);
        // elements of K embed in every K(√δ); only two genuine radicals clash
        assert!(
            self.radical.is_zero() || other.radical.is_zero() || self.delta == other.delta,
            "delta mismatch: sqrt({}) vs sqrt({})",
            self.delta,
            other.delta
        );
    }

    fn common_delta(&self, other: &Self) -> BigInt {
        if self.radical.is_zero() && self.delta.is_one() {
            other.delta.clone()
        } else {
            self.delta.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        QuadExtElement::new(
            self.base.add(&other.base),
            self.radical.add(&other.radical),
            self.common_delta(other),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        QuadExtElement::new(
            self.base.sub(&other.base),
            self.radical.sub(&other.radical),
            self.common_delta(other),
        )
    }

    pub fn neg(&self) -> Self {
        QuadExtElement {
            base: self.base.neg(),
            radical: self.radical.neg(),
            delta: self.delta.clone(),
        }
    }

    /// `(a + b√δ)(c + d√δ) = (ac + bdδ) + (ad + bc)√δ`.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let delta_rat = BigRational::from_integer(self.common_delta(other));
        let ac = self.base.mul(&other.base);
        let bd = self.radical.mul(&other.radical);
        let base = ac.add(&bd.scale(&delta_rat));
        let radical = self.base.mul(&other.radical).add(&self.radical.mul(&other.base));
        QuadExtElement::new(base, radical, self.common_delta(other))
    }

    /// Checked product: mismatched `δ` or base field is an error.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.base.field() != other.base.field() {
            return Err(Error::FieldMismatch);
        }
        if !self.radical.is_zero() && !other.radical.is_zero() && self.delta != other.delta {
            return Err(Error::DeltaMismatch(self.delta.clone(), other.delta.clone()));
        }
        Ok(self.mul(other))
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// The conjugate `a − b√δ`.
    pub fn conj(&self) -> Self {
        QuadExtElement {
            base: self.base.clone(),
            radical: self.radical.neg(),
            delta: self.delta.clone(),
        }
    }

    /// `1/(a + b√δ) = (a − b√δ)/(a² − b²δ)`; the norm `a² − b²δ` lies in
    /// `K` and is nonzero whenever `δ` is not a square in `K`.
    pub fn inverse(&self) -> Result<Self> {
        let delta_rat = BigRational::from_integer(self.delta.clone());
        let norm = self
            .base
            .mul(&self.base)
            .sub(&self.radical.mul(&self.radical).scale(&delta_rat));
        let ninv = norm.inverse()?;
        Ok(QuadExtElement {
            base: self.base.mul(&ninv),
            radical: self.radical.neg().mul(&ninv),
            delta: self.delta.clone(),
        })
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        QuadExtElement {
            base: self.base.scale(c),
            radical: self.radical.scale(c),
            delta: self.delta.clone(),
        }
    }
}

impl fmt::Display for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.base, self.radical, self.delta)
        }
    }
}
