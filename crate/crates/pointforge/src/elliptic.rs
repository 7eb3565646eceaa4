//! Elliptic curves over a number field `K` and their group law, evaluated
//! exactly in the relative quadratic extensions `K(√δ)`.
//!
//! Two models appear in the constructions: short Weierstrass
//! `y² = x³ + αx + β` and Legendre `y² = x(x−1)(x−λ)`. Both are handled
//! through the common shape `y² = x³ + a₂x² + a₄x + a₆`, to which the usual
//! chord–tangent formulas apply unchanged.
//!
//! Torsion is *probed*, never decided: [`EllipticCurve::torsion_probe`]
//! reports either the exact order of a point when it is at most the bound,
//! or the fact that no multiple up to the bound vanishes. Certificates
//! record the bound, and nothing in this crate ever claims "non-torsion"
//! outright.

use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use std::sync::Arc;

use crate::number_field::{NFElement, NumberField, QuadExtElement};
use crate::rational::{rat, rat_int};
use crate::{Error, Result};

/// Torsion orders of elliptic curves over quadratic fields do not exceed
/// 18; probing to 24 leaves margin.
pub const DEFAULT_TORSION_BOUND: u32 = 24;

/// The curve model as described by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveModel {
    /// `y² = x³ + a·x + b`
    ShortWeierstrass { a: NFElement, b: NFElement },
    /// `y² = x(x−1)(x−λ)`
    Legendre { lambda: NFElement },
}

/// An elliptic curve over a number field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    model: CurveModel,
    field: Arc<NumberField>,
    // unified coefficients of y² = x³ + a2 x² + a4 x + a6
    a2: NFElement,
    a4: NFElement,
    a6: NFElement,
}

/// A point on a curve, with coordinates in `K(√δ)`. Points of `K` itself
/// are carried with `δ = 1` and zero radical parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: QuadExtElement, y: QuadExtElement },
}

/// Outcome of a bounded torsion probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionVerdict {
    /// The minimal `n ≤ bound` with `n·P = O`.
    TorsionOrder(u32),
    /// No multiple `n·P` with `n ≤ bound` vanishes.
    NoTorsionUpTo(u32),
}

impl EllipticCurve {
    pub fn short_weierstrass(a: NFElement, b: NFElement) -> Result<Self> {
        let field = Arc::clone(a.field());
        let curve = EllipticCurve {
            a2: field.zero(),
            a4: a.clone(),
            a6: b.clone(),
            model: CurveModel::ShortWeierstrass { a, b },
            field,
        };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn legendre(lambda: NFElement) -> Result<Self> {
        let field = Arc::clone(lambda.field());
        if lambda.is_zero() || lambda.is_one() {
            return Err(Error::SingularCurve);
        }
        let a2 = field.one().add(&lambda).neg();
        let curve = EllipticCurve {
            a2,
            a4: lambda.clone(),
            a6: field.zero(),
            model: CurveModel::Legendre { lambda },
            field,
        };
        debug_assert!(!curve.discriminant().is_zero());
        Ok(curve)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn model(&self) -> &CurveModel {
        &self.model
    }

    /// The discriminant of `y² = x³ + a₂x² + a₄x + a₆`.
    pub fn discriminant(&self) -> NFElement {
        let b2 = self.a2.scale(&rat_int(4));
        let b4 = self.a4.scale(&rat_int(2));
        let b6 = self.a6.scale(&rat_int(4));
        let b8 = self
            .a2
            .mul(&self.a6)
            .scale(&rat_int(4))
            .sub(&self.a4.mul(&self.a4));
        b2.mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&b4.mul(&b4).mul(&b4).scale(&rat_int(8)))
            .sub(&b6.mul(&b6).scale(&rat_int(27)))
            .add(&b2.mul(&b4).mul(&b6).scale(&rat_int(9)))
    }

    /// `j = c₄³ / Δ`.
    pub fn j_invariant(&self) -> Result<NFElement> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        let b2 = self.a2.scale(&rat_int(4));
        let b4 = self.a4.scale(&rat_int(2));
        let c4 = b2.mul(&b2).sub(&b4.scale(&rat_int(24)));
        Ok(c4.mul(&c4).mul(&c4).mul(&disc.inverse()?))
    }

    /// Depression `x = X − a₂/3` to `y² = X³ + αX + β`; returns
    /// `(α, β, shift)` where a point `(x, y)` here corresponds to
    /// `(x + shift, y)` on the short Weierstrass model.
    pub fn to_short_weierstrass(&self) -> (NFElement, NFElement, NFElement) {
        let third = rat(1, 3);
        let s = self.a2.scale(&third);
        let alpha = self.a4.sub(&self.a2.mul(&self.a2).scale(&third));
        let beta = self
            .a6
            .sub(&self.a2.mul(&self.a4).scale(&third))
            .add(&self.a2.mul(&self.a2).mul(&self.a2).scale(&rat(2, 27)));
        (alpha, beta, s)
    }

    fn lift(&self, e: &NFElement, delta: &BigInt) -> QuadExtElement {
        QuadExtElement::from_base(e.clone(), delta.clone())
    }

    fn check_point_fields(&self, p: &CurvePoint) -> Result<()> {
        if let CurvePoint::Affine { x, y } = p {
            if x.field() != &self.field || y.field() != &self.field {
                return Err(Error::FieldMismatch);
            }
            if !x.in_base_field() && !y.in_base_field() && x.delta() != y.delta() {
                return Err(Error::DeltaMismatch(x.delta().clone(), y.delta().clone()));
            }
        }
        Ok(())
    }

    fn point_delta(&self, p: &CurvePoint) -> BigInt {
        match p {
            CurvePoint::Infinity => BigInt::one(),
            CurvePoint::Affine { x, y } => {
                if !y.in_base_field() {
                    y.delta().clone()
                } else if !x.in_base_field() {
                    x.delta().clone()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// The right-hand side `x³ + a₂x² + a₄x + a₆` evaluated in `K(√δ)`.
    fn rhs(&self, x: &QuadExtElement, delta: &BigInt) -> QuadExtElement {
        let a2 = self.lift(&self.a2, delta);
        let a4 = self.lift(&self.a4, delta);
        let a6 = self.lift(&self.a6, delta);
        x.add(&a2).mul(x).add(&a4).mul(x).add(&a6)
    }

    /// Exact check of the curve equation.
    pub fn contains(&self, p: &CurvePoint) -> Result<bool> {
        self.check_point_fields(p)?;
        match p {
            CurvePoint::Infinity => Ok(true),
            CurvePoint::Affine { x, y } => {
                let delta = self.point_delta(p);
                Ok(y.mul(y) == self.rhs(x, &delta))
            }
        }
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: y.neg(),
            },
        }
    }

    /// Chord–tangent addition. Off-curve input is an error.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p)? {
            return Err(Error::OffCurve);
        }
        if !self.contains(q)? {
            return Err(Error::OffCurve);
        }
        self.add_inner(p, q)
    }

    // the group law without the on-curve re-checks; every caller has
    // already established its inputs lie on the curve
    fn add_inner(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        match (p, q) {
            (CurvePoint::Infinity, _) => Ok(q.clone()),
            (_, CurvePoint::Infinity) => Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                let delta = {
                    let d1 = self.point_delta(p);
                    let d2 = self.point_delta(q);
                    if d1.is_one() {
                        d2
                    } else if d2.is_one() || d1 == d2 {
                        d1
                    } else {
                        return Err(Error::DeltaMismatch(d1, d2));
                    }
                };
                let a2 = self.lift(&self.a2, &delta);
                let slope = if x1 == x2 {
                    if *y1 == y2.neg() {
                        return Ok(CurvePoint::Infinity);
                    }
                    // tangent: (3x² + 2a₂x + a₄) / (2y)
                    let a4 = self.lift(&self.a4, &delta);
                    let num = x1
                        .mul(x1)
                        .scale_rat(&rat_int(3))
                        .add(&a2.mul(x1).scale_rat(&rat_int(2)))
                        .add(&a4);
                    num.mul(&y1.scale_rat(&rat_int(2)).inverse()?)
                } else {
                    y2.sub(y1).mul(&x2.sub(x1).inverse()?)
                };
                let x3 = slope.mul(&slope).sub(&a2).sub(x1).sub(x2);
                let y3 = y1.add(&slope.mul(&x3.sub(x1))).neg();
                Ok(CurvePoint::Affine { x: x3, y: y3 })
            }
        }
    }

    /// `n·P` by double-and-add; negative `n` negates first.
    pub fn scalar_mul(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p)? {
            return Err(Error::OffCurve);
        }
        self.scalar_mul_inner(n, p)
    }

    fn scalar_mul_inner(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint> {
        let base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut step = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_inner(&acc, &step)?;
            }
            k >>= 1;
            if k > 0 {
                step = self.add_inner(&step, &step)?;
            }
        }
        Ok(acc)
    }

    /// Probes torsion honestly: `TorsionOrder(n)` for the first `n ≤ bound`
    /// with `n·P = O`, otherwise `NoTorsionUpTo(bound)`. Never claims more.
    ///
    /// The fast path reduces the point modulo a prime of good reduction: a
    /// multiple that stays affine mod `p` is nonzero in characteristic 0 as
    /// well, so `NoTorsionUpTo` needs no exact arithmetic at all, while any
    /// `n` with `n·P̄ = Ō` is confirmed (or refuted) exactly before being
    /// reported. If no prime in the fixed list is usable, the probe falls
    /// back to exact incremental addition.
    pub fn torsion_probe(&self, p: &CurvePoint, bound: u32) -> Result<TorsionVerdict> {
        assert!(bound >= 1, "torsion bound must be positive");
        if !self.contains(p)? {
            return Err(Error::OffCurve);
        }
        if p.is_infinity() {
            return Ok(TorsionVerdict::TorsionOrder(1));
        }
        for &prime in modular::PROBE_PRIMES {
            match modular::multiples_hitting_infinity(self, p, bound, prime) {
                Err(modular::BadPrime) => continue,
                Ok(candidates) => {
                    for n in candidates {
                        if self.scalar_mul_inner(i64::from(n), p)? == CurvePoint::Infinity {
                            return Ok(TorsionVerdict::TorsionOrder(n));
                        }
                    }
                    return Ok(TorsionVerdict::NoTorsionUpTo(bound));
                }
            }
        }
        // no usable prime: exact incremental probing
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc == CurvePoint::Infinity {
                return Ok(TorsionVerdict::TorsionOrder(n));
            }
            if n < bound {
                acc = self.add_inner(&acc, p)?;
            }
        }
        Ok(TorsionVerdict::NoTorsionUpTo(bound))
    }
}

/// Arithmetic of the curve over the finite ring
/// `A = F_p[t]/(f̄) [x]/(x² − δ)`, used only to screen torsion candidates.
///
/// The prime is rejected (`BadPrime`) whenever anything fails to be a unit
/// that the computation needs — bad reduction, non-separable `f̄ mod p`,
/// `p | δ`, a denominator divisible by `p`, or a group-law branch that is
/// not uniform across the factor fields of `A`. Rejection is always safe:
/// the caller just tries the next prime.
mod modular {
    use super::*;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::Zero;

    pub(super) const PROBE_PRIMES: &[u64] = &[
        10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093, 10099, 10103,
        10111, 10133, 10139, 10141, 10151, 10159, 10163, 10169, 10177, 10181, 10193, 10211,
    ];

    pub(super) struct BadPrime;
    type ModResult<T> = std::result::Result<T, BadPrime>;

    /// coefficients mod p of an element of `F_p[t]/(f̄)`, ascending, fixed
    /// length = degree of the field
    type Nf = Vec<u64>;

    #[derive(Clone, PartialEq, Eq)]
    struct Elem {
        base: Nf,
        rad: Nf,
    }

    #[derive(Clone, PartialEq, Eq)]
    enum MPoint {
        Inf,
        Affine(Elem, Elem),
    }

    pub(super) struct Ring {
        p: u64,
        deg: usize,
        /// monic minimal polynomial mod p, ascending, length deg + 1
        minpoly: Vec<u64>,
        delta: u64,
    }

    fn inv_mod(a: u64, p: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        if r != 1 {
            return None;
        }
        Some(t.rem_euclid(p as i128) as u64)
    }

    impl Ring {
        pub(super) fn new(curve: &EllipticCurve, delta: &BigInt, p: u64) -> ModResult<Self> {
            let field = curve.field();
            let deg = field.degree();
            let pb = BigInt::from(p);
            let to_fp = |q: &BigRational| -> ModResult<u64> {
                let den = q.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(BadPrime);
                }
                let num = q.numer().mod_floor(&pb);
                let num = num.to_u64_digits().1.first().copied().unwrap_or(0);
                let den = den.to_u64_digits().1.first().copied().unwrap_or(0);
                Ok(mulmod(num, inv_mod(den, p).ok_or(BadPrime)?, p))
            };
            let mut minpoly = Vec::with_capacity(deg + 1);
            for i in 0..=deg {
                minpoly.push(to_fp(&field.minpoly().coeff(i))?);
            }
            let delta_p = delta.mod_floor(&pb);
            let delta_p = delta_p.to_u64_digits().1.first().copied().unwrap_or(0);
            if delta_p == 0 {
                return Err(BadPrime);
            }
            let ring = Ring {
                p,
                deg,
                minpoly,
                delta: delta_p,
            };
            // f̄ must stay separable so that A is a product of fields
            if deg > 1 && !ring.minpoly_separable() {
                return Err(BadPrime);
            }
            Ok(ring)
        }

        fn minpoly_separable(&self) -> bool {
            let deriv: Vec<u64> = self
                .minpoly
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(i as u64 % self.p, c, self.p))
                .collect();
            self.poly_gcd_is_constant(&self.minpoly, &deriv)
        }

        fn poly_gcd_is_constant(&self, a: &[u64], b: &[u64]) -> bool {
            let mut a = trim(a.to_vec());
            let mut b = trim(b.to_vec());
            while !b.is_empty() {
                let r = self.poly_rem(&a, &b);
                a = b;
                b = r;
            }
            a.len() == 1
        }

        fn poly_rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
            let mut rem = a.to_vec();
            let db = b.len() - 1;
            let lead_inv = inv_mod(b[db], self.p).expect("trimmed leading coefficient");
            while rem.len() > db {
                let k = rem.len() - 1 - db;
                let factor = mulmod(*rem.last().unwrap(), lead_inv, self.p);
                if factor != 0 {
                    for (i, &bc) in b.iter().enumerate() {
                        let sub = mulmod(factor, bc, self.p);
                        rem[k + i] = (rem[k + i] + self.p - sub) % self.p;
                    }
                }
                rem.pop();
                rem = trim(rem);
                if rem.len() <= db {
                    break;
                }
            }
            trim(rem)
        }

        pub(super) fn reduce_rat(&self, q: &BigRational) -> ModResult<u64> {
            let pb = BigInt::from(self.p);
            let den = q.denom().mod_floor(&pb);
            if den.is_zero() {
                return Err(BadPrime);
            }
            let num = q.numer().mod_floor(&pb);
            let num = num.to_u64_digits().1.first().copied().unwrap_or(0);
            let den = den.to_u64_digits().1.first().copied().unwrap_or(0);
            Ok(mulmod(num, inv_mod(den, self.p).ok_or(BadPrime)?, self.p))
        }

        fn reduce_nf(&self, e: &NFElement) -> ModResult<Nf> {
            e.coords().iter().map(|c| self.reduce_rat(c)).collect()
        }

        fn reduce_quadext(&self, e: &QuadExtElement) -> ModResult<Elem> {
            Ok(Elem {
                base: self.reduce_nf(e.base())?,
                rad: self.reduce_nf(e.radical())?,
            })
        }

        fn nf_zero(&self) -> Nf {
            vec![0; self.deg]
        }

        fn nf_is_zero(&self, a: &Nf) -> bool {
            a.iter().all(|&c| c == 0)
        }

        fn nf_add(&self, a: &Nf, b: &Nf) -> Nf {
            a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
        }

        fn nf_sub(&self, a: &Nf, b: &Nf) -> Nf {
            a.iter()
                .zip(b)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect()
        }

        fn nf_scale(&self, a: &Nf, c: u64) -> Nf {
            a.iter().map(|&x| mulmod(x, c, self.p)).collect()
        }

        fn nf_mul(&self, a: &Nf, b: &Nf) -> Nf {
            let mut conv = vec![0u64; 2 * self.deg - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    conv[i + j] = (conv[i + j] + mulmod(x, y, self.p)) % self.p;
                }
            }
            // reduce t^k for k >= deg against the monic minpoly
            for k in (self.deg..conv.len()).rev() {
                let c = conv[k];
                if c == 0 {
                    continue;
                }
                conv[k] = 0;
                for i in 0..self.deg {
                    let sub = mulmod(c, self.minpoly[i], self.p);
                    conv[k - self.deg + i] = (conv[k - self.deg + i] + self.p - sub) % self.p;
                }
            }
            conv.truncate(self.deg);
            conv
        }

        /// inverse in `F_p[t]/(f̄)`; a zero divisor rejects the prime
        fn nf_inv(&self, a: &Nf) -> ModResult<Nf> {
            if self.nf_is_zero(a) {
                return Err(BadPrime);
            }
            // extended Euclid against the minimal polynomial
            let mut r0 = self.minpoly.clone();
            let mut r1 = trim(a.clone());
            let mut s0: Vec<u64> = vec![];
            let mut s1: Vec<u64> = vec![1];
            while !r1.is_empty() {
                let (q, r) = self.poly_div_rem(&r0, &r1);
                let qs1 = self.poly_mul(&q, &s1);
                let s = self.poly_sub(&s0, &qs1);
                r0 = r1;
                r1 = r;
                s0 = s1;
                s1 = s;
            }
            if r0.len() != 1 {
                return Err(BadPrime); // gcd not constant: zero divisor
            }
            let scale = inv_mod(r0[0], self.p).ok_or(BadPrime)?;
            let mut out = self.poly_scale(&s0, scale);
            out.resize(self.deg, 0);
            Ok(out)
        }

        fn poly_div_rem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
            let db = b.len() - 1;
            let mut rem = a.to_vec();
            if rem.len() <= db {
                return (vec![], trim(rem));
            }
            let mut quot = vec![0u64; rem.len() - db];
            let lead_inv = inv_mod(b[db], self.p).expect("trimmed leading coefficient");
            while rem.len() > db {
                let k = rem.len() - 1 - db;
                let factor = mulmod(*rem.last().unwrap(), lead_inv, self.p);
                if factor != 0 {
                    for (i, &bc) in b.iter().enumerate() {
                        let sub = mulmod(factor, bc, self.p);
                        rem[k + i] = (rem[k + i] + self.p - sub) % self.p;
                    }
                    quot[k] = factor;
                }
                rem.pop();
                rem = trim(rem);
                if rem.len() <= db {
                    break;
                }
            }
            (trim(quot), trim(rem))
        }

        fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
            if a.is_empty() || b.is_empty() {
                return vec![];
            }
            let mut out = vec![0u64; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = (out[i + j] + mulmod(x, y, self.p)) % self.p;
                }
            }
            trim(out)
        }

        fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
            let n = a.len().max(b.len());
            let mut out = vec![0u64; n];
            for (i, slot) in out.iter_mut().enumerate() {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                *slot = (x + self.p - y) % self.p;
            }
            trim(out)
        }

        fn poly_scale(&self, a: &[u64], c: u64) -> Vec<u64> {
            trim(a.iter().map(|&x| mulmod(x, c, self.p)).collect())
        }

        fn elem_zero(&self) -> Elem {
            Elem {
                base: self.nf_zero(),
                rad: self.nf_zero(),
            }
        }

        fn elem_is_zero(&self, e: &Elem) -> bool {
            self.nf_is_zero(&e.base) && self.nf_is_zero(&e.rad)
        }

        fn elem_add(&self, a: &Elem, b: &Elem) -> Elem {
            Elem {
                base: self.nf_add(&a.base, &b.base),
                rad: self.nf_add(&a.rad, &b.rad),
            }
        }

        fn elem_sub(&self, a: &Elem, b: &Elem) -> Elem {
            Elem {
                base: self.nf_sub(&a.base, &b.base),
                rad: self.nf_sub(&a.rad, &b.rad),
            }
        }

        fn elem_neg(&self, a: &Elem) -> Elem {
            self.elem_sub(&self.elem_zero(), a)
        }

        fn elem_mul(&self, a: &Elem, b: &Elem) -> Elem {
            let ac = self.nf_mul(&a.base, &b.base);
            let bd = self.nf_mul(&a.rad, &b.rad);
            Elem {
                base: self.nf_add(&ac, &self.nf_scale(&bd, self.delta)),
                rad: self.nf_add(&self.nf_mul(&a.base, &b.rad), &self.nf_mul(&a.rad, &b.base)),
            }
        }

        fn elem_scale(&self, a: &Elem, c: u64) -> Elem {
            Elem {
                base: self.nf_scale(&a.base, c),
                rad: self.nf_scale(&a.rad, c),
            }
        }

        fn elem_inv(&self, a: &Elem) -> ModResult<Elem> {
            // (x + y√δ)⁻¹ = (x − y√δ)/(x² − y²δ)
            let norm = self.nf_sub(
                &self.nf_mul(&a.base, &a.base),
                &self.nf_scale(&self.nf_mul(&a.rad, &a.rad), self.delta),
            );
            let ninv = self.nf_inv(&norm)?;
            Ok(Elem {
                base: self.nf_mul(&a.base, &ninv),
                rad: self.nf_mul(&self.nf_sub(&self.nf_zero(), &a.rad), &ninv),
            })
        }
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Runs the incremental multiples of `P̄` in the finite ring and
    /// reports every `n ≤ bound` with `n·P̄ = Ō`. An empty list proves
    /// `NoTorsionUpTo(bound)` for the exact point.
    pub(super) fn multiples_hitting_infinity(
        curve: &EllipticCurve,
        p: &CurvePoint,
        bound: u32,
        prime: u64,
    ) -> ModResult<Vec<u32>> {
        let Some((x, y)) = p.coordinates() else {
            return Ok(vec![1]);
        };
        let delta = if !y.in_base_field() {
            y.delta().clone()
        } else if !x.in_base_field() {
            x.delta().clone()
        } else {
            BigInt::from(5) // arbitrary unit for base-field points
        };
        let ring = Ring::new(curve, &delta, prime)?;
        // good reduction required
        let disc = ring.reduce_nf(&curve.discriminant())?;
        if ring.nf_is_zero(&disc) {
            return Err(BadPrime);
        }
        let a2 = Elem {
            base: ring.reduce_nf(&curve.a2)?,
            rad: ring.nf_zero(),
        };
        let a4 = Elem {
            base: ring.reduce_nf(&curve.a4)?,
            rad: ring.nf_zero(),
        };
        let base = MPoint::Affine(ring.reduce_quadext(x)?, ring.reduce_quadext(y)?);
        let add = |p: &MPoint, q: &MPoint| -> ModResult<MPoint> {
            match (p, q) {
                (MPoint::Inf, _) => Ok(q.clone()),
                (_, MPoint::Inf) => Ok(p.clone()),
                (MPoint::Affine(x1, y1), MPoint::Affine(x2, y2)) => {
                    let slope = if x1 == x2 {
                        if *y1 == ring.elem_neg(y2) {
                            return Ok(MPoint::Inf);
                        }
                        if y1 != y2 {
                            // branches disagree between factor fields
                            return Err(BadPrime);
                        }
                        // tangent: (3x² + 2a₂x + a₄) / (2y)
                        let num = ring.elem_add(
                            &ring.elem_add(
                                &ring.elem_scale(&ring.elem_mul(x1, x1), 3),
                                &ring.elem_scale(&ring.elem_mul(&a2, x1), 2),
                            ),
                            &a4,
                        );
                        let den = ring.elem_inv(&ring.elem_scale(y1, 2))?;
                        ring.elem_mul(&num, &den)
                    } else {
                        let dx = ring.elem_sub(x2, x1);
                        ring.elem_mul(&ring.elem_sub(y2, y1), &ring.elem_inv(&dx)?)
                    };
                    let x3 = ring.elem_sub(
                        &ring.elem_sub(&ring.elem_sub(&ring.elem_mul(&slope, &slope), &a2), x1),
                        x2,
                    );
                    let y3 = ring.elem_neg(&ring.elem_add(
                        y1,
                        &ring.elem_mul(&slope, &ring.elem_sub(&x3, x1)),
                    ));
                    Ok(MPoint::Affine(x3, y3))
                }
            }
        };
        let mut hits = Vec::new();
        let mut acc = base.clone();
        for n in 1..=bound {
            if acc == MPoint::Inf {
                hits.push(n);
            }
            if n < bound {
                acc = add(&acc, &base)?;
            }
        }
        Ok(hits)
    }
}

impl CurvePoint {
    pub fn affine(x: QuadExtElement, y: QuadExtElement) -> Self {
        CurvePoint::Affine { x, y }
    }

    /// A point with both coordinates in the base field `K`.
    pub fn from_base(x: NFElement, y: NFElement) -> Self {
        CurvePoint::Affine {
            x: QuadExtElement::from_base(x, BigInt::one()),
            y: QuadExtElement::from_base(y, BigInt::one()),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coordinates(&self) -> Option<(&QuadExtElement, &QuadExtElement)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl TorsionVerdict {
    pub fn is_no_torsion(&self) -> bool {
        matches!(self, TorsionVerdict::NoTorsionUpTo(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::UniPoly;
    use proptest::prelude::*;

    fn legendre_over_q(lambda: i64) -> EllipticCurve {
        let q = NumberField::rationals();
        EllipticCurve::legendre(q.from_rat(rat_int(lambda))).unwrap()
    }

    fn q_point(c: &EllipticCurve, x: i64, y: i64) -> CurvePoint {
        let f = c.field();
        CurvePoint::from_base(f.from_rat(rat_int(x)), f.from_rat(rat_int(y)))
    }

    #[test]
    fn on_curve_basics() {
        let c = legendre_over_q(2);
        assert!(c.contains(&q_point(&c, 0, 0)).unwrap());
        assert!(c.contains(&CurvePoint::Infinity).unwrap());
        let q = NumberField::rationals();
        let w = EllipticCurve::short_weierstrass(q.one(), q.zero()).unwrap();
        assert!(!w.contains(&q_point(&w, 1, 1)).unwrap());
        // incompatible fields
        let k = NumberField::quadratic(&BigInt::from(2)).unwrap();
        let foreign = CurvePoint::from_base(k.zero(), k.zero());
        assert_eq!(c.contains(&foreign).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn two_torsion_arithmetic() {
        let c = legendre_over_q(2);
        let p0 = q_point(&c, 0, 0);
        let p1 = q_point(&c, 1, 0);
        // identity
        assert_eq!(c.add(&p0, &CurvePoint::Infinity).unwrap(), p0);
        // 2-torsion doubles to infinity
        assert_eq!(c.add(&p0, &p0).unwrap(), CurvePoint::Infinity);
        // the chord through two 2-torsion points hits the third: (2, 0)
        assert_eq!(c.add(&p0, &p1).unwrap(), q_point(&c, 2, 0));
        // off-curve input is an error
        assert_eq!(c.add(&q_point(&c, 5, 1), &p0).unwrap_err(), Error::OffCurve);
    }

    #[test]
    fn scalar_mul_basics() {
        let c = legendre_over_q(2);
        let p = q_point(&c, 0, 0);
        assert_eq!(c.scalar_mul(0, &p).unwrap(), CurvePoint::Infinity);
        assert_eq!(c.scalar_mul(1, &p).unwrap(), p);
        assert_eq!(c.scalar_mul(2, &p).unwrap(), CurvePoint::Infinity);
        assert_eq!(c.scalar_mul(-1, &p).unwrap(), c.negate(&p));
    }

    #[test]
    fn j_invariant_values() {
        let q = NumberField::rationals();
        // y² = x³ + x has j = 1728
        let c = EllipticCurve::short_weierstrass(q.one(), q.zero()).unwrap();
        assert_eq!(c.j_invariant().unwrap().as_rational().unwrap(), rat_int(1728));
        // y² = x³ + 1 has j = 0
        let c = EllipticCurve::short_weierstrass(q.zero(), q.one()).unwrap();
        assert_eq!(c.j_invariant().unwrap().as_rational().unwrap(), rat_int(0));
        // Legendre λ = −1 against the classical formula
        let c = legendre_over_q(-1);
        let j = c.j_invariant().unwrap().as_rational().unwrap();
        let lam = rat_int(-1);
        let num = (&lam * &lam - &lam + rat_int(1)).pow(3) * rat_int(256);
        let den = (&lam * &lam) * (&lam - rat_int(1)).pow(2);
        assert_eq!(j, num / den);
        assert_eq!(j, rat_int(1728));
    }

    #[test]
    fn j_matches_depressed_model() {
        let c = legendre_over_q(3);
        let (alpha, beta, _) = c.to_short_weierstrass();
        let w = EllipticCurve::short_weierstrass(alpha, beta).unwrap();
        assert_eq!(c.j_invariant().unwrap(), w.j_invariant().unwrap());
    }

    #[test]
    fn singular_inputs_rejected() {
        let q = NumberField::rationals();
        assert_eq!(
            EllipticCurve::legendre(q.zero()).unwrap_err(),
            Error::SingularCurve
        );
        assert_eq!(
            EllipticCurve::legendre(q.one()).unwrap_err(),
            Error::SingularCurve
        );
        // 4a³ + 27b² = 0: a = -3, b = 2
        assert_eq!(
            EllipticCurve::short_weierstrass(q.from_rat(rat_int(-3)), q.from_rat(rat_int(2)))
                .unwrap_err(),
            Error::SingularCurve
        );
    }

    #[test]
    fn torsion_probe_basics() {
        let c = legendre_over_q(2);
        assert_eq!(
            c.torsion_probe(&CurvePoint::Infinity, 24).unwrap(),
            TorsionVerdict::TorsionOrder(1)
        );
        assert_eq!(
            c.torsion_probe(&q_point(&c, 0, 0), 24).unwrap(),
            TorsionVerdict::TorsionOrder(2)
        );
    }

    #[test]
    fn points_in_quadratic_extension() {
        // y² = x³ + x + 1 over Q; x = 1 gives y² = 3, a point over Q(√3)
        let q = NumberField::rationals();
        let c = EllipticCurve::short_weierstrass(q.one(), q.one()).unwrap();
        let delta = BigInt::from(3);
        let x = QuadExtElement::from_base(q.one(), delta.clone());
        let y = QuadExtElement::new(q.zero(), q.one(), delta);
        let p = CurvePoint::affine(x, y);
        assert!(c.contains(&p).unwrap());
        let verdict = c.torsion_probe(&p, 12).unwrap();
        assert_eq!(verdict, TorsionVerdict::NoTorsionUpTo(12));
    }

    #[test]
    fn j_is_twist_invariant() {
        // replacing (α, β) by (γ⁴α, γ⁶β) does not change j
        let k = NumberField::quadratic(&BigInt::from(2)).unwrap();
        let alpha = k.from_coords(vec![rat_int(1), rat_int(1)]);
        let beta = k.from_coords(vec![rat_int(1), rat_int(1)]);
        let gamma = k.from_coords(vec![rat_int(2), rat_int(-1)]);
        let c1 = EllipticCurve::short_weierstrass(alpha.clone(), beta.clone()).unwrap();
        let c2 = EllipticCurve::short_weierstrass(
            gamma.pow(4).unwrap().mul(&alpha),
            gamma.pow(6).unwrap().mul(&beta),
        )
        .unwrap();
        assert_eq!(c1.j_invariant().unwrap(), c2.j_invariant().unwrap());
    }

    #[test]
    fn legendre_over_cubic_field() {
        // y² = x(x−1)(x−λ) with λ³ = 2; the 2-torsion point (λ, 0) is exact
        let k = NumberField::new(UniPoly::from_ints(&[-2, 0, 0, 1])).unwrap();
        let c = EllipticCurve::legendre(k.generator()).unwrap();
        let p = CurvePoint::from_base(k.generator(), k.zero());
        assert!(c.contains(&p).unwrap());
        assert_eq!(
            c.torsion_probe(&p, 24).unwrap(),
            TorsionVerdict::TorsionOrder(2)
        );
    }

    // curve through a chosen point: b = y₀² − x₀³ − a·x₀
    fn curve_with_point(a: i64, x0: i64, y0: i64) -> Option<(EllipticCurve, CurvePoint)> {
        let q = NumberField::rationals();
        let b = rat_int(y0 * y0 - x0 * x0 * x0 - a * x0);
        let c = EllipticCurve::short_weierstrass(q.from_rat(rat_int(a)), q.from_rat(b)).ok()?;
        let p = q_point(&c, x0, y0);
        Some((c, p))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn group_axioms_on_generated_points(
            a in -6i64..=6, x0 in -6i64..=6, y0 in 1i64..=6,
            m in -4i64..=4, n in -4i64..=4,
        ) {
            let Some((c, p)) = curve_with_point(a, x0, y0) else { return Ok(()); };
            let mp = c.scalar_mul(m, &p).unwrap();
            let np = c.scalar_mul(n, &p).unwrap();
            // commutativity
            prop_assert_eq!(c.add(&mp, &np).unwrap(), c.add(&np, &mp).unwrap());
            // associativity on {P, mP, nP}
            let lhs = c.add(&c.add(&p, &mp).unwrap(), &np).unwrap();
            let rhs = c.add(&p, &c.add(&mp, &np).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            // inverse
            prop_assert_eq!(c.add(&mp, &c.negate(&mp)).unwrap(), CurvePoint::Infinity);
            // scalar additivity
            let sum = c.scalar_mul(m + n, &p).unwrap();
            prop_assert_eq!(sum, c.add(&mp, &np).unwrap());
        }
    }
}
