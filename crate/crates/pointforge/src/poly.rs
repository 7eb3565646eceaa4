//! Exact polynomial arithmetic over `Q`.
//!
//! Two shapes cover everything the constructions need:
//!
//! * [`UniPoly`] — dense univariate polynomials, used for minimal
//!   polynomials, the cubic construction's `L`, `M`, `N` and the quartic's
//!   coefficient polynomials.
//! * [`BiHomPoly`] — homogeneous bivariate polynomials of a fixed degree,
//!   used for the twist polynomials `T₁, T₂, S₁, S₂` and the degree-22
//!   polynomial `Q(u, v)` of the quadratic construction.
//!
//! Perfect-square detection is decided *over `Q`*: [`UniPoly::square_root`]
//! either produces an exact polynomial square root or reports that none
//! exists with rational coefficients. For the homogeneous polynomials this
//! crate builds, non-squareness over `Q` extends to `C`: any `Q` of even
//! degree `2(2k+1)` satisfying the swap–scale identity
//! `Q(mu, v) = m^(2k+1) Q(v, u)` for squarefree `m ≠ 1` (see
//! [`BiHomPoly::twist_symmetric`]) and not a square over `Q` cannot be a
//! square over `C` either — a complex square root would have a fixed
//! rational coefficient, forcing it to be rational and contradicting the
//! odd-weight identity. The computation here is the `Q`-side decision; that
//! bridge is a theorem, not code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::rational::{rat_pow, rat_sqrt_exact};

/// Dense univariate polynomial over `Q`; `coeffs[i]` is the coefficient of
/// `t^i`, with no trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(k: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// Convenience constructor from i64 coefficients, index = degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = UniPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division: `self = q·div + r` with `deg r < deg div`.
    ///
    /// # Panics
    ///
    /// Panics if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lc_inv = div.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lc_inv;
            if !factor.is_zero() {
                for (i, c) in div.coeffs.iter().enumerate() {
                    let v = &factor * c;
                    rem[k + i] -= v;
                }
                quot[k] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lc = a.leading_coeff().recip();
            a.scale(&lc)
        }
    }

    /// Extended Euclid: returns `(g, s, t)` with `g = s·self + t·other`,
    /// `g` monic (or zero).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one();
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc_inv = r0.leading_coeff().recip();
        (r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv))
    }

    /// Exact polynomial square root over `Q`: `Some(r)` iff `self = r²`.
    ///
    /// The root is normalized to a positive leading coefficient. Odd degree,
    /// or a leading coefficient that is not a rational square, immediately
    /// rules a square out.
    pub fn square_root(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let d = self.degree().unwrap();
        if d % 2 != 0 {
            return None;
        }
        let lc_sqrt = rat_sqrt_exact(&self.leading_coeff())?;
        let half = d / 2;
        let mut root = UniPoly::monomial(half, lc_sqrt.clone());
        let two_lc = BigRational::from_integer(BigInt::from(2)) * &lc_sqrt;
        loop {
            let rem = self.sub(&root.mul(&root));
            if rem.is_zero() {
                return Some(root);
            }
            let rd = rem.degree().unwrap();
            if rd < half {
                return None;
            }
            let term = UniPoly::monomial(rd - half, rem.leading_coeff() / &two_lc);
            root = root.add(&term);
        }
    }

    /// Yun's squarefree decomposition: returns `(unit, factors)` with
    /// `self = unit · ∏ fᵢ^(mᵢ)`, every `fᵢ` monic and squarefree, with
    /// strictly increasing multiplicities `mᵢ`.
    pub fn squarefree_decomposition(&self) -> (BigRational, Vec<(UniPoly, u32)>) {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let unit = self.leading_coeff();
        let f = self.scale(&unit.recip());
        if f.degree() == Some(0) {
            return (unit, vec![]);
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut factors = Vec::new();
        let mut w = f.div_rem(&g).0;
        let mut y = df.div_rem(&g).0;
        let mut mult = 1u32;
        loop {
            let z = y.sub(&w.derivative());
            if z.is_zero() {
                if w.degree().unwrap_or(0) > 0 {
                    factors.push((w, mult));
                }
                break;
            }
            let h = w.gcd(&z);
            if h.degree().unwrap_or(0) > 0 {
                factors.push((h.clone(), mult));
            }
            w = w.div_rem(&h).0;
            y = z.div_rem(&h).0;
            mult += 1;
        }
        (unit, factors)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => {
                    if !unit_coeff {
                        write!(f, "*")?;
                    }
                    write!(f, "t")?;
                }
                _ => {
                    if !unit_coeff {
                        write!(f, "*")?;
                    }
                    write!(f, "t^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Homogeneous bivariate polynomial over `Q` of a fixed degree `d`;
/// `coeffs[i]` is the coefficient of `u^i v^(d−i)`, so the list always has
/// `d + 1` entries (the zero polynomial keeps its degree marker).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiHomPoly {
    degree: usize,
    coeffs: Vec<BigRational>,
}

impl BiHomPoly {
    pub fn new(degree: usize, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), degree + 1, "coefficient list length must be degree + 1");
        BiHomPoly { degree, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BiHomPoly {
            degree,
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn from_ints(degree: usize, coeffs: &[i64]) -> Self {
        BiHomPoly::new(
            degree,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `u^i v^(d−i)`.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs[i].clone()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch in homogeneous sum");
        BiHomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch in homogeneous sum");
        BiHomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        BiHomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BiHomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut out = vec![BigRational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BiHomPoly { degree, coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiHomPoly::new(0, vec![BigRational::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, u: &BigRational, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut upow = BigRational::one();
        // build u^i v^(d-i) incrementally
        let mut vpows = Vec::with_capacity(self.degree + 1);
        let mut vp = BigRational::one();
        for _ in 0..=self.degree {
            vpows.push(vp.clone());
            vp *= v;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &upow * &vpows[self.degree - i];
            }
            upow *= u;
        }
        acc
    }

    /// `p(v, u)`: swaps the two variables (reverses the coefficient list).
    pub fn swap_vars(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        BiHomPoly {
            degree: self.degree,
            coeffs,
        }
    }

    /// `p(m·u, v)`: scales the coefficient of `u^i` by `m^i`.
    pub fn scale_u(&self, m: &BigRational) -> Self {
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        let mut mp = BigRational::one();
        for c in &self.coeffs {
            coeffs.push(c * &mp);
            mp *= m;
        }
        BiHomPoly {
            degree: self.degree,
            coeffs,
        }
    }

    /// Exact check of the swap–scale identity `p(m·u, v) = m^w · p(v, u)`,
    /// coefficient by coefficient. No rounding is involved anywhere.
    pub fn twist_symmetric(&self, m: &BigInt, weight: i64) -> bool {
        let m = BigRational::from_integer(m.clone());
        let mw = match rat_pow(&m, weight) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let lhs = self.scale_u(&m);
        let rhs = self.swap_vars().scale(&mw);
        lhs == rhs
    }

    /// Exact square root over `Q` in the homogeneous sense:
    /// `Some(r)` iff `self = r²` with `r` homogeneous of half the degree.
    pub fn square_root(&self) -> Option<BiHomPoly> {
        if self.degree % 2 != 0 {
            return None;
        }
        if self.is_zero() {
            return Some(BiHomPoly::zero(self.degree / 2));
        }
        // split off powers of u and v; both must be even
        let u_mult = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let v_mult = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        if u_mult % 2 != 0 || v_mult % 2 != 0 {
            return None;
        }
        // the core, prime to u and v, as a univariate polynomial in u/v
        let core: Vec<BigRational> =
            self.coeffs[u_mult..self.coeffs.len() - v_mult].to_vec();
        let core_poly = UniPoly::new(core);
        let root = core_poly.square_root()?;
        let half_core = core_poly.degree().unwrap() / 2;
        let half = self.degree / 2;
        let mut coeffs = vec![BigRational::zero(); half + 1];
        for (i, c) in root.coeffs().iter().enumerate() {
            coeffs[u_mult / 2 + i] = c.clone();
        }
        debug_assert_eq!(u_mult / 2 + half_core + v_mult / 2, half);
        Some(BiHomPoly {
            degree: half,
            coeffs,
        })
    }
}

impl fmt::Display for BiHomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let j = self.degree - i;
            let unit_coeff = mag.is_one() && (i > 0 || j > 0);
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            let mut sep = !unit_coeff;
            for (var, e) in [("u", i), ("v", j)] {
                if e == 0 {
                    continue;
                }
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn div_rem_basics() {
        let f = UniPoly::from_ints(&[-1, 0, 0, 1]); // t^3 - 1
        let g = UniPoly::from_ints(&[-1, 1]); // t - 1
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, UniPoly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = g.div_rem(&f);
        assert!(q.is_zero());
        assert_eq!(r, g);
    }

    #[test]
    fn square_root_detects_squares() {
        // (t + 1)^2 = t^2 + 2t + 1
        let p = UniPoly::from_ints(&[1, 2, 1]);
        assert_eq!(p.square_root(), Some(UniPoly::from_ints(&[1, 1])));
        // t^3: odd multiplicity
        assert_eq!(UniPoly::from_ints(&[0, 0, 0, 1]).square_root(), None);
        // odd degree is never a square
        assert_eq!(UniPoly::from_ints(&[1, 2, 3, 4, 5, 6]).square_root(), None);
        // leading coefficient not a square
        assert_eq!(UniPoly::from_ints(&[0, 0, 2]).square_root(), None);
        // rational coefficients: (t/2 + 1/3)^2
        let r = UniPoly::new(vec![rat(1, 3), rat(1, 2)]);
        assert_eq!(r.mul(&r).square_root(), Some(r));
    }

    #[test]
    fn squarefree_decomposition_oracle_agrees_with_square_root() {
        // f = (t-1)^2 (t+2)^3
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[2, 1]);
        let f = a.pow(2).mul(&b.pow(3));
        let (unit, factors) = f.squarefree_decomposition();
        assert!(unit.is_one());
        assert_eq!(factors, vec![(a.clone(), 2), (b.clone(), 3)]);
        // a square has all multiplicities even and a square unit
        let sq = f.mul(&b); // (t-1)^2 (t+2)^4
        let (_, factors) = sq.squarefree_decomposition();
        assert!(factors.iter().all(|(_, m)| m % 2 == 0));
        assert!(sq.square_root().is_some());
    }

    #[test]
    fn bihom_eval_and_swap() {
        // u^2 + u v
        let p = BiHomPoly::from_ints(2, &[0, 1, 1]);
        assert_eq!(p.eval(&rat_int(2), &rat_int(3)), rat_int(10));
        assert_eq!(p.swap_vars(), BiHomPoly::from_ints(2, &[1, 1, 0]));
        assert!(!p.twist_symmetric(&BigInt::from(2), 1));
    }

    #[test]
    fn twist_symmetry_of_known_twist_polynomial() {
        // the sqrt(2)-part of (u + v*sqrt(2))^4 (1 + sqrt(2))
        let t1 = BiHomPoly::from_ints(4, &[4, 8, 12, 4, 1]);
        assert!(t1.twist_symmetric(&BigInt::from(2), 2));
        assert!(!t1.twist_symmetric(&BigInt::from(2), 3));
    }

    #[test]
    fn bihom_square_root() {
        // (u v)^2
        let p = BiHomPoly::from_ints(4, &[0, 0, 1, 0, 0]);
        assert_eq!(p.square_root(), Some(BiHomPoly::from_ints(2, &[0, 1, 0])));
        // (u^2 + v^2)^2 = u^4 + 2u^2v^2 + v^4
        let p = BiHomPoly::from_ints(4, &[1, 0, 2, 0, 1]);
        assert_eq!(p.square_root(), Some(BiHomPoly::from_ints(2, &[1, 0, 1])));
        // u^3 v: odd powers of both variables
        assert_eq!(BiHomPoly::from_ints(4, &[0, 0, 0, 1, 0]).square_root(), None);
    }

    fn arb_rat() -> impl Strategy<Value = BigRational> {
        (-20i64..=20, 1i64..=8).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(arb_rat(), 0..=max_deg + 1).prop_map(UniPoly::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn unipoly_ring_distributivity(p in arb_unipoly(5), q in arb_unipoly(5), r in arb_unipoly(5)) {
            prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
        }

        #[test]
        fn unipoly_div_rem_reconstructs(p in arb_unipoly(6), q in arb_unipoly(3)) {
            prop_assume!(!q.is_zero());
            let (quot, rem) = p.div_rem(&q);
            prop_assert_eq!(quot.mul(&q).add(&rem), p.clone());
            if !rem.is_zero() {
                prop_assert!(rem.degree().unwrap() < q.degree().unwrap());
            }
        }

        #[test]
        fn unipoly_square_round_trip(p in arb_unipoly(4)) {
            let sq = p.mul(&p);
            let root = sq.square_root();
            prop_assert!(root.is_some());
            let r = root.unwrap();
            prop_assert_eq!(r.mul(&r), sq);
        }

        #[test]
        fn bihom_distributivity(
            a in prop::collection::vec(arb_rat(), 4),
            b in prop::collection::vec(arb_rat(), 4),
            c in prop::collection::vec(arb_rat(), 3),
        ) {
            let p = BiHomPoly::new(3, a);
            let q = BiHomPoly::new(3, b);
            let r = BiHomPoly::new(2, c);
            prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
        }

        #[test]
        fn twist_symmetry_exact_on_constructed_instances(
            half in prop::collection::vec(arb_rat(), 6),
            m in prop_oneof![Just(2i64), Just(3), Just(5), Just(-1), Just(-2)],
        ) {
            // degree 10, weight 5: set c[10-i] = c[i] * m^(i-5) for i in 0..5
            let m_big = BigInt::from(m);
            let m_rat = BigRational::from_integer(m_big.clone());
            let mut coeffs = vec![BigRational::zero(); 11];
            for (i, c) in half.iter().enumerate() {
                coeffs[i] = c.clone();
                coeffs[10 - i] = c * rat_pow(&m_rat, i as i64 - 5).unwrap();
            }
            let q = BiHomPoly::new(10, coeffs);
            prop_assert!(q.twist_symmetric(&m_big, 5));
            // perturbing one coefficient breaks the identity unless the polynomial was zero
            if !q.is_zero() {
                let mut bad = q.coeffs().to_vec();
                bad[0] += rat_int(1);
                let qbad = BiHomPoly::new(10, bad);
                prop_assert!(!qbad.twist_symmetric(&m_big, 5));
            }
        }
    }
}
