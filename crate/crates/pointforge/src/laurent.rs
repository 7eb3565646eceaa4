//! Truncated Laurent series over `Q` with explicit knowledge windows.
//!
//! A series stores the coefficients of `t^start, t^(start+1), …` up to a
//! finite window. Everything below `start` is genuinely zero; everything at
//! or above `start + len` is unknown. Operations track how far the result
//! is known and refuse to pretend otherwise: asking for the valuation of a
//! series whose entire known window is zero is an error, not a zero.
//!
//! The crate uses these series for exactly one job: expanding polynomial
//! data at the place `u = 1/t` of the quartic construction and reading off
//! pole orders there (see [`crate::quartic::pole_profile`]).

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::UniPoly;
use crate::rational::rat_sqrt_exact;
use crate::{Error, Result};

/// Default number of known terms when building a series.
pub const DEFAULT_PRECISION: usize = 12;

/// Operations refuse to hand back series known to fewer terms than this.
pub const MIN_KNOWN_TERMS: usize = 4;

/// Square-root branch selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// A Laurent series known on the exponent window `[start, start + len)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    start: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentSeries {
    /// Builds a series from the coefficient of `t^start` upward.
    pub fn new(start: i64, coeffs: Vec<BigRational>) -> Self {
        LaurentSeries { start, coeffs }
    }

    /// The series of a single exact term `c·t^k`, known out to
    /// `k + precision`.
    pub fn monomial(k: i64, c: BigRational, precision: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); precision.max(1)];
        coeffs[0] = c;
        LaurentSeries { start: k, coeffs }
    }

    /// Expands a polynomial at `u = 1/t`: the term `c·u^i` becomes
    /// `c·t^(−i)`. The result is exact; `precision` caps how many known
    /// coefficients are carried.
    pub fn from_poly_inverse_t(p: &UniPoly, precision: usize) -> Self {
        let deg = p.degree().unwrap_or(0) as i64;
        let mut coeffs = vec![BigRational::zero(); precision.max(1)];
        for (i, c) in p.coeffs().iter().enumerate() {
            let idx = deg - i as i64;
            if (idx as usize) < coeffs.len() {
                coeffs[idx as usize] = c.clone();
            }
        }
        LaurentSeries {
            start: -deg,
            coeffs,
        }
    }

    /// First known exponent.
    pub fn window_start(&self) -> i64 {
        self.start
    }

    /// One past the last known exponent.
    pub fn window_end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient of `t^e`; `None` when `e` is beyond the known window.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        if e < self.start {
            return Some(BigRational::zero());
        }
        let idx = usize::try_from(e - self.start).ok()?;
        self.coeffs.get(idx).cloned()
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The exponent of the lowest-order nonzero term.
    ///
    /// Errors with [`Error::UndeterminedValuation`] when the whole known
    /// window is zero — the series might be zero or might merely start
    /// beyond the window, and the two are not distinguishable at this
    /// precision.
    pub fn valuation(&self) -> Result<i64> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return Ok(self.start + i as i64);
            }
        }
        Err(Error::UndeterminedValuation)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let start = self.start.min(other.start);
        let end = self.window_end().min(other.window_end());
        let len = end - start;
        if len < MIN_KNOWN_TERMS as i64 {
            return Err(Error::InsufficientPrecision);
        }
        let coeffs = (start..end)
            .map(|e| {
                self.coeff(e).unwrap_or_else(BigRational::zero)
                    + other.coeff(e).unwrap_or_else(BigRational::zero)
            })
            .collect();
        Ok(LaurentSeries { start, coeffs })
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let len = self.coeffs.len().min(other.coeffs.len());
        if len < MIN_KNOWN_TERMS {
            return Err(Error::InsufficientPrecision);
        }
        let start = self.start + other.start;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Ok(LaurentSeries { start, coeffs })
    }

    /// Exact square root to the available precision.
    ///
    /// Requires the valuation to be determined and even, and the leading
    /// coefficient to be a rational square. The `branch` fixes the sign of
    /// the leading coefficient of the root.
    pub fn sqrt(&self, branch: Branch) -> Result<Self> {
        let val = self.valuation()?;
        if val.rem_euclid(2) != 0 {
            return Err(Error::OddValuation(val));
        }
        let offset = (val - self.start) as usize;
        let known = &self.coeffs[offset..];
        if known.len() < MIN_KNOWN_TERMS {
            return Err(Error::InsufficientPrecision);
        }
        let lead = rat_sqrt_exact(&known[0]).ok_or(Error::NonSquareLeading)?;
        let r0 = match branch {
            Branch::Plus => lead,
            Branch::Minus => -lead,
        };
        let two_r0 = BigRational::from_integer(2.into()) * &r0;
        let mut root = Vec::with_capacity(known.len());
        root.push(r0);
        for k in 1..known.len() {
            let mut acc = known[k].clone();
            for i in 1..k {
                acc -= &root[i] * &root[k - i];
            }
            root.push(acc / &two_r0);
        }
        Ok(LaurentSeries {
            start: val / 2,
            coeffs: root,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use rand::Rng;
    use rand::SeedableRng;

    fn series(start: i64, vals: &[(i64, i64)], precision: usize) -> LaurentSeries {
        // vals are (offset-from-start, integer value) pairs
        let mut coeffs = vec![BigRational::zero(); precision];
        for &(off, v) in vals {
            coeffs[off as usize] = rat_int(v);
        }
        LaurentSeries::new(start, coeffs)
    }

    #[test]
    fn valuation_examples() {
        // t^-2 + 1
        let s = series(-2, &[(0, 1), (2, 1)], 12);
        assert_eq!(s.valuation().unwrap(), -2);
        // 5 t^3
        let s = series(3, &[(0, 5)], 12);
        assert_eq!(s.valuation().unwrap(), 3);
        // all-zero window
        let s = series(0, &[], 12);
        assert_eq!(s.valuation().unwrap_err(), Error::UndeterminedValuation);
    }

    #[test]
    fn sqrt_binomial_oracle() {
        // s = t^-4 (1 + t^4); sqrt = t^-2 (1 + t^4)^(1/2)
        // binomial series: (1+x)^(1/2) = 1 + x/2 - x^2/8 + x^3/16 - ...
        let mut coeffs = vec![BigRational::zero(); 14];
        coeffs[0] = rat_int(1);
        coeffs[4] = rat_int(1);
        let s = LaurentSeries::new(-4, coeffs);
        let r = s.sqrt(Branch::Plus).unwrap();
        assert_eq!(r.coeff(-2).unwrap(), rat_int(1));
        assert_eq!(r.coeff(2).unwrap(), rat(1, 2));
        assert_eq!(r.coeff(6).unwrap(), rat(-1, 8));
        assert_eq!(r.coeff(10).unwrap(), rat(1, 16));
        assert_eq!(r.coeff(0).unwrap(), rat_int(0));
    }

    #[test]
    fn sqrt_trivials() {
        let one = LaurentSeries::monomial(0, rat_int(1), 12);
        assert_eq!(one.sqrt(Branch::Plus).unwrap().coeff(0).unwrap(), rat_int(1));
        let t2 = LaurentSeries::monomial(2, rat_int(1), 12);
        let r = t2.sqrt(Branch::Minus).unwrap();
        assert_eq!(r.valuation().unwrap(), 1);
        assert_eq!(r.coeff(1).unwrap(), rat_int(-1));
    }

    #[test]
    fn sqrt_error_paths() {
        let t3 = LaurentSeries::monomial(3, rat_int(1), 12);
        assert_eq!(t3.sqrt(Branch::Plus).unwrap_err(), Error::OddValuation(3));
        let s = LaurentSeries::monomial(2, rat_int(2), 12);
        assert_eq!(s.sqrt(Branch::Plus).unwrap_err(), Error::NonSquareLeading);
        let short = LaurentSeries::monomial(0, rat_int(1), 3);
        assert_eq!(short.sqrt(Branch::Plus).unwrap_err(), Error::InsufficientPrecision);
    }

    #[test]
    fn sqrt_squares_back_to_input() {
        // 100 random series with even valuation and square leading coefficient
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let val = 2 * rng.gen_range(-3i64..=3);
            let lead: i64 = rng.gen_range(1i64..=9);
            let mut coeffs = vec![BigRational::zero(); 12];
            coeffs[0] = rat_int(lead * lead);
            for c in coeffs.iter_mut().skip(1) {
                *c = rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4));
            }
            let s = LaurentSeries::new(val, coeffs);
            for branch in [Branch::Plus, Branch::Minus] {
                let r = s.sqrt(branch).unwrap();
                let r2 = r.mul(&r).unwrap();
                let diff = r2.sub(&s).unwrap();
                assert!(diff.is_zero_to_precision(), "sqrt^2 != s for {s:?}");
            }
        }
    }

    #[test]
    fn poly_expansion_at_inverse_t() {
        // p(u) = u^4 + 3u + 2 at u = 1/t: t^-4 + 3 t^-1 + 2
        let p = UniPoly::from_ints(&[2, 3, 0, 0, 1]);
        let s = LaurentSeries::from_poly_inverse_t(&p, 12);
        assert_eq!(s.valuation().unwrap(), -4);
        assert_eq!(s.coeff(-1).unwrap(), rat_int(3));
        assert_eq!(s.coeff(0).unwrap(), rat_int(2));
        assert_eq!(s.coeff(7).unwrap(), rat_int(0));
        assert_eq!(s.coeff(8), None);
    }
}
