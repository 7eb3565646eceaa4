//! Genus bookkeeping for the fibered curves `C_n` on a product of `n`
//! elliptic curves modulo simultaneous negation.
//!
//! For pairwise non-isomorphic Legendre curves `y_i² = x_i(x_i−1)(x_i−λ_i)`
//! the diagonal `P¹` pulls back to a curve cut out by the homogeneous
//! system `u_i² = (v − λ₁t)(v − λ_{i+1}t)`, `i = 1, …, n−1`. Its
//! normalization has genus
//!
//! ```text
//! g_n = 2^(n−3)·(n−4) + 1,
//! ```
//!
//! consistent with Riemann–Hurwitz in the form
//! `2g_n − 2 = 2^(n−1)·(−2) + n·2^(n−2)`: the curve is a `(Z/2)^(n−1)`
//! cover of `P¹` with `2n` branch points of ramification index 2 under each
//! of the `n` quadric relations. In particular `g₂ = g₃ = 0` and `g₄ = 1`;
//! from `n = 5` on the genus grows and the curves stop being a source of
//! parametrized points. This module implements the formula and its
//! cross-check, not a general genus engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::rational::rat;
use crate::{Error, Result};

/// `g_n = 2^(n−3)·(n−4) + 1`, evaluated exactly in rationals (the power is
/// fractional for `n = 2`); the result is checked to be an integer.
pub fn genus(n: u32) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::GenusRange);
    }
    let two = rat(2, 1);
    let pow = crate::rational::rat_pow(&two, i64::from(n) - 3).expect("2^k never fails");
    let g = pow * BigRational::from_integer(BigInt::from(i64::from(n) - 4)) + BigRational::one();
    assert!(g.is_integer(), "genus formula produced a non-integer");
    Ok(g.to_integer())
}

/// Checks `2g_n − 2 = 2^(n−1)·(−2) + n·2^(n−2)` exactly.
pub fn riemann_hurwitz_check(n: u32) -> Result<bool> {
    let g = genus(n)?;
    let lhs = BigRational::from_integer(g * 2 - 2);
    let two = rat(2, 1);
    let rhs = crate::rational::rat_pow(&two, i64::from(n) - 1).unwrap() * rat(-2, 1)
        + crate::rational::rat_pow(&two, i64::from(n) - 2).unwrap()
            * BigRational::from_integer(BigInt::from(n));
    Ok(lhs == rhs)
}

/// One quadric relation `u_i² = (v − λ₁t)(v − λ_{i+1}t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricRelation {
    /// index of the `u` variable (1-based)
    pub index: usize,
    pub lambda_first: BigRational,
    pub lambda_other: BigRational,
}

impl QuadricRelation {
    pub fn render(&self) -> String {
        format!(
            "u{}^2 = (v - ({})*t)(v - ({})*t)",
            self.index, self.lambda_first, self.lambda_other
        )
    }

    /// The corresponding affine model `z² = x²(x−1)²(x−λ₁)(x−λ_i)`.
    pub fn render_affine(&self) -> String {
        format!(
            "z{}^2 = x^2 (x-1)^2 (x - ({})) (x - ({}))",
            self.index, self.lambda_first, self.lambda_other
        )
    }
}

/// The fibered system attached to `n ≥ 2` distinct Legendre parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerCurveSystem {
    lambdas: Vec<BigRational>,
    relations: Vec<QuadricRelation>,
}

impl KummerCurveSystem {
    /// Requires at least two λ values, pairwise distinct and ∉ {0, 1}
    /// (distinctness is what makes the component curves non-isomorphic).
    pub fn new(lambdas: Vec<BigRational>) -> Result<Self> {
        if lambdas.len() < 2 {
            return Err(Error::GenusRange);
        }
        let zero = BigRational::from_integer(BigInt::from(0));
        let one = BigRational::one();
        for (i, l) in lambdas.iter().enumerate() {
            if *l == zero || *l == one {
                return Err(Error::DegenerateLambdas);
            }
            if lambdas[..i].contains(l) {
                return Err(Error::DegenerateLambdas);
            }
        }
        let relations = lambdas[1..]
            .iter()
            .enumerate()
            .map(|(i, l)| QuadricRelation {
                index: i + 1,
                lambda_first: lambdas[0].clone(),
                lambda_other: l.clone(),
            })
            .collect();
        Ok(KummerCurveSystem { lambdas, relations })
    }

    pub fn n(&self) -> u32 {
        self.lambdas.len() as u32
    }

    pub fn relations(&self) -> &[QuadricRelation] {
        &self.relations
    }

    pub fn genus(&self) -> BigInt {
        genus(self.n()).expect("n >= 2 by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn genus_values() {
        assert_eq!(genus(2).unwrap(), BigInt::from(0));
        assert_eq!(genus(3).unwrap(), BigInt::from(0));
        assert_eq!(genus(4).unwrap(), BigInt::from(1));
        assert_eq!(genus(5).unwrap(), BigInt::from(5));
        assert!(genus(1).is_err());
    }

    #[test]
    fn riemann_hurwitz_holds_widely() {
        for n in 2..=64 {
            assert!(riemann_hurwitz_check(n).unwrap(), "RH fails at n = {n}");
        }
    }

    #[test]
    fn system_construction() {
        let sys = KummerCurveSystem::new(vec![rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(sys.relations().len(), 1);
        assert_eq!(sys.relations()[0].render(), "u1^2 = (v - (2)*t)(v - (3)*t)");
        assert_eq!(sys.genus(), BigInt::from(0));

        let sys = KummerCurveSystem::new(vec![rat_int(2), rat_int(3), rat_int(5)]).unwrap();
        assert_eq!(sys.relations().len(), 2);

        assert_eq!(
            KummerCurveSystem::new(vec![rat_int(2), rat_int(2)]).unwrap_err(),
            Error::DegenerateLambdas
        );
        assert_eq!(
            KummerCurveSystem::new(vec![rat_int(0), rat_int(2)]).unwrap_err(),
            Error::DegenerateLambdas
        );
    }
}
