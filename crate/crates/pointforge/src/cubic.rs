//! Point construction for Legendre curves `y² = x(x−1)(x−λ)` with `λ` a
//! cubic irrationality.
//!
//! Let `L(t) = t³ − at² + bt − c` be the minimal polynomial of `λ` and set
//!
//! ```text
//! M(t) = (t⁴ − 2bt² + 8ct + b² − 4ac) / 4
//! N(t) = L(t)·M(t)·(M(t) − L(t))        (degree 11)
//! ```
//!
//! The completed square
//!
//! ```text
//! ((b − t²)/2 + (t − a)λ + λ²)² = M(t) − L(t)·λ
//! ```
//!
//! holds identically in `K[t]` — [`CubicInput::verify_identity`] expands it
//! coefficient by coefficient. Dividing through by `L(t)²` turns it into
//! the curve equation for
//!
//! ```text
//! x = M(t)/L(t),    y = ((b − t²)/2 + (t − a)λ + λ²) · √N(t) / L(t)²,
//! ```
//!
//! so each rational `t₀` with `N(t₀) ≠ 0` yields an exact point with
//! coordinates in `K(√δ)`, `δ` the squarefree part of `N(t₀)`. Since
//! `deg N = 11` is odd, `N` is never a square, and varying `t₀` varies `δ`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;

use crate::certificate::{
    ConstructionKind, ForgeOutcome, ForgedPoint, SkipReason, SpecializationParams,
};
use crate::elliptic::{CurvePoint, EllipticCurve};
use crate::number_field::{NumberField, QuadExtElement};
use crate::poly::UniPoly;
use crate::rational::{rat, rat_int};
use crate::squarefree::split_square_part;
use crate::Result;

/// A validated cubic construction input: `L = t³ − at² + bt − c`
/// irreducible over `Q`, together with the field `K = Q[λ]/(L)`.
#[derive(Debug, Clone)]
pub struct CubicInput {
    field: Arc<NumberField>,
    a: BigRational,
    b: BigRational,
    c: BigRational,
    l: UniPoly,
    m: UniPoly,
    n: UniPoly,
}

impl CubicInput {
    /// Rejects reducible `L` — a rational λ belongs to a different (and
    /// classical) story, not this construction.
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        let l = UniPoly::new(vec![-c.clone(), b.clone(), -a.clone(), BigRational::one()]);
        let field = NumberField::new(l.clone())?;
        let m = build_m(&a, &b, &c);
        let n = l.mul(&m).mul(&m.sub(&l));
        assert_eq!(n.degree(), Some(11), "N = L·M·(M−L) must have degree 11");
        Ok(CubicInput {
            field,
            a,
            b,
            c,
            l,
            m,
            n,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coefficients(&self) -> (&BigRational, &BigRational, &BigRational) {
        (&self.a, &self.b, &self.c)
    }

    pub fn l_poly(&self) -> &UniPoly {
        &self.l
    }

    pub fn m_poly(&self) -> &UniPoly {
        &self.m
    }

    pub fn n_poly(&self) -> &UniPoly {
        &self.n
    }

    /// The curve `y² = x(x−1)(x−λ)` over `K`.
    pub fn curve(&self) -> EllipticCurve {
        EllipticCurve::legendre(self.field.generator())
            .expect("an irreducible λ is neither 0 nor 1")
    }

    /// Expands `((b − t²)/2 + (t − a)λ + λ²)²` in `K[t]` (reducing powers
    /// of λ through `λ³ = aλ² − bλ + c`) and compares it with
    /// `M(t) − L(t)λ` coefficient by coefficient.
    ///
    /// The identity is a theorem; a `false` return would indicate an
    /// implementation bug, which is why the test suites run this on
    /// randomized instances.
    pub fn verify_identity(&self) -> bool {
        let half = rat(1, 2);
        // bracket components by λ-degree: (b − t²)/2, (t − a), 1
        let d0 = UniPoly::new(vec![&self.b * &half, BigRational::zero(), -half]);
        let d1 = UniPoly::new(vec![-self.a.clone(), BigRational::one()]);
        let d2 = UniPoly::one();
        let lhs = lambda_square(&[d0, d1, d2], &self.a, &self.b, &self.c);
        let rhs = [self.m.clone(), self.l.neg(), UniPoly::zero()];
        lhs == rhs
    }

    /// Forges the point at `t₀`, asserting the on-curve identity exactly
    /// and probing torsion up to `torsion_bound`.
    pub fn forge(&self, t0: &BigRational, torsion_bound: u32) -> ForgeOutcome {
        let l0 = self.l.eval(t0);
        assert!(!l0.is_zero(), "irreducible L has no rational roots");
        let n0 = self.n.eval(t0);
        if n0.is_zero() {
            return Err(SkipReason::ZeroDiscriminant);
        }
        let sf = crate::squarefree::rational_squarefree_part(&n0).expect("n0 is nonzero");
        let (delta, k) = split_square_part(&n0).expect("n0 is nonzero");
        let x = self.m.eval(t0) / &l0;
        // bracket value (b − t₀²)/2 + (t₀ − a)λ + λ² in K
        let bracket = self.field.from_coords(vec![
            (&self.b - t0 * t0) * rat(1, 2),
            t0 - &self.a,
            BigRational::one(),
        ]);
        let y_radical = bracket.scale(&(&k / (&l0 * &l0)));
        let point = CurvePoint::affine(
            QuadExtElement::from_base(self.field.from_rat(x), delta.clone()),
            QuadExtElement::new(self.field.zero(), y_radical, delta.clone()),
        );
        let curve = self.curve();
        assert!(
            curve.contains(&point).expect("point fields are compatible"),
            "forged cubic point must satisfy y² = x(x−1)(x−λ)"
        );
        let verdict = curve
            .torsion_probe(&point, torsion_bound)
            .expect("point is on the curve");
        Ok(ForgedPoint {
            point,
            delta,
            delta_certainty: sf.certainty,
            construction: ConstructionKind::Cubic,
            params: SpecializationParams::CubicParam { t0: t0.clone() },
            torsion_verdict: verdict,
        })
    }
}

/// `M(t) = (t⁴ − 2bt² + 8ct + b² − 4ac)/4`.
fn build_m(a: &BigRational, b: &BigRational, c: &BigRational) -> UniPoly {
    let quarter = rat(1, 4);
    UniPoly::new(vec![
        (b * b - rat_int(4) * a * c) * &quarter,
        rat_int(2) * c,
        -(b * rat(1, 2)),
        BigRational::zero(),
        quarter,
    ])
}

/// Squares a λ-quadratic `d₀ + d₁λ + d₂λ²` with `UniPoly` components,
/// reducing `λ³ = aλ² − bλ + c` and `λ⁴ = (a²−b)λ² + (c−ab)λ + ac`.
fn lambda_square(
    d: &[UniPoly; 3],
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> [UniPoly; 3] {
    let mut conv: Vec<UniPoly> = vec![UniPoly::zero(); 5];
    for i in 0..3 {
        for j in 0..3 {
            conv[i + j] = conv[i + j].add(&d[i].mul(&d[j]));
        }
    }
    // λ³ row and λ⁴ row in the power basis
    let row3 = [c.clone(), -b.clone(), a.clone()];
    let row4 = [a * c, c - &(a * b), a * a - b];
    let mut out = [conv[0].clone(), conv[1].clone(), conv[2].clone()];
    for (pow, row) in [(3usize, row3), (4usize, row4)] {
        for (idx, coeff) in row.iter().enumerate() {
            out[idx] = out[idx].add(&conv[pow].scale(coeff));
        }
    }
    out
}

/// Parameter ordering for certificate searches: positive integers first
/// (`1, …, H` — the small discriminants in practice), then `0` and the
/// negative integers, then fractional parameters by increasing height.
pub fn parameter_candidates(max_height: u32) -> Vec<BigRational> {
    let h = i64::from(max_height);
    let mut out: Vec<BigRational> = (1..=h).map(rat_int).collect();
    out.push(rat_int(0));
    out.extend((1..=h).map(|n| rat_int(-n)));
    for height in 2..=h {
        for den in 2..=height {
            for num in -height..=height {
                if num.abs().max(den) != height {
                    continue;
                }
                if num.unsigned_abs().gcd(&den.unsigned_abs()) != 1 {
                    continue;
                }
                out.push(rat(num, den));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::elliptic::TorsionVerdict;
    use crate::Error;
    use rand::Rng;
    use rand::SeedableRng;

    fn cbrt2() -> CubicInput {
        // L = t³ − 2
        CubicInput::new(rat_int(0), rat_int(0), rat_int(2)).unwrap()
    }

    #[test]
    fn reducible_l_rejected() {
        // t³ − 1 has the rational root 1
        assert!(matches!(
            CubicInput::new(rat_int(0), rat_int(0), rat_int(1)),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn m_polynomial_examples() {
        // L = t³ − t − 1 (a = 0, b = −1, c = 1): M = (t⁴ + 2t² + 8t + 1)/4
        let input = CubicInput::new(rat_int(0), rat_int(-1), rat_int(1)).unwrap();
        let expected = UniPoly::new(vec![rat(1, 4), rat_int(2), rat(1, 2), rat_int(0), rat(1, 4)]);
        assert_eq!(*input.m_poly(), expected);
        // L = t³ − 2: M = (t⁴ + 16t)/4
        let input = cbrt2();
        let expected = UniPoly::new(vec![
            rat_int(0),
            rat_int(4),
            rat_int(0),
            rat_int(0),
            rat(1, 4),
        ]);
        assert_eq!(*input.m_poly(), expected);
        // generic constant coefficient (b² − 4ac)/4
        let input = CubicInput::new(rat_int(1), rat_int(4), rat_int(1)).unwrap();
        assert_eq!(
            input.m_poly().coeff(0),
            (rat_int(16) - rat_int(4)) / rat_int(4)
        );
    }

    #[test]
    fn n_polynomial_values() {
        let input = cbrt2();
        assert_eq!(input.n_poly().degree(), Some(11));
        // N(1) = L(1)·M(1)·(M−L)(1) = (−1)(17/4)(21/4) = −357/16
        assert_eq!(input.n_poly().eval(&rat_int(1)), rat(-357, 16));
        // N(2) = 6·12·6 = 432
        assert_eq!(input.n_poly().eval(&rat_int(2)), rat_int(432));
        // N has odd degree, hence is never a square
        assert!(input.n_poly().square_root().is_none());
    }

    #[test]
    fn identity_on_named_instances() {
        assert!(cbrt2().verify_identity());
        assert!(CubicInput::new(rat_int(0), rat_int(-1), rat_int(1))
            .unwrap()
            .verify_identity());
    }

    #[test]
    fn identity_on_random_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 100 {
            let a = rat(rng.gen_range(-10i64..=10), rng.gen_range(1i64..=10));
            let b = rat(rng.gen_range(-10i64..=10), rng.gen_range(1i64..=10));
            let c = rat(rng.gen_range(-10i64..=10), rng.gen_range(1i64..=10));
            let Ok(input) = CubicInput::new(a, b, c) else {
                continue;
            };
            assert!(
                input.verify_identity(),
                "identity failed for {:?}",
                input.coefficients()
            );
            done += 1;
        }
    }

    #[test]
    fn forge_golden_values() {
        let input = cbrt2();
        // t₀ = 1: x = M(1)/L(1) = −17/4, δ = squarefree part of −357/16
        let forged = input.forge(&rat_int(1), 24).unwrap();
        let (x, _) = forged.point.coordinates().unwrap();
        assert_eq!(x.base().as_rational().unwrap(), rat(-17, 4));
        assert_eq!(forged.delta, BigInt::from(-357));
        assert_eq!(forged.torsion_verdict, TorsionVerdict::NoTorsionUpTo(24));
        // t₀ = 2: δ = squarefree part of 432 = 3·12²
        let forged = input.forge(&rat_int(2), 24).unwrap();
        assert_eq!(forged.delta, BigInt::from(3));
        // t₀ = 3: N(3) = 93525/16, δ = 3741
        assert_eq!(input.n_poly().eval(&rat_int(3)), rat(93525, 16));
        let forged = input.forge(&rat_int(3), 24).unwrap();
        assert_eq!(forged.delta, BigInt::from(3741));
    }

    #[test]
    fn forge_skips_vanishing_n() {
        // a = 1, b = 2, c = 1: b² = 4ac, so M(0) = 0 and N(0) = 0
        let input = CubicInput::new(rat_int(1), rat_int(2), rat_int(1)).unwrap();
        assert!(input.m_poly().eval(&rat_int(0)).is_zero());
        assert_eq!(
            input.forge(&rat_int(0), 24).unwrap_err(),
            SkipReason::ZeroDiscriminant
        );
    }

    #[test]
    fn forged_points_from_distinct_t0_land_in_distinct_fields() {
        let input = cbrt2();
        let deltas: Vec<BigInt> = [1i64, 2, 3]
            .iter()
            .map(|&t| input.forge(&rat_int(t), 24).unwrap().delta)
            .collect();
        assert_eq!(
            deltas,
            vec![BigInt::from(-357), BigInt::from(3), BigInt::from(3741)]
        );
    }

    #[test]
    fn parameter_ordering() {
        let c = parameter_candidates(3);
        let head: Vec<BigRational> = c[..7].to_vec();
        assert_eq!(
            head,
            vec![
                rat_int(1),
                rat_int(2),
                rat_int(3),
                rat_int(0),
                rat_int(-1),
                rat_int(-2),
                rat_int(-3),
            ]
        );
        assert!(c.contains(&rat(1, 2)));
        assert!(c.contains(&rat(-2, 3)));
    }
}
