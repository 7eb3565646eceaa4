//! Point construction for curves `y² = x³ + αx + β` over a quadratic field
//! `K = Q(√m)`.
//!
//! Write `α = a + c√m` and `β = b + d√m` with `c, d ≠ 0` (the normalization
//! step arranges this by rescaling with a suitable `γ ∈ K`, an isomorphism
//! of the curve over `K`). For `x₁ = −d/c` the value `P(x₁)` is rational,
//! so `(x₁, √P(x₁))` lies on the curve over `K(√P(x₁))`.
//!
//! The same trick applies to the whole twist family: for `γ = u + v√m`,
//! substituting `α ↦ γ⁴α`, `β ↦ γ⁶β` and expanding in `(u, v)` gives
//!
//! ```text
//! γ⁴α = T₂(u,v) + T₁(u,v)√m        (degree 4)
//! γ⁶β = S₂(u,v) + S₁(u,v)√m        (degree 6)
//! ```
//!
//! with the swap–scale relations `Tᵢ(mu,v) = m²Tᵢ(v,u)` and
//! `Sᵢ(mu,v) = m³Sᵢ(v,u)`. Setting `x_γ = −S₁/T₁` kills the `√m`-part of
//! `P_γ(x_γ)`, whose rational value `w` has a squarefree part `δ`, and
//!
//! ```text
//! ( γ⁻²·x_γ , γ⁻³·√w )
//! ```
//!
//! is an exact point of the *original* curve with coordinates in `K(√δ)`.
//! Clearing denominators, `w = Q(u,v)/T₁(u,v)⁴` where
//!
//! ```text
//! Q = −T₁·(S₁³ + S₁T₁²T₂ − S₂T₁³)
//! ```
//!
//! is homogeneous of degree 22 and satisfies `Q(mu,v) = m¹¹Q(v,u)`. Its two
//! leading coefficients have closed forms (`A₀`, `A₁` below) which cannot
//! vanish simultaneously, so `Q` is never identically zero and the family
//! genuinely varies. Every one of these identities is asserted at runtime;
//! they are cheap and exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;

use crate::certificate::{
    ConstructionKind, ForgeOutcome, ForgedPoint, SkipReason, SpecializationParams,
};
use crate::elliptic::{CurvePoint, EllipticCurve};
use crate::number_field::{NFElement, NumberField, QuadExtElement};
use crate::poly::BiHomPoly;
use crate::rational::rat_int;
use crate::squarefree::{split_square_part, squarefree_part};
use crate::{Error, Result};

/// A validated curve `y² = x³ + (a + c√m)x + (b + d√m)` with `c, d ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadCurveInput {
    field: Arc<NumberField>,
    m: BigInt,
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

impl QuadCurveInput {
    /// Validates `m` squarefree (≠ 0, 1), `c, d ≠ 0` and the curve
    /// nonsingular. With `c, d ≠ 0` neither `α` nor `β` is zero, so the
    /// j-invariant is automatically neither 0 nor 1728.
    pub fn new(
        m: BigInt,
        a: BigRational,
        b: BigRational,
        c: BigRational,
        d: BigRational,
    ) -> Result<Self> {
        check_twist_parameter(&m)?;
        if c.is_zero() || d.is_zero() {
            return Err(Error::BadCurveDescription(
                "c and d must be nonzero; use normalization for rational α or β".into(),
            ));
        }
        let field = NumberField::quadratic(&m)?;
        let input = QuadCurveInput { field, m, a, b, c, d };
        if input.curve_discriminant_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(input)
    }

    /// Brings a curve with `α` or `β` rational into the valid shape by
    /// searching `γ = u + v√m` over increasing height until `γ⁴α` and
    /// `γ⁶β` both acquire a nonzero `√m`-part, then rescaling. Returns the
    /// rescaled input and the `γ` used (`None` when no rescaling happened).
    ///
    /// `α = 0` or `β = 0` (j-invariant 0 or 1728) is rejected: no twist can
    /// repair that.
    pub fn normalize(
        m: BigInt,
        alpha: &NFElement,
        beta: &NFElement,
    ) -> Result<(Self, Option<(BigRational, BigRational)>)> {
        check_twist_parameter(&m)?;
        let field = NumberField::quadratic(&m)?;
        if alpha.field() != &field || beta.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::ForbiddenJInvariant);
        }
        // Δ = −16(4α³ + 27β²)
        let disc = alpha
            .mul(alpha)
            .mul(alpha)
            .scale(&rat_int(4))
            .add(&beta.mul(beta).scale(&rat_int(27)));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        let (a, c) = alpha.quadratic_parts()?;
        let (b, d) = beta.quadratic_parts()?;
        if !c.is_zero() && !d.is_zero() {
            return Ok((QuadCurveInput { field, m, a, b, c, d }, None));
        }
        // a nonzero polynomial in (u, v) vanishes on few integer points,
        // so the search below terminates almost immediately
        for height in 1i64..=64 {
            for v in -height..=height {
                for u in -height..=height {
                    if u.abs().max(v.abs()) != height || (u == 0 && v == 0) {
                        continue;
                    }
                    let gamma = field.from_coords(vec![rat_int(u), rat_int(v)]);
                    let alpha_scaled = gamma.pow(4).unwrap().mul(alpha);
                    let beta_scaled = gamma.pow(6).unwrap().mul(beta);
                    let (a2, c2) = alpha_scaled.quadratic_parts()?;
                    let (b2, d2) = beta_scaled.quadratic_parts()?;
                    if !c2.is_zero() && !d2.is_zero() {
                        let input = QuadCurveInput {
                            field,
                            m,
                            a: a2,
                            b: b2,
                            c: c2,
                            d: d2,
                        };
                        debug_assert!(!input.curve_discriminant_zero());
                        return Ok((input, Some((rat_int(u), rat_int(v)))));
                    }
                }
            }
        }
        unreachable!("normalization search cannot exhaust: T1·S1 is a nonzero polynomial")
    }

    fn curve_discriminant_zero(&self) -> bool {
        let alpha = self.alpha();
        let beta = self.beta();
        alpha
            .mul(&alpha)
            .mul(&alpha)
            .scale(&rat_int(4))
            .add(&beta.mul(&beta).scale(&rat_int(27)))
            .is_zero()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn parts(&self) -> (&BigRational, &BigRational, &BigRational, &BigRational) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn alpha(&self) -> NFElement {
        self.field.from_coords(vec![self.a.clone(), self.c.clone()])
    }

    pub fn beta(&self) -> NFElement {
        self.field.from_coords(vec![self.b.clone(), self.d.clone()])
    }

    pub fn curve(&self) -> EllipticCurve {
        EllipticCurve::short_weierstrass(self.alpha(), self.beta())
            .expect("nonsingularity was checked at construction")
    }

    /// The base specialization `x₁ = −d/c`; `P(x₁)` is rational because the
    /// `√m`-part of `P(x₁)` is `c·x₁ + d = 0` by choice of `x₁`.
    pub fn base_x(&self) -> BigRational {
        let x1 = -(&self.d / &self.c);
        debug_assert!((&self.c * &x1 + &self.d).is_zero());
        x1
    }
}

fn check_twist_parameter(m: &BigInt) -> Result<()> {
    if m.is_zero() || m.is_one() {
        return Err(Error::NotSquarefree(m.clone()));
    }
    if squarefree_part(m)?.delta != *m {
        return Err(Error::NotSquarefree(m.clone()));
    }
    Ok(())
}

/// The symbolic twist family of a [`QuadCurveInput`]: the four coefficient
/// polynomials and the degree-22 specialization polynomial `Q`.
#[derive(Debug, Clone)]
pub struct TwistData {
    input: QuadCurveInput,
    t1: BiHomPoly,
    t2: BiHomPoly,
    s1: BiHomPoly,
    s2: BiHomPoly,
    q: BiHomPoly,
}

impl TwistData {
    /// Expands `γ⁴α` and `γ⁶β` symbolically and assembles `Q`. All the
    /// structural identities are asserted here; failures would mean an
    /// expansion bug, not bad input.
    pub fn new(input: &QuadCurveInput) -> Result<Self> {
        let m_rat = BigRational::from_integer(input.m.clone());
        // γ = u + v√m: rational part u, radical part v
        let a2 = BiHomPoly::new(
            2,
            vec![m_rat.clone(), BigRational::zero(), BigRational::one()],
        ); // u² + m v²
        let b2 = BiHomPoly::from_ints(2, &[0, 2, 0]); // 2uv
        let a4 = a2.mul(&a2).add(&b2.mul(&b2).scale(&m_rat));
        let b4 = a2.mul(&b2).scale(&rat_int(2));
        let a6 = a4.mul(&a2).add(&b4.mul(&b2).scale(&m_rat));
        let b6 = a4.mul(&b2).add(&b4.mul(&a2));
        // γ⁴(a + c√m) = (aA₄ + mcB₄) + (cA₄ + aB₄)√m, and similarly γ⁶β
        let (a, b, c, d) = input.parts();
        let t1 = a4.scale(c).add(&b4.scale(a));
        let t2 = a4.scale(a).add(&b4.scale(c).scale(&m_rat));
        let s1 = a6.scale(d).add(&b6.scale(b));
        let s2 = a6.scale(b).add(&b6.scale(d).scale(&m_rat));
        assert_eq!(
            (t1.degree(), t2.degree(), s1.degree(), s2.degree()),
            (4, 4, 6, 6)
        );
        assert!(t1.twist_symmetric(&input.m, 2), "T1 swap-scale identity failed");
        assert!(t2.twist_symmetric(&input.m, 2), "T2 swap-scale identity failed");
        assert!(s1.twist_symmetric(&input.m, 3), "S1 swap-scale identity failed");
        assert!(s2.twist_symmetric(&input.m, 3), "S2 swap-scale identity failed");

        // Q = −T₁(S₁³ + S₁T₁²T₂ − S₂T₁³), homogeneous of degree 22
        let t1sq = t1.mul(&t1);
        let inner = s1
            .mul(&s1)
            .mul(&s1)
            .add(&s1.mul(&t1sq).mul(&t2))
            .sub(&s2.mul(&t1sq).mul(&t1));
        let q = t1.mul(&inner).neg();
        assert_eq!(q.degree(), 22);
        assert!(q.twist_symmetric(&input.m, 11), "Q swap-scale identity failed");
        if q.is_zero() {
            return Err(Error::DegenerateConstruction);
        }
        let data = TwistData {
            input: input.clone(),
            t1,
            t2,
            s1,
            s2,
            q,
        };
        // the closed forms for the two leading coefficients must agree with Q
        let (a0, a1) = data.leading_coefficients();
        assert_eq!(data.q.coeff(22), a0, "u^22 coefficient disagrees with closed form");
        assert_eq!(data.q.coeff(21), a1, "u^21 v coefficient disagrees with closed form");
        Ok(data)
    }

    pub fn input(&self) -> &QuadCurveInput {
        &self.input
    }

    pub fn twist_polys(&self) -> (&BiHomPoly, &BiHomPoly, &BiHomPoly, &BiHomPoly) {
        (&self.t1, &self.t2, &self.s1, &self.s2)
    }

    pub fn q_poly(&self) -> &BiHomPoly {
        &self.q
    }

    /// Closed forms of the `u²²` and `u²¹v` coefficients of `Q`:
    ///
    /// ```text
    /// A₀ = c(−d³ − adc² + bc³)
    /// A₁ = 2(−6a²dc² − 2ad³ + 5abc³ + mc⁴d − 9cd²b)
    /// ```
    ///
    /// Eliminating `a` from `A₀ = A₁ = 0` forces
    /// `−b²c⁶ − 4c³d³b − 4d⁶ + mc⁶d² = 0`, whose discriminant in `b` is
    /// `m·c¹²d²` — not a rational square since `m` is squarefree and ≠ 1.
    /// So with `c, d ≠ 0` the two coefficients never vanish together.
    pub fn leading_coefficients(&self) -> (BigRational, BigRational) {
        let (a, b, c, d) = self.input.parts();
        let m = BigRational::from_integer(self.input.m.clone());
        let a0 = c * (-(d * d * d) - a * d * c * c + b * c * c * c);
        let a1 = rat_int(2)
            * (rat_int(-6) * a * a * d * c * c - rat_int(2) * a * d * d * d
                + rat_int(5) * a * b * c * c * c
                + &m * c * c * c * c * d
                - rat_int(9) * c * d * d * b);
        (a0, a1)
    }

    /// The specialized abscissa `x_γ = −S₁(u,v)/T₁(u,v)`.
    pub fn x_gamma(&self, u: &BigRational, v: &BigRational) -> Result<BigRational> {
        let t1v = self.t1.eval(u, v);
        if t1v.is_zero() {
            return Err(Error::DegenerateSpecialization);
        }
        Ok(-(self.s1.eval(u, v) / t1v))
    }

    /// Forges the point `(γ⁻²x_γ, γ⁻³√w)` for `γ = u + v√m`, verifying the
    /// whole chain of identities and probing torsion up to `torsion_bound`.
    pub fn forge(&self, u: &BigRational, v: &BigRational, torsion_bound: u32) -> ForgeOutcome {
        if u.is_zero() && v.is_zero() {
            return Err(SkipReason::ZeroGamma);
        }
        let t1v = self.t1.eval(u, v);
        if t1v.is_zero() {
            return Err(SkipReason::VanishingTwistDenominator);
        }
        let x_gamma = -(self.s1.eval(u, v) / &t1v);
        // the √m-part of P_γ(x_γ) is I(x_γ) = x_γT₁ + S₁ = 0 by construction
        let i_val = &x_gamma * &t1v + self.s1.eval(u, v);
        assert!(i_val.is_zero(), "I(x_gamma) must vanish");
        let w = &x_gamma * &x_gamma * &x_gamma
            + self.t2.eval(u, v) * &x_gamma
            + self.s2.eval(u, v);
        // cross-check against the cleared-denominator polynomial
        let t1v4 = &t1v * &t1v * &t1v * &t1v;
        assert_eq!(w, self.q.eval(u, v) / t1v4, "w must equal Q/T1^4");
        if w.is_zero() {
            return Err(SkipReason::ZeroDiscriminant);
        }
        let sf = crate::squarefree::rational_squarefree_part(&w).expect("w is nonzero");
        let (delta, k) = split_square_part(&w).expect("w is nonzero");
        let field = self.input.field();
        let gamma = field.from_coords(vec![u.clone(), v.clone()]);
        let gamma_inv = gamma.inverse().expect("gamma is nonzero");
        let gamma_inv2 = gamma_inv.mul(&gamma_inv);
        let gamma_inv3 = gamma_inv2.mul(&gamma_inv);
        let x = gamma_inv2.scale(&x_gamma);
        let y_radical = gamma_inv3.scale(&k);
        let point = CurvePoint::affine(
            QuadExtElement::from_base(x, delta.clone()),
            QuadExtElement::new(field.zero(), y_radical, delta.clone()),
        );
        let curve = self.input.curve();
        assert!(
            curve.contains(&point).expect("point fields are compatible"),
            "forged point must lie on the original curve"
        );
        let verdict = curve
            .torsion_probe(&point, torsion_bound)
            .expect("point is on the curve");
        Ok(ForgedPoint {
            point,
            delta,
            delta_certainty: sf.certainty,
            construction: ConstructionKind::Quadratic,
            params: SpecializationParams::TwistGamma {
                u: u.clone(),
                v: v.clone(),
            },
            torsion_verdict: verdict,
        })
    }
}

/// Height-ordered primitive specializations `(u, v)`: `v ≥ 0`,
/// `gcd(u, v) = 1`, and `v = 0` only as `(1, 0)` (which reproduces the base
/// point). Proportional pairs forge the same point, so primitive pairs
/// cover everything; ordering is by height, then `v`, then `u`.
pub fn specialization_candidates(max_height: u32) -> Vec<(i64, i64)> {
    let h = i64::from(max_height);
    let mut out = Vec::new();
    for height in 1..=h {
        for v in 0..=height {
            for u in -height..=height {
                if u.abs().max(v) != height {
                    continue;
                }
                if v == 0 {
                    if u == 1 {
                        out.push((1, 0));
                    }
                    continue;
                }
                if u.unsigned_abs().gcd(&v.unsigned_abs()) != 1 {
                    continue;
                }
                out.push((u, v));
            }
        }
    }
    out
}
