//! Independence certificates: self-contained, re-checkable evidence that a
//! list of constructed points lives over pairwise-distinct quadratic
//! extensions and shows no small torsion.
//!
//! A certificate never claims more than what is checkable from its own
//! bytes: each point carries its exact coordinates, the squarefree
//! discriminant `δ` of the extension `K(√δ)` it lives in, and a bounded
//! torsion probe (`no torsion of order ≤ B` — not "non-torsion"). Distinct
//! squarefree `δ` give distinct quadratic fields; over a quadratic base
//! `K = Q(√m)` the extensions `K(√δ)` and `K(√(mδ))` coincide, so
//! deduplication there works on the field class `{δ, mδ mod squares}`
//! rather than on the raw `δ`. Together with linear disjointness of
//! distinct quadratic extensions, this is precisely the evidence that makes
//! the listed points independent modulo the recorded torsion bound.
//!
//! [`verify_certificate_json`] re-derives everything — on-curve equations,
//! squarefreeness, distinctness, torsion probes — from the serialized JSON
//! alone, with no access to how the points were found. Corrupting any
//! coordinate, any `δ`, or any verdict makes it reject.
//!
//! Serialization is deterministic: fixed key order (alphabetical), fixed
//! rational format `"num/den"`, integers as plain JSON numbers. Identical
//! searches produce byte-identical certificates regardless of the worker
//! count used to evaluate candidates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;
use std::fmt;

use crate::cubic::CubicInput;
use crate::elliptic::{CurvePoint, EllipticCurve, TorsionVerdict};
use crate::number_field::{NFElement, NumberField, QuadExtElement};
use crate::quad::{QuadCurveInput, TwistData};
use crate::quartic::QuarticInput;
use crate::rational::{format_rat, parse_rat, rat_int};
use crate::squarefree::{is_squarefree, Certainty};
use crate::{Error, Result};

/// Which construction produced a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    Quadratic,
    Cubic,
    Quartic,
}

impl ConstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionKind::Quadratic => "quadratic",
            ConstructionKind::Cubic => "cubic",
            ConstructionKind::Quartic => "quartic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "quadratic" => Some(ConstructionKind::Quadratic),
            "cubic" => Some(ConstructionKind::Cubic),
            "quartic" => Some(ConstructionKind::Quartic),
            _ => None,
        }
    }
}

/// The specialization data that produced a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecializationParams {
    /// `γ = u + v√m` for the quadratic construction
    TwistGamma { u: BigRational, v: BigRational },
    /// the rational parameter `t₀` of the cubic construction
    CubicParam { t0: BigRational },
    /// a rational point `(u, v)` on the seed curve `v² = P(u)`
    QuarticSeed { u: BigRational, v: BigRational },
}

/// Reasons a candidate specialization produces no point at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    ZeroGamma,
    VanishingTwistDenominator,
    ZeroDiscriminant,
    VanishingDenominatorB,
    ZeroSeedOrdinate,
}

impl SkipReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::ZeroGamma => "zero_gamma",
            SkipReason::VanishingTwistDenominator => "vanishing_twist_denominator",
            SkipReason::ZeroDiscriminant => "zero_discriminant",
            SkipReason::VanishingDenominatorB => "vanishing_denominator_b",
            SkipReason::ZeroSeedOrdinate => "zero_seed_ordinate",
        }
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// A point produced by one of the constructions, with everything needed to
/// re-check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForgedPoint {
    pub point: CurvePoint,
    /// squarefree discriminant of the quadratic extension the point lives in
    pub delta: BigInt,
    /// whether the factorization behind `delta` was fully proven
    pub delta_certainty: Certainty,
    pub construction: ConstructionKind,
    pub params: SpecializationParams,
    pub torsion_verdict: TorsionVerdict,
}

/// Either a forged point or a machine-readable reason the candidate was
/// structurally degenerate.
pub type ForgeOutcome = std::result::Result<ForgedPoint, SkipReason>;

/// Why a candidate did not make it into the accepted list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    Skip(SkipReason),
    TorsionOrder(u32),
    DuplicateField,
    BaseFieldPoint,
}

impl RejectReason {
    pub fn code(&self) -> String {
        match self {
            RejectReason::Skip(s) => format!("skip:{}", s.as_str()),
            RejectReason::TorsionOrder(n) => format!("torsion_order:{n}"),
            RejectReason::DuplicateField => "duplicate_field".into(),
            RejectReason::BaseFieldPoint => "base_field_point".into(),
        }
    }

    fn parse(s: &str) -> Option<Self> {
        if let Some(rest) = s.strip_prefix("skip:") {
            let skip = match rest {
                "zero_gamma" => SkipReason::ZeroGamma,
                "vanishing_twist_denominator" => SkipReason::VanishingTwistDenominator,
                "zero_discriminant" => SkipReason::ZeroDiscriminant,
                "vanishing_denominator_b" => SkipReason::VanishingDenominatorB,
                "zero_seed_ordinate" => SkipReason::ZeroSeedOrdinate,
                _ => return None,
            };
            return Some(RejectReason::Skip(skip));
        }
        if let Some(rest) = s.strip_prefix("torsion_order:") {
            return rest.parse().ok().map(RejectReason::TorsionOrder);
        }
        match s {
            "duplicate_field" => Some(RejectReason::DuplicateField),
            "base_field_point" => Some(RejectReason::BaseFieldPoint),
            _ => None,
        }
    }
}

/// A rejected candidate with its reason, kept for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedCandidate {
    pub params: SpecializationParams,
    pub reason: RejectReason,
}

/// The curve a certificate talks about, in the exact shape it was searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveDescription {
    Quadratic {
        m: BigInt,
        a: BigRational,
        b: BigRational,
        c: BigRational,
        d: BigRational,
        /// the `γ = u + v√m` used to normalize the original input, if any
        normalization: Option<(BigRational, BigRational)>,
    },
    Cubic {
        a: BigRational,
        b: BigRational,
        c: BigRational,
    },
    Quartic {
        p: BigRational,
        q: BigRational,
        r: BigRational,
        s: BigRational,
    },
}

impl CurveDescription {
    pub fn kind(&self) -> ConstructionKind {
        match self {
            CurveDescription::Quadratic { .. } => ConstructionKind::Quadratic,
            CurveDescription::Cubic { .. } => ConstructionKind::Cubic,
            CurveDescription::Quartic { .. } => ConstructionKind::Quartic,
        }
    }

    /// Rebuilds the curve (validating the description along the way).
    pub fn build_curve(&self) -> Result<EllipticCurve> {
        match self {
            CurveDescription::Quadratic { m, a, b, c, d, .. } => Ok(QuadCurveInput::new(
                m.clone(),
                a.clone(),
                b.clone(),
                c.clone(),
                d.clone(),
            )?
            .curve()),
            CurveDescription::Cubic { a, b, c } => {
                Ok(CubicInput::new(a.clone(), b.clone(), c.clone())?.curve())
            }
            CurveDescription::Quartic { p, q, r, s } => {
                Ok(QuarticInput::new(p.clone(), q.clone(), r.clone(), s.clone())?.curve())
            }
        }
    }

    /// The twist parameter `m` when the base field is quadratic.
    fn twist_parameter(&self) -> Option<&BigInt> {
        match self {
            CurveDescription::Quadratic { m, .. } => Some(m),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CurveDescription::Quadratic {
                m,
                a,
                b,
                c,
                d,
                normalization,
            } => {
                let mut obj = Map::new();
                obj.insert("kind".into(), json!("quadratic"));
                obj.insert("m".into(), bigint_to_json(m));
                obj.insert("a".into(), json!(format_rat(a)));
                obj.insert("b".into(), json!(format_rat(b)));
                obj.insert("c".into(), json!(format_rat(c)));
                obj.insert("d".into(), json!(format_rat(d)));
                if let Some((u, v)) = normalization {
                    obj.insert(
                        "normalization".into(),
                        json!({"u": format_rat(u), "v": format_rat(v)}),
                    );
                }
                Value::Object(obj)
            }
            CurveDescription::Cubic { a, b, c } => json!({
                "kind": "cubic",
                "a": format_rat(a),
                "b": format_rat(b),
                "c": format_rat(c),
            }),
            CurveDescription::Quartic { p, q, r, s } => json!({
                "kind": "quartic",
                "p": format_rat(p),
                "q": format_rat(q),
                "r": format_rat(r),
                "s": format_rat(s),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::BadCurveDescription("curve must be an object".into()))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::BadCurveDescription("missing \"kind\"".into()))?;
        let get_rat = |key: &str| -> Result<BigRational> {
            let v = obj
                .get(key)
                .ok_or_else(|| Error::BadCurveDescription(format!("missing \"{key}\"")))?;
            match v {
                Value::String(s) => parse_rat(s),
                Value::Number(n) => parse_rat(&n.to_string()),
                _ => Err(Error::BadCurveDescription(format!(
                    "\"{key}\" must be a rational"
                ))),
            }
        };
        match kind {
            "quadratic" => {
                let m = json_to_bigint(obj.get("m").ok_or_else(|| {
                    Error::BadCurveDescription("missing \"m\"".into())
                })?)?;
                let normalization = match obj.get("normalization") {
                    None | Some(Value::Null) => None,
                    Some(Value::Object(nobj)) => {
                        let u = nobj
                            .get("u")
                            .and_then(Value::as_str)
                            .ok_or_else(|| Error::BadCurveDescription("bad normalization".into()))?;
                        let v = nobj
                            .get("v")
                            .and_then(Value::as_str)
                            .ok_or_else(|| Error::BadCurveDescription("bad normalization".into()))?;
                        Some((parse_rat(u)?, parse_rat(v)?))
                    }
                    Some(_) => {
                        return Err(Error::BadCurveDescription("bad normalization".into()))
                    }
                };
                Ok(CurveDescription::Quadratic {
                    m,
                    a: get_rat("a")?,
                    b: get_rat("b")?,
                    c: get_rat("c")?,
                    d: get_rat("d")?,
                    normalization,
                })
            }
            "cubic" => Ok(CurveDescription::Cubic {
                a: get_rat("a")?,
                b: get_rat("b")?,
                c: get_rat("c")?,
            }),
            "quartic" => Ok(CurveDescription::Quartic {
                p: get_rat("p")?,
                q: get_rat("q")?,
                r: get_rat("r")?,
                s: get_rat("s")?,
            }),
            other => Err(Error::BadCurveDescription(format!(
                "unknown curve kind {other:?}"
            ))),
        }
    }
}

/// Whether a search met its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateStatus {
    Complete,
    Partial,
}

impl CertificateStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateStatus::Complete => "complete",
            CertificateStatus::Partial => "partial",
        }
    }
}

/// The assembled certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCertificate {
    pub curve: CurveDescription,
    pub construction: ConstructionKind,
    pub torsion_bound: u32,
    pub target: usize,
    pub status: CertificateStatus,
    pub points: Vec<ForgedPoint>,
    pub rejected: Vec<RejectedCandidate>,
    /// always true for certificates built here; the verifier re-checks it
    pub distinct_deltas: bool,
}

/// Search limits for [`search_and_forge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub height: u32,
    pub torsion_bound: u32,
    /// worker threads for candidate evaluation; results are identical for
    /// any value
    pub jobs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            height: 12,
            torsion_bound: crate::elliptic::DEFAULT_TORSION_BOUND,
            jobs: 1,
        }
    }
}

/// The canonical key of the quadratic extension `K(√δ)` over the base
/// field. Over `K = Q(√m)` the extensions for `δ` and for the squarefree
/// part of `m·δ` coincide, so the key is the smaller of the two; the key 1
/// means the "extension" is `K` itself. Over cubic and quartic bases the
/// key is `δ` (for quartic `K` a coincidence `√δ ∈ K` is not decided here;
/// distinct squarefree `δ` remain the recorded evidence).
pub fn field_class_key(delta: &BigInt, twist_m: Option<&BigInt>) -> BigInt {
    let Some(m) = twist_m else {
        return delta.clone();
    };
    let g = delta.gcd(m);
    let partner: BigInt = (m / &g) * (delta / &g);
    let smaller_first = |x: &BigInt, y: &BigInt| {
        let key = |n: &BigInt| (n.abs(), n.is_negative());
        if key(x) <= key(y) {
            x.clone()
        } else {
            y.clone()
        }
    };
    smaller_first(delta, &partner)
}

struct Assembler {
    curve: EllipticCurve,
    twist_m: Option<BigInt>,
    torsion_bound: u32,
    target: usize,
    used_keys: BTreeSet<BigInt>,
    accepted: Vec<ForgedPoint>,
    rejected: Vec<RejectedCandidate>,
}

impl Assembler {
    fn new(
        curve: EllipticCurve,
        twist_m: Option<BigInt>,
        torsion_bound: u32,
        target: usize,
    ) -> Self {
        Assembler {
            curve,
            twist_m,
            torsion_bound,
            target,
            used_keys: BTreeSet::new(),
            accepted: Vec::new(),
            rejected: Vec::new(),
        }
    }

    fn done(&self) -> bool {
        self.accepted.len() >= self.target
    }

    /// Feeds one candidate outcome; returns `Err` only for hard errors
    /// (an off-curve point is never silently dropped).
    fn offer(&mut self, params: SpecializationParams, outcome: ForgeOutcome) -> Result<()> {
        let mut forged = match outcome {
            Err(skip) => {
                self.rejected.push(RejectedCandidate {
                    params,
                    reason: RejectReason::Skip(skip),
                });
                return Ok(());
            }
            Ok(f) => f,
        };
        if !self.curve.contains(&forged.point)? {
            return Err(Error::OffCurve);
        }
        // verdicts are recomputed, never trusted from the input
        forged.torsion_verdict = self
            .curve
            .torsion_probe(&forged.point, self.torsion_bound)?;
        if let TorsionVerdict::TorsionOrder(n) = forged.torsion_verdict {
            self.rejected.push(RejectedCandidate {
                params: forged.params,
                reason: RejectReason::TorsionOrder(n),
            });
            return Ok(());
        }
        let key = field_class_key(&forged.delta, self.twist_m.as_ref());
        if key.is_one() {
            self.rejected.push(RejectedCandidate {
                params: forged.params,
                reason: RejectReason::BaseFieldPoint,
            });
            return Ok(());
        }
        if !self.used_keys.insert(key) {
            self.rejected.push(RejectedCandidate {
                params: forged.params,
                reason: RejectReason::DuplicateField,
            });
            return Ok(());
        }
        self.accepted.push(forged);
        Ok(())
    }

    fn into_certificate(
        self,
        curve: CurveDescription,
        target: usize,
    ) -> IndependenceCertificate {
        let status = if self.accepted.len() >= target {
            CertificateStatus::Complete
        } else {
            CertificateStatus::Partial
        };
        IndependenceCertificate {
            construction: curve.kind(),
            curve,
            torsion_bound: self.torsion_bound,
            target,
            status,
            points: self.accepted,
            rejected: self.rejected,
            distinct_deltas: true,
        }
    }
}

/// Assembles a certificate from an explicit list of forged points: checks
/// every point against the curve (off-curve input is a hard error), keeps
/// those with no torsion up to `torsion_bound` and pairwise-distinct
/// extension fields, and records every rejection with its reason.
pub fn assemble(
    desc: &CurveDescription,
    points: Vec<ForgedPoint>,
    torsion_bound: u32,
) -> Result<IndependenceCertificate> {
    let curve = desc.build_curve()?;
    let twist_m = desc.twist_parameter().cloned();
    let target = points.len();
    let mut asm = Assembler::new(curve, twist_m, torsion_bound, usize::MAX);
    for forged in points {
        let params = forged.params.clone();
        asm.offer(params, Ok(forged))?;
    }
    Ok(asm.into_certificate(desc.clone(), target))
}

/// Searches specializations in deterministic height order, forging and
/// filtering until `target` points are accepted or the height limit is
/// exhausted (a partial certificate with explicit status, not an error).
///
/// Candidate evaluation is a pure map and runs on `limits.jobs` workers;
/// results are folded in candidate order, so the outcome is byte-identical
/// for every job count.
pub fn search_and_forge(
    desc: &CurveDescription,
    target: usize,
    limits: &SearchLimits,
) -> Result<IndependenceCertificate> {
    if target < 1 {
        return Err(Error::InvalidTarget);
    }
    if limits.height < 1 {
        return Err(Error::InvalidHeightBound);
    }
    let bound = limits.torsion_bound;
    match desc {
        CurveDescription::Quadratic {
            m,
            a,
            b,
            c,
            d,
            normalization,
        } => {
            // normalize if the description has a rational α or β
            let (input, gamma) = if c.is_zero() || d.is_zero() {
                let field = NumberField::quadratic(m)?;
                let alpha = field.from_coords(vec![a.clone(), c.clone()]);
                let beta = field.from_coords(vec![b.clone(), d.clone()]);
                QuadCurveInput::normalize(m.clone(), &alpha, &beta)?
            } else {
                (
                    QuadCurveInput::new(m.clone(), a.clone(), b.clone(), c.clone(), d.clone())?,
                    normalization.clone(),
                )
            };
            let (na, nb, nc, nd) = input.parts();
            let final_desc = CurveDescription::Quadratic {
                m: m.clone(),
                a: na.clone(),
                b: nb.clone(),
                c: nc.clone(),
                d: nd.clone(),
                normalization: gamma,
            };
            let data = TwistData::new(&input)?;
            let candidates: Vec<(BigRational, BigRational)> =
                crate::quad::specialization_candidates(limits.height)
                    .into_iter()
                    .map(|(u, v)| (rat_int(u), rat_int(v)))
                    .collect();
            run_search(
                desc_curve_and_m(&final_desc)?,
                final_desc,
                target,
                bound,
                limits.jobs,
                candidates,
                |(u, v)| {
                    (
                        SpecializationParams::TwistGamma {
                            u: u.clone(),
                            v: v.clone(),
                        },
                        data.forge(u, v, bound),
                    )
                },
            )
        }
        CurveDescription::Cubic { a, b, c } => {
            let input = CubicInput::new(a.clone(), b.clone(), c.clone())?;
            let candidates = crate::cubic::parameter_candidates(limits.height);
            run_search(
                desc_curve_and_m(desc)?,
                desc.clone(),
                target,
                bound,
                limits.jobs,
                candidates,
                |t0| {
                    (
                        SpecializationParams::CubicParam { t0: t0.clone() },
                        input.forge(t0, bound),
                    )
                },
            )
        }
        CurveDescription::Quartic { p, q, r, s } => {
            let input = QuarticInput::new(p.clone(), q.clone(), r.clone(), s.clone())?;
            let candidates = input.search_seeds(limits.height)?;
            run_search(
                desc_curve_and_m(desc)?,
                desc.clone(),
                target,
                bound,
                limits.jobs,
                candidates,
                |seed| {
                    (
                        SpecializationParams::QuarticSeed {
                            u: seed.u.clone(),
                            v: seed.v.clone(),
                        },
                        input.forge(seed, bound),
                    )
                },
            )
        }
    }
}

fn desc_curve_and_m(desc: &CurveDescription) -> Result<(EllipticCurve, Option<BigInt>)> {
    Ok((desc.build_curve()?, desc.twist_parameter().cloned()))
}

fn run_search<C, F>(
    curve_and_m: (EllipticCurve, Option<BigInt>),
    final_desc: CurveDescription,
    target: usize,
    bound: u32,
    jobs: usize,
    candidates: Vec<C>,
    eval: F,
) -> Result<IndependenceCertificate>
where
    C: Sync,
    F: Fn(&C) -> (SpecializationParams, ForgeOutcome) + Sync,
{
    let (curve, twist_m) = curve_and_m;
    let mut asm = Assembler::new(curve, twist_m, bound, target);
    const CHUNK: usize = 8;
    for chunk in candidates.chunks(CHUNK) {
        if asm.done() {
            break;
        }
        let results: Vec<(SpecializationParams, ForgeOutcome)> = if jobs > 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool construction");
            pool.install(|| chunk.par_iter().map(&eval).collect())
        } else {
            chunk.iter().map(&eval).collect()
        };
        for (params, outcome) in results {
            if asm.done() {
                break;
            }
            asm.offer(params, outcome)?;
        }
    }
    Ok(asm.into_certificate(final_desc, target))
}

// ---------------------------------------------------------------------------
// serialization

fn bigint_to_json(n: &BigInt) -> Value {
    let num: serde_json::Number = serde_json::from_str(&n.to_string())
        .expect("an integer literal is always a valid JSON number");
    Value::Number(num)
}

fn json_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            if s.contains(['.', 'e', 'E']) {
                return Err(Error::BadCertificate(format!("not an integer: {s}")));
            }
            s.parse()
                .map_err(|_| Error::BadCertificate(format!("bad integer: {s}")))
        }
        _ => Err(Error::BadCertificate("expected an integer".into())),
    }
}

fn nf_to_json(e: &NFElement) -> Value {
    Value::Array(e.coords().iter().map(|c| json!(format_rat(c))).collect())
}

fn quadext_to_json(e: &QuadExtElement) -> Value {
    json!({
        "base": nf_to_json(e.base()),
        "radical": nf_to_json(e.radical()),
    })
}

fn params_to_json(p: &SpecializationParams) -> Value {
    match p {
        SpecializationParams::TwistGamma { u, v } => {
            json!({"u": format_rat(u), "v": format_rat(v)})
        }
        SpecializationParams::CubicParam { t0 } => json!({"t0": format_rat(t0)}),
        SpecializationParams::QuarticSeed { u, v } => {
            json!({"u": format_rat(u), "v": format_rat(v)})
        }
    }
}

fn verdict_to_json(v: &TorsionVerdict) -> Value {
    match v {
        TorsionVerdict::NoTorsionUpTo(b) => json!({"no_torsion_up_to": b}),
        TorsionVerdict::TorsionOrder(n) => json!({"torsion_order": n}),
    }
}

impl IndependenceCertificate {
    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                let (x, y) = p
                    .point
                    .coordinates()
                    .expect("accepted points are always affine");
                json!({
                    "delta": bigint_to_json(&p.delta),
                    "delta_certainty": p.delta_certainty.as_str(),
                    "params": params_to_json(&p.params),
                    "verdict": verdict_to_json(&p.torsion_verdict),
                    "x": quadext_to_json(x),
                    "y": quadext_to_json(y),
                })
            })
            .collect();
        let rejected: Vec<Value> = self
            .rejected
            .iter()
            .map(|r| {
                json!({
                    "params": params_to_json(&r.params),
                    "reason": r.reason.code(),
                })
            })
            .collect();
        json!({
            "construction": self.construction.as_str(),
            "curve": self.curve.to_json(),
            "distinct_deltas": self.distinct_deltas,
            "points": points,
            "rejected": rejected,
            "status": self.status.as_str(),
            "target": self.target,
            "torsion_bound": self.torsion_bound,
        })
    }

    /// Deterministic single-document serialization (sorted keys, fixed
    /// formats); two identical searches give byte-identical output.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)
            .map_err(|e| Error::BadCertificate(format!("invalid JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::BadCertificate("certificate must be an object".into()))?;
        let curve = CurveDescription::from_json(
            obj.get("curve")
                .ok_or_else(|| Error::BadCertificate("missing \"curve\"".into()))?,
        )?;
        let construction = obj
            .get("construction")
            .and_then(Value::as_str)
            .and_then(ConstructionKind::parse)
            .ok_or_else(|| Error::BadCertificate("missing or bad \"construction\"".into()))?;
        let torsion_bound = obj
            .get("torsion_bound")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::BadCertificate("missing \"torsion_bound\"".into()))?
            as u32;
        let target = obj
            .get("target")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::BadCertificate("missing \"target\"".into()))?
            as usize;
        let status = match obj.get("status").and_then(Value::as_str) {
            Some("complete") => CertificateStatus::Complete,
            Some("partial") => CertificateStatus::Partial,
            _ => return Err(Error::BadCertificate("missing or bad \"status\"".into())),
        };
        let distinct_deltas = obj
            .get("distinct_deltas")
            .and_then(Value::as_bool)
            .ok_or_else(|| Error::BadCertificate("missing \"distinct_deltas\"".into()))?;
        let field = field_for(&curve)?;
        let points_json = obj
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadCertificate("missing \"points\"".into()))?;
        let mut points = Vec::with_capacity(points_json.len());
        for pv in points_json {
            points.push(parse_point(pv, &field, construction)?);
        }
        let rejected_json = obj
            .get("rejected")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadCertificate("missing \"rejected\"".into()))?;
        let mut rejected = Vec::with_capacity(rejected_json.len());
        for rv in rejected_json {
            let robj = rv
                .as_object()
                .ok_or_else(|| Error::BadCertificate("bad rejected entry".into()))?;
            let params = parse_params(
                robj.get("params")
                    .ok_or_else(|| Error::BadCertificate("rejected entry without params".into()))?,
                construction,
            )?;
            let reason = robj
                .get("reason")
                .and_then(Value::as_str)
                .and_then(RejectReason::parse)
                .ok_or_else(|| Error::BadCertificate("bad rejection reason".into()))?;
            rejected.push(RejectedCandidate { params, reason });
        }
        Ok(IndependenceCertificate {
            curve,
            construction,
            torsion_bound,
            target,
            status,
            points,
            rejected,
            distinct_deltas,
        })
    }
}

fn field_for(desc: &CurveDescription) -> Result<std::sync::Arc<NumberField>> {
    match desc {
        CurveDescription::Quadratic { m, .. } => NumberField::quadratic(m),
        CurveDescription::Cubic { a, b, c } => {
            Ok(CubicInput::new(a.clone(), b.clone(), c.clone())?.field().clone())
        }
        CurveDescription::Quartic { p, q, r, s } => Ok(QuarticInput::new(
            p.clone(),
            q.clone(),
            r.clone(),
            s.clone(),
        )?
        .field()
        .clone()),
    }
}

fn parse_rat_array(
    v: &Value,
    field: &std::sync::Arc<NumberField>,
) -> Result<NFElement> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::BadCertificate("coordinates must be an array".into()))?;
    if arr.len() != field.degree() {
        return Err(Error::BadCertificate(format!(
            "coordinate vector of length {} in a degree-{} field",
            arr.len(),
            field.degree()
        )));
    }
    let mut coords = Vec::with_capacity(arr.len());
    for c in arr {
        let s = c
            .as_str()
            .ok_or_else(|| Error::BadCertificate("coordinates must be rational strings".into()))?;
        coords.push(parse_rat(s)?);
    }
    Ok(field.from_coords(coords))
}

fn parse_quadext(
    v: &Value,
    field: &std::sync::Arc<NumberField>,
    delta: &BigInt,
) -> Result<QuadExtElement> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadCertificate("coordinate must be an object".into()))?;
    let base = parse_rat_array(
        obj.get("base")
            .ok_or_else(|| Error::BadCertificate("coordinate without \"base\"".into()))?,
        field,
    )?;
    let radical = parse_rat_array(
        obj.get("radical")
            .ok_or_else(|| Error::BadCertificate("coordinate without \"radical\"".into()))?,
        field,
    )?;
    Ok(QuadExtElement::new(base, radical, delta.clone()))
}

fn parse_params(v: &Value, kind: ConstructionKind) -> Result<SpecializationParams> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadCertificate("params must be an object".into()))?;
    let get = |key: &str| -> Result<BigRational> {
        let s = obj
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::BadCertificate(format!("params missing \"{key}\"")))?;
        parse_rat(s)
    };
    match kind {
        ConstructionKind::Quadratic => Ok(SpecializationParams::TwistGamma {
            u: get("u")?,
            v: get("v")?,
        }),
        ConstructionKind::Cubic => Ok(SpecializationParams::CubicParam { t0: get("t0")? }),
        ConstructionKind::Quartic => Ok(SpecializationParams::QuarticSeed {
            u: get("u")?,
            v: get("v")?,
        }),
    }
}

fn parse_verdict(v: &Value) -> Result<TorsionVerdict> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadCertificate("verdict must be an object".into()))?;
    if let Some(b) = obj.get("no_torsion_up_to").and_then(Value::as_u64) {
        return Ok(TorsionVerdict::NoTorsionUpTo(b as u32));
    }
    if let Some(n) = obj.get("torsion_order").and_then(Value::as_u64) {
        return Ok(TorsionVerdict::TorsionOrder(n as u32));
    }
    Err(Error::BadCertificate("unrecognized verdict".into()))
}

fn parse_point(
    v: &Value,
    field: &std::sync::Arc<NumberField>,
    kind: ConstructionKind,
) -> Result<ForgedPoint> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadCertificate("point must be an object".into()))?;
    let delta = json_to_bigint(
        obj.get("delta")
            .ok_or_else(|| Error::BadCertificate("point without \"delta\"".into()))?,
    )?;
    if delta.is_zero() {
        return Err(Error::BadCertificate("delta must be nonzero".into()));
    }
    let delta_certainty = obj
        .get("delta_certainty")
        .and_then(Value::as_str)
        .and_then(Certainty::parse)
        .ok_or_else(|| Error::BadCertificate("missing \"delta_certainty\"".into()))?;
    let x = parse_quadext(
        obj.get("x")
            .ok_or_else(|| Error::BadCertificate("point without \"x\"".into()))?,
        field,
        &delta,
    )?;
    let y = parse_quadext(
        obj.get("y")
            .ok_or_else(|| Error::BadCertificate("point without \"y\"".into()))?,
        field,
        &delta,
    )?;
    let params = parse_params(
        obj.get("params")
            .ok_or_else(|| Error::BadCertificate("point without \"params\"".into()))?,
        kind,
    )?;
    let torsion_verdict = parse_verdict(
        obj.get("verdict")
            .ok_or_else(|| Error::BadCertificate("point without \"verdict\"".into()))?,
    )?;
    Ok(ForgedPoint {
        point: CurvePoint::affine(x, y),
        delta,
        delta_certainty,
        construction: kind,
        params,
        torsion_verdict,
    })
}

// ---------------------------------------------------------------------------
// verification

/// Outcome of re-checking a serialized certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub accepted: bool,
    pub failures: Vec<String>,
}

/// Re-checks a certificate from its serialization alone: the curve is
/// rebuilt from the description, every point is checked against the curve
/// equation exactly, every `δ` is re-checked squarefree and the field
/// classes pairwise distinct, and every torsion verdict is re-probed.
pub fn verify_certificate_json(s: &str) -> Result<VerificationReport> {
    let cert = IndependenceCertificate::from_json_str(s)?;
    let mut failures = Vec::new();
    let curve = match cert.curve.build_curve() {
        Ok(c) => c,
        Err(e) => {
            return Ok(VerificationReport {
                accepted: false,
                failures: vec![format!("curve description invalid: {e}")],
            })
        }
    };
    if cert.construction != cert.curve.kind() {
        failures.push("construction tag does not match curve kind".into());
    }
    if !cert.distinct_deltas {
        failures.push("certificate does not claim distinct deltas".into());
    }
    let twist_m = cert.curve.twist_parameter().cloned();
    let mut seen = BTreeSet::new();
    for (i, p) in cert.points.iter().enumerate() {
        let label = format!("point #{i}");
        match is_squarefree(&p.delta) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{label}: delta {} is not squarefree", p.delta)),
            Err(e) => failures.push(format!("{label}: delta check failed: {e}")),
        }
        let key = field_class_key(&p.delta, twist_m.as_ref());
        if key.is_one() {
            failures.push(format!(
                "{label}: delta {} collapses into the base field",
                p.delta
            ));
        } else if !seen.insert(key) {
            failures.push(format!(
                "{label}: duplicate quadratic extension (delta {})",
                p.delta
            ));
        }
        match curve.contains(&p.point) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{label}: not on the curve")),
            Err(e) => failures.push(format!("{label}: curve check failed: {e}")),
        }
        match p.torsion_verdict {
            TorsionVerdict::NoTorsionUpTo(b) if b == cert.torsion_bound => {}
            _ => failures.push(format!(
                "{label}: verdict must be no-torsion at bound {}",
                cert.torsion_bound
            )),
        }
        if curve.contains(&p.point) == Ok(true) {
            match curve.torsion_probe(&p.point, cert.torsion_bound) {
                Ok(v) if v == p.torsion_verdict => {}
                Ok(v) => failures.push(format!(
                    "{label}: recorded verdict {:?} but probing finds {v:?}",
                    p.torsion_verdict
                )),
                Err(e) => failures.push(format!("{label}: torsion probe failed: {e}")),
            }
        }
    }
    Ok(VerificationReport {
        accepted: failures.is_empty(),
        failures,
    })
}
