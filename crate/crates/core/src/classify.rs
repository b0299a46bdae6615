//! Reduction of a plane with commutative coordinates and differential
//! relations
//!
//! ```text
//! xi^2 = h0 xi eta,   eta^2 = r0 xi eta,   eta xi = -p0 xi eta
//! ```
//!
//! to one of the two canonical families, by a change of differentials built
//! from the roots of `F(a, b) = h0 a^2 + (1 - p0) a b + r0 b^2`.
//!
//! * `D = (p0 - 1)^2 - 4 h0 r0 != 0`: the two distinct roots, taken as rows,
//!   kill `xi^2` and `eta^2`, leaving a Drinfeld-Jimbo plane with `q = 1`.
//! * `D = 0`: the double root `t` together with `xi` gives a Jordanian plane
//!   with `h = 0` and `h' = h0 / (h0 + t)`, except on the orbit `p0 = -1`,
//!   `h0 r0 = 1` where `eta xi = +xi eta` and no linear change can help.

use std::fmt;

use thiserror::Error;

use crate::field::{ExtensionTag, Rational, Scalar};
use crate::plane::{
    diff_products, dj_plane, input_plane, jordanian_plane, transform_coord, transform_diff, Plane, Transform2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("F(a, b) vanishes identically (h0 = r0 = 0, p0 = 1)")]
    IdenticallyZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("r0 must be non-zero")]
    ZeroR0,
    #[error("discriminant is non-zero; there is no double root")]
    NotDoubleRoot,
}

/// The three parameters of the input plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneParams {
    pub h0: Rational,
    pub r0: Rational,
    pub p0: Rational,
}

impl PlaneParams {
    pub fn new(h0: Rational, r0: Rational, p0: Rational) -> Self {
        PlaneParams { h0, r0, p0 }
    }

    pub fn plane(&self) -> Plane {
        let (h0, r0, p0) = self.scalars();
        input_plane(h0, r0, p0)
    }

    pub fn scalars(&self) -> (Scalar, Scalar, Scalar) {
        (self.h0.clone().into(), self.r0.clone().into(), self.p0.clone().into())
    }

    pub fn discriminant(&self) -> Rational {
        let (h0, r0, p0) = self.scalars();
        discriminant(&h0, &r0, &p0).as_rational().expect("rational inputs").clone()
    }

    /// `p0 = -1` and `h0 r0 = 1`.
    pub fn on_degenerate_orbit(&self) -> bool {
        self.p0 == Rational::from(-1) && (&self.h0 * &self.r0).is_one()
    }
}

impl fmt::Display for PlaneParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(h0={}, r0={}, p0={})", self.h0, self.r0, self.p0)
    }
}

/// `(p0 - 1)^2 - 4 h0 r0`.
pub fn discriminant(h0: &Scalar, r0: &Scalar, p0: &Scalar) -> Scalar {
    let shifted = p0 - Scalar::one();
    shifted.square() - Scalar::from_int(4) * h0 * r0
}

/// A root `[a : b]` of `F`, standing for the differential `a xi + b eta`.
/// The first non-zero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectiveRoot {
    a: Scalar,
    b: Scalar,
}

impl ProjectiveRoot {
    pub fn new(a: Scalar, b: Scalar) -> Option<Self> {
        if !a.is_zero() {
            let b = &b / &a;
            Some(ProjectiveRoot { a: Scalar::one(), b })
        } else if !b.is_zero() {
            Some(ProjectiveRoot { a: Scalar::zero(), b: Scalar::one() })
        } else {
            None
        }
    }

    /// `[1 : t]`.
    pub fn finite(t: Scalar) -> Self {
        ProjectiveRoot { a: Scalar::one(), b: t }
    }

    /// `[0 : 1]`.
    pub fn infinity() -> Self {
        ProjectiveRoot { a: Scalar::zero(), b: Scalar::one() }
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn is_infinite(&self) -> bool {
        self.a.is_zero()
    }

    /// `t` for a finite root `[1 : t]`.
    pub fn slope(&self) -> Option<&Scalar> {
        (!self.is_infinite()).then_some(&self.b)
    }

    pub fn row(&self) -> (Scalar, Scalar) {
        (self.a.clone(), self.b.clone())
    }

    /// `F(a, b)`.
    pub fn evaluate(&self, h0: &Scalar, r0: &Scalar, p0: &Scalar) -> Scalar {
        h0 * &self.a.square() + (Scalar::one() - p0) * &self.a * &self.b + r0 * &self.b.square()
    }
}

impl fmt::Display for ProjectiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.a, self.b)
    }
}

impl fmt::Debug for ProjectiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The two roots of `F` (equal when `D = 0`) over `Q(sqrt(D))`.
///
/// For `r0 != 0` the order is `t = ((p0 - 1) + sqrt(D)) / (2 r0)` first and
/// the `- sqrt(D)` root second. For `r0 = 0` the finite root precedes `[0 : 1]`.
pub fn projective_roots(
    h0: &Scalar,
    r0: &Scalar,
    p0: &Scalar,
) -> Result<(ProjectiveRoot, ProjectiveRoot, ExtensionTag), ClassifyError> {
    let shifted = p0 - Scalar::one();
    if h0.is_zero() && r0.is_zero() && shifted.is_zero() {
        return Err(ClassifyError::IdenticallyZero);
    }
    let disc = discriminant(h0, r0, p0);
    let extension = match disc.as_rational() {
        Some(d) => ExtensionTag::new(d.clone()),
        None => panic!("discriminant of rational parameters must be rational"),
    };
    if r0.is_zero() {
        // F = a (h0 a + (1 - p0) b)
        if shifted.is_zero() {
            return Ok((ProjectiveRoot::infinity(), ProjectiveRoot::infinity(), extension));
        }
        let t = h0 / &shifted;
        return Ok((ProjectiveRoot::finite(t), ProjectiveRoot::infinity(), extension));
    }
    let root = Scalar::sqrt_of(&extension);
    let denom = Scalar::from_int(2) * r0;
    let plus = (&shifted + &root) / &denom;
    let minus = (&shifted - &root) / &denom;
    Ok((ProjectiveRoot::finite(plus), ProjectiveRoot::finite(minus), extension))
}

/// `p = -(h0 + t1 - p0 t2 + r0 t1 t2) / (h0 + t2 - p0 t1 + r0 t1 t2)`.
pub fn case1_p(h0: &Scalar, r0: &Scalar, p0: &Scalar, t1: &Scalar, t2: &Scalar) -> Result<Scalar, ClassifyError> {
    let cross = r0 * t1 * t2;
    let num = h0 + t1 - p0 * t2 + &cross;
    let den = h0 + t2 - p0 * t1 + &cross;
    if den.is_zero() {
        return Err(ClassifyError::ZeroDenominator);
    }
    Ok(-(num / den))
}

/// The double root `t = (p0 - 1) / (2 r0)` when `D = 0`.
pub fn case2_t(h0: &Scalar, r0: &Scalar, p0: &Scalar) -> Result<Scalar, ClassifyError> {
    if r0.is_zero() {
        return Err(ClassifyError::ZeroR0);
    }
    if !discriminant(h0, r0, p0).is_zero() {
        return Err(ClassifyError::NotDoubleRoot);
    }
    let shifted = p0 - Scalar::one();
    let t = &shifted / &(Scalar::from_int(2) * r0);
    if !shifted.is_zero() {
        assert_eq!(t, Scalar::from_int(2) * h0 / &shifted, "double-root expressions disagree");
    }
    Ok(t)
}

/// `h' = h0 / (h0 + t)`.
pub fn case2_hprime(h0: &Scalar, t: &Scalar) -> Result<Scalar, ClassifyError> {
    let den = h0 + t;
    if den.is_zero() {
        return Err(ClassifyError::ZeroDenominator);
    }
    Ok(h0 / &den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    DrinfeldJimbo,
    Jordanian,
    Classical,
    Degenerate,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [CaseTag::DrinfeldJimbo, CaseTag::Jordanian, CaseTag::Classical, CaseTag::Degenerate];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::DrinfeldJimbo => "DrinfeldJimbo",
            CaseTag::Jordanian => "Jordanian",
            CaseTag::Classical => "Classical",
            CaseTag::Degenerate => "Degenerate",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| format!("unknown case `{s}`"))
    }
}

pub const NOTE_Q_FORCED: &str =
    "q = 1 is forced: the coordinates already commute (xy = yx), so the target is GL_{q=1,p}(2)";
pub const NOTE_P_ZERO: &str =
    "warning: p = 0 (eta xi = 0 in the new generators); whether this is a well-defined GL_{1,0}(2) is left open";
pub const NOTE_RESCALE: &str =
    "any non-zero h' can be rescaled to 1 by xi -> lambda xi; h' is reported without normalization";
pub const NOTE_DEGENERATE: &str = "degenerate orbit p0 = -1, h0 r0 = 1: eta xi = +xi eta, so [xi', eta'] = 0 \
     under every linear change of generators and neither canonical family is reachable";
pub const NOTE_SWAPPED: &str = "rows swapped: the first root ordering made xi' eta' vanish";
pub const NOTE_GENERATOR_SWAP: &str = "h0 = 0 with a double root: generators xi and eta exchanged";

/// Outcome of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub params: PlaneParams,
    pub case_tag: CaseTag,
    /// Always 1 for Drinfeld-Jimbo outputs.
    pub q: Scalar,
    pub p: Option<Scalar>,
    /// Always 0 for Jordanian outputs.
    pub h: Scalar,
    pub h_prime: Option<Scalar>,
    pub discriminant: Scalar,
    pub extension: ExtensionTag,
    pub transform: Option<Transform2>,
    /// Roots used as rows (Drinfeld-Jimbo only), in final order.
    pub roots: Option<(ProjectiveRoot, ProjectiveRoot)>,
    /// Double root `t` (Jordanian via the `(1, 0), (1, t)` transformation).
    pub double_root: Option<Scalar>,
    pub verified: bool,
    pub notes: Vec<String>,
}

impl Classification {
    /// The canonical plane the input was reduced to.
    pub fn canonical_plane(&self) -> Option<Plane> {
        match self.case_tag {
            CaseTag::DrinfeldJimbo => dj_plane(self.q.clone(), self.p.clone()?).ok(),
            CaseTag::Jordanian => Some(jordanian_plane(self.h.clone(), self.h_prime.clone()?)),
            CaseTag::Classical => dj_plane(Scalar::one(), Scalar::one()).ok(),
            CaseTag::Degenerate => None,
        }
    }

    /// `1/p` for Drinfeld-Jimbo outputs with `p != 0`.
    pub fn reciprocal_p(&self) -> Option<Scalar> {
        match self.case_tag {
            CaseTag::DrinfeldJimbo => self.p.as_ref()?.inv().ok(),
            _ => None,
        }
    }
}

/// For rows built from the two roots with `r0 != 0`, the two surviving
/// coefficients satisfy `xi'eta' + eta'xi' = -D / r0`, so they never vanish
/// together. Trivially true when `r0 = 0`.
pub fn diff_sum_identity(params: &PlaneParams, s: &Transform2) -> bool {
    if params.r0.is_zero() {
        return true;
    }
    let products = diff_products(&params.plane(), s);
    let (_, r0, _) = params.scalars();
    let disc = Scalar::rational(params.discriminant());
    products.xi_eta + products.eta_xi == -(disc / r0)
}

/// Re-expands the input plane under the reported transformation and checks
/// that the canonical relations come out exactly.
pub fn verify(c: &Classification) -> bool {
    let (Some(s), Some(target)) = (&c.transform, c.canonical_plane()) else {
        return false;
    };
    let input = c.params.plane();
    let Ok(moved) = transform_diff(&input, s) else {
        return false;
    };
    let coords = transform_coord(input.alpha(), input.beta(), s);
    coords == Ok((Scalar::one(), Scalar::zero())) && moved == target
}

pub fn classify(params: &PlaneParams) -> Classification {
    let (h0, r0, p0) = params.scalars();
    let disc = discriminant(&h0, &r0, &p0);
    let mut out = Classification {
        params: params.clone(),
        case_tag: CaseTag::Degenerate,
        q: Scalar::one(),
        p: None,
        h: Scalar::zero(),
        h_prime: None,
        extension: ExtensionTag::new(disc.as_rational().expect("rational").clone()),
        discriminant: disc.clone(),
        transform: None,
        roots: None,
        double_root: None,
        verified: false,
        notes: Vec::new(),
    };

    if !disc.is_zero() {
        classify_distinct_roots(&h0, &r0, &p0, &mut out);
    } else if r0.is_zero() {
        // p0 = 1 here
        if h0.is_zero() {
            out.case_tag = CaseTag::Classical;
            out.p = Some(Scalar::one());
            out.h_prime = Some(Scalar::zero());
        } else {
            out.case_tag = CaseTag::Jordanian;
            out.h_prime = Some(h0.clone());
            out.notes.push(NOTE_RESCALE.to_string());
        }
        out.transform = Some(Transform2::identity());
    } else if h0.is_zero() {
        // p0 = 1; the double root is t = 0 and h0 + t vanishes spuriously.
        out.case_tag = CaseTag::Jordanian;
        out.h_prime = Some(-&r0);
        out.transform = Some(Transform2::swap());
        out.notes.push(NOTE_GENERATOR_SWAP.to_string());
        out.notes.push(NOTE_RESCALE.to_string());
    } else {
        let t = case2_t(&h0, &r0, &p0).expect("r0 != 0 and D = 0");
        match case2_hprime(&h0, &t) {
            Ok(h_prime) => {
                out.case_tag = CaseTag::Jordanian;
                out.h_prime = Some(h_prime);
                out.transform = Transform2::from_rows((Scalar::one(), Scalar::zero()), (Scalar::one(), t.clone())).ok();
                out.double_root = Some(t);
                out.notes.push(NOTE_RESCALE.to_string());
            }
            Err(_) => {
                out.case_tag = CaseTag::Degenerate;
                out.double_root = Some(t);
                out.notes.push(NOTE_DEGENERATE.to_string());
                return out;
            }
        }
    }
    out.verified = verify(&out);
    out
}

fn classify_distinct_roots(h0: &Scalar, r0: &Scalar, p0: &Scalar, out: &mut Classification) {
    let (first, second, extension) = projective_roots(h0, r0, p0).expect("D != 0 excludes F = 0");
    out.extension = extension;
    out.case_tag = CaseTag::DrinfeldJimbo;
    out.notes.push(NOTE_Q_FORCED.to_string());

    let input = out.params.plane();
    let mut roots = (first, second);
    let mut s = Transform2::from_rows(roots.0.row(), roots.1.row()).expect("distinct roots give independent rows");
    // xi' eta' and eta' xi' sum to -D/r0 (or its r0 = 0 analogue), so at most one
    // orientation has a vanishing xi' eta'.
    if diff_products(&input, &s).xi_eta.is_zero() {
        s = s.swap_rows();
        roots = (roots.1, roots.0);
        out.notes.push(NOTE_SWAPPED.to_string());
    }
    let moved = transform_diff(&input, &s).expect("one orientation has non-zero xi' eta'");
    let p = -moved.eta_xi();
    if p.is_zero() {
        out.notes.push(NOTE_P_ZERO.to_string());
    }
    // Cross-check against the closed form for rows (1, t1), (1, t2).
    if let (Some(t1), Some(t2)) = (roots.0.slope(), roots.1.slope()) {
        let closed = case1_p(h0, r0, p0, t1, t2).expect("xi' eta' != 0");
        assert_eq!(closed, p, "closed-form p disagrees with re-expansion");
    }
    out.p = Some(p);
    out.transform = Some(s);
    out.roots = Some(roots);
}
