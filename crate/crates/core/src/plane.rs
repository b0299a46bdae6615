//! Quantum planes as relation coefficients, degree-2 normal forms, and linear
//! changes of generators.
//!
//! A [`Plane`] stands for the algebra on coordinates `x, y` and differentials
//! `xi, eta` with
//!
//! ```text
//! x y    = alpha * y x + beta * y^2
//! xi^2   = A * xi eta
//! eta^2  = B * xi eta
//! eta xi = C * xi eta
//! ```
//!
//! Degree-2 coordinate expressions reduce onto `{x^2, xy, y^2}`, differential
//! ones onto `{xi eta}`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("coordinate coefficient alpha must be non-zero")]
    ZeroAlpha,
    #[error("transformation is singular")]
    Singular,
    /// The transformed `xi eta` has zero normal form, so the result cannot be
    /// written with `xi eta` as the surviving basis word.
    #[error("transformed xi*eta reduces to zero")]
    DegenerateTop(Box<DiffProducts>),
    #[error("transformed coordinate relation is not of the form xy = a*yx + b*y^2")]
    NotTemplate,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed plane `{0}`")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Plane {
    alpha: Scalar,
    beta: Scalar,
    xi_sq: Scalar,
    eta_sq: Scalar,
    eta_xi: Scalar,
}

impl Plane {
    /// Coefficients in the order `(alpha, beta, A, B, C)`.
    pub fn new(alpha: Scalar, beta: Scalar, xi_sq: Scalar, eta_sq: Scalar, eta_xi: Scalar) -> Result<Self, PlaneError> {
        if alpha.is_zero() {
            return Err(PlaneError::ZeroAlpha);
        }
        Ok(Plane { alpha, beta, xi_sq, eta_sq, eta_xi })
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    /// `A` in `xi^2 = A xi eta`.
    pub fn xi_sq(&self) -> &Scalar {
        &self.xi_sq
    }

    /// `B` in `eta^2 = B xi eta`.
    pub fn eta_sq(&self) -> &Scalar {
        &self.eta_sq
    }

    /// `C` in `eta xi = C xi eta`.
    pub fn eta_xi(&self) -> &Scalar {
        &self.eta_xi
    }

    pub fn same_differentials(&self, other: &Plane) -> bool {
        self.xi_sq == other.xi_sq && self.eta_sq == other.eta_sq && self.eta_xi == other.eta_xi
    }

    pub fn same_coordinates(&self, other: &Plane) -> bool {
        self.alpha == other.alpha && self.beta == other.beta
    }
}

/// Drinfeld-Jimbo plane: `xy = q yx`, `xi^2 = eta^2 = 0`, `eta xi = -p xi eta`.
pub fn dj_plane(q: Scalar, p: Scalar) -> Result<Plane, PlaneError> {
    Plane::new(q, Scalar::zero(), Scalar::zero(), Scalar::zero(), -p)
}

/// Jordanian plane: `[x, y] = h y^2`, `xi^2 = h' xi eta`, `eta^2 = 0`, `eta xi = -xi eta`.
pub fn jordanian_plane(h: Scalar, h_prime: Scalar) -> Plane {
    Plane::new(Scalar::one(), h, h_prime, Scalar::zero(), Scalar::from_int(-1)).expect("alpha = 1")
}

/// Commutative coordinates with `xi^2 = h0 xi eta`, `eta^2 = r0 xi eta`,
/// `eta xi = -p0 xi eta`.
pub fn input_plane(h0: Scalar, r0: Scalar, p0: Scalar) -> Plane {
    Plane::new(Scalar::one(), Scalar::zero(), h0, r0, -p0).expect("alpha = 1")
}

/// Exact equality of all five coefficients.
pub fn plane_equal(p1: &Plane, p2: &Plane) -> bool {
    p1 == p2
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "plane(alpha={}, beta={}, A={}, B={}, C={})",
            self.alpha, self.beta, self.xi_sq, self.eta_sq, self.eta_xi
        )
    }
}

impl fmt::Debug for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Plane {
    type Err = PlaneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PlaneError::Parse(s.to_string());
        let body = s.strip_prefix("plane(").and_then(|b| b.strip_suffix(')')).ok_or_else(err)?;
        let mut values = Vec::with_capacity(5);
        let mut rest = body;
        for (i, key) in ["alpha=", "beta=", "A=", "B=", "C="].iter().enumerate() {
            rest = rest.strip_prefix(key).ok_or_else(err)?;
            let end = match i {
                4 => rest.len(),
                _ => rest.find(", ").ok_or_else(err)?,
            };
            values.push(rest[..end].parse::<Scalar>().map_err(|_| err())?);
            rest = rest[end..].strip_prefix(", ").unwrap_or("");
        }
        let mut it = values.into_iter();
        let mut next = || it.next().expect("five values");
        Plane::new(next(), next(), next(), next(), next())
    }
}

/// Coefficients on `xi xi, xi eta, eta xi, eta eta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffQuadratic {
    pub xi_xi: Scalar,
    pub xi_eta: Scalar,
    pub eta_xi: Scalar,
    pub eta_eta: Scalar,
}

impl DiffQuadratic {
    /// Expansion of `(a1 xi + b1 eta)(a2 xi + b2 eta)`.
    pub fn product(a1: &Scalar, b1: &Scalar, a2: &Scalar, b2: &Scalar) -> Self {
        DiffQuadratic { xi_xi: a1 * a2, xi_eta: a1 * b2, eta_xi: b1 * a2, eta_eta: b1 * b2 }
    }
}

/// Coefficients on `xx, xy, yx, yy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordQuadratic {
    pub xx: Scalar,
    pub xy: Scalar,
    pub yx: Scalar,
    pub yy: Scalar,
}

impl CoordQuadratic {
    /// Expansion of `(a1 x + b1 y)(a2 x + b2 y)`.
    pub fn product(a1: &Scalar, b1: &Scalar, a2: &Scalar, b2: &Scalar) -> Self {
        CoordQuadratic { xx: a1 * a2, xy: a1 * b2, yx: b1 * a2, yy: b1 * b2 }
    }
}

/// Coefficient of `xi eta` in the normal form of `q`.
pub fn reduce_diff(q: &DiffQuadratic, plane: &Plane) -> Scalar {
    &q.xi_xi * &plane.xi_sq + &q.xi_eta + &q.eta_xi * &plane.eta_xi + &q.eta_eta * &plane.eta_sq
}

/// Coefficients on `(x^2, xy, y^2)` after rewriting `yx = (xy - beta y^2)/alpha`.
pub fn reduce_coord(q: &CoordQuadratic, plane: &Plane) -> [Scalar; 3] {
    let yx = &q.yx / &plane.alpha;
    [q.xx.clone(), &q.xy + &yx, &q.yy - &(&yx * &plane.beta)]
}

/// Invertible linear change of generators; row `i` expresses the new
/// generator `i` in the old ones: `new_1 = m11 g1 + m12 g2`,
/// `new_2 = m21 g1 + m22 g2`.
#[derive(Clone, PartialEq, Eq)]
pub struct Transform2 {
    m11: Scalar,
    m12: Scalar,
    m21: Scalar,
    m22: Scalar,
}

impl Transform2 {
    pub fn new(m11: Scalar, m12: Scalar, m21: Scalar, m22: Scalar) -> Result<Self, PlaneError> {
        let t = Transform2 { m11, m12, m21, m22 };
        if t.det().is_zero() {
            return Err(PlaneError::Singular);
        }
        Ok(t)
    }

    pub fn from_rows(row1: (Scalar, Scalar), row2: (Scalar, Scalar)) -> Result<Self, PlaneError> {
        Transform2::new(row1.0, row1.1, row2.0, row2.1)
    }

    pub fn identity() -> Self {
        Transform2 { m11: Scalar::one(), m12: Scalar::zero(), m21: Scalar::zero(), m22: Scalar::one() }
    }

    /// Exchanges the two generators.
    pub fn swap() -> Self {
        Transform2 { m11: Scalar::zero(), m12: Scalar::one(), m21: Scalar::one(), m22: Scalar::zero() }
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        match (row, col) {
            (0, 0) => &self.m11,
            (0, 1) => &self.m12,
            (1, 0) => &self.m21,
            (1, 1) => &self.m22,
            _ => panic!("index ({row}, {col}) out of range"),
        }
    }

    pub fn det(&self) -> Scalar {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn inverse(&self) -> Transform2 {
        let inv_det = self.det().inv().expect("invertible by construction");
        Transform2 {
            m11: &self.m22 * &inv_det,
            m12: -(&self.m12 * &inv_det),
            m21: -(&self.m21 * &inv_det),
            m22: &self.m11 * &inv_det,
        }
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Transform2) -> Transform2 {
        let e = |i, j| self.entry(i, 0) * rhs.entry(0, j) + self.entry(i, 1) * rhs.entry(1, j);
        Transform2 { m11: e(0, 0), m12: e(0, 1), m21: e(1, 0), m22: e(1, 1) }
    }

    pub fn scale(&self, factor: &Scalar) -> Transform2 {
        Transform2 {
            m11: &self.m11 * factor,
            m12: &self.m12 * factor,
            m21: &self.m21 * factor,
            m22: &self.m22 * factor,
        }
    }

    /// Exchanges the two rows.
    pub fn swap_rows(&self) -> Transform2 {
        Transform2 { m11: self.m21.clone(), m12: self.m22.clone(), m21: self.m11.clone(), m22: self.m12.clone() }
    }
}

impl fmt::Display for Transform2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

impl fmt::Debug for Transform2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal forms (multiples of `xi eta`) of the four products of the new
/// differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffProducts {
    pub xi_xi: Scalar,
    pub eta_eta: Scalar,
    pub xi_eta: Scalar,
    pub eta_xi: Scalar,
}

pub fn diff_products(plane: &Plane, s: &Transform2) -> DiffProducts {
    let [a1, b1, a2, b2] = s.entries();
    let reduce = |q: DiffQuadratic| reduce_diff(&q, plane);
    DiffProducts {
        xi_xi: reduce(DiffQuadratic::product(a1, b1, a1, b1)),
        eta_eta: reduce(DiffQuadratic::product(a2, b2, a2, b2)),
        xi_eta: reduce(DiffQuadratic::product(a1, b1, a2, b2)),
        eta_xi: reduce(DiffQuadratic::product(a2, b2, a1, b1)),
    }
}

/// Relation coefficients of the same algebra presented in the generators
/// given by `s`.
pub fn transform_diff(plane: &Plane, s: &Transform2) -> Result<Plane, PlaneError> {
    let products = diff_products(plane, s);
    if products.xi_eta.is_zero() {
        return Err(PlaneError::DegenerateTop(Box::new(products)));
    }
    let (alpha, beta) = transform_coord(&plane.alpha, &plane.beta, s)?;
    let top = &products.xi_eta;
    Plane::new(alpha, beta, &products.xi_xi / top, &products.eta_eta / top, &products.eta_xi / top)
}

/// Solves `x' y' = alpha' y' x' + beta' y'^2` modulo `xy = alpha yx + beta y^2`.
pub fn transform_coord(alpha: &Scalar, beta: &Scalar, s: &Transform2) -> Result<(Scalar, Scalar), PlaneError> {
    let plane = Plane::new(alpha.clone(), beta.clone(), Scalar::zero(), Scalar::zero(), Scalar::zero())?;
    let [a1, b1, a2, b2] = s.entries();
    let target = reduce_coord(&CoordQuadratic::product(a1, b1, a2, b2), &plane);
    let yx = reduce_coord(&CoordQuadratic::product(a2, b2, a1, b1), &plane);
    let yy = reduce_coord(&CoordQuadratic::product(a2, b2, a2, b2), &plane);

    // target = alpha' * yx + beta' * yy, three equations in two unknowns.
    let rows: Vec<Vec<Scalar>> = (0..3).map(|i| vec![yx[i].clone(), yy[i].clone(), target[i].clone()]).collect();
    let solved = crate::linalg::rref(rows);
    let pivots = solved.pivots();
    if pivots != [0, 1] {
        // Either inconsistent (pivot in the augmented column) or underdetermined.
        return Err(PlaneError::NotTemplate);
    }
    let new_alpha = solved.rows()[0][2].clone();
    let new_beta = solved.rows()[1][2].clone();
    if new_alpha.is_zero() {
        return Err(PlaneError::NotTemplate);
    }
    Ok((new_alpha, new_beta))
}
