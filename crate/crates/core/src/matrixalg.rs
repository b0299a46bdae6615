//! Degree-2 relations among the entries of a quantum matrix
//! `T = [[a, b], [c, d]]` coacting on a plane, and the substitution
//! `T -> S T S^-1` induced by a change of plane generators.
//!
//! Entries commute with the plane generators. Length-2 words over
//! `{a, b, c, d}` are indexed `4 * first + second` with `a < b < c < d`, so
//! the order is `aa, ab, ac, ad, ba, ..., dd`.

use std::fmt;

use crate::field::Scalar;
use crate::linalg::{rref, Rref};
use crate::plane::{reduce_coord, reduce_diff, CoordQuadratic, DiffQuadratic, Plane, Transform2};

pub const ENTRY_NAMES: [char; 4] = ['a', 'b', 'c', 'd'];
pub const WORD_COUNT: usize = 16;

/// One of the 16 ordered words of length 2 over the matrix entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntryWord2(u8);

impl EntryWord2 {
    /// `first` and `second` are entry indices: 0 = a, 1 = b, 2 = c, 3 = d.
    pub fn new(first: usize, second: usize) -> Self {
        assert!(first < 4 && second < 4, "entry index out of range");
        EntryWord2((4 * first + second) as u8)
    }

    pub fn from_index(index: usize) -> Self {
        assert!(index < WORD_COUNT, "word index out of range");
        EntryWord2(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn letters(self) -> (usize, usize) {
        (self.index() / 4, self.index() % 4)
    }

    pub fn all() -> impl Iterator<Item = EntryWord2> {
        (0..WORD_COUNT).map(EntryWord2::from_index)
    }
}

impl fmt::Display for EntryWord2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.letters();
        write!(f, "{}{}", ENTRY_NAMES[i], ENTRY_NAMES[j])
    }
}

/// A linear combination of the 16 entry words.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticRelation {
    coefficients: Vec<Scalar>,
}

impl QuadraticRelation {
    pub fn zero() -> Self {
        QuadraticRelation { coefficients: vec![Scalar::zero(); WORD_COUNT] }
    }

    pub fn from_coefficients(coefficients: Vec<Scalar>) -> Self {
        assert_eq!(coefficients.len(), WORD_COUNT, "relation needs 16 coefficients");
        QuadraticRelation { coefficients }
    }

    /// `1 * word`.
    pub fn word(word: EntryWord2) -> Self {
        let mut r = QuadraticRelation::zero();
        r.coefficients[word.index()] = Scalar::one();
        r
    }

    /// The commutator `xy - yx` of two entries.
    pub fn commutator(first: usize, second: usize) -> Self {
        let mut r = QuadraticRelation::zero();
        r.coefficients[EntryWord2::new(first, second).index()] = Scalar::one();
        r.coefficients[EntryWord2::new(second, first).index()] = Scalar::from_int(-1);
        r
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn coefficient(&self, word: EntryWord2) -> &Scalar {
        &self.coefficients[word.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Scalar::is_zero)
    }

    fn add_to(&mut self, word: EntryWord2, value: &Scalar) {
        let slot = &mut self.coefficients[word.index()];
        *slot = &*slot + value;
    }

    fn add_scaled(&mut self, other: &QuadraticRelation, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (c, o) in self.coefficients.iter_mut().zip(&other.coefficients) {
            if !o.is_zero() {
                *c = &*c + &(o * factor);
            }
        }
    }

    fn scaled(&self, factor: &Scalar) -> QuadraticRelation {
        let mut out = QuadraticRelation::zero();
        out.add_scaled(self, factor);
        out
    }
}

/// Signed sum of words, e.g. `ab - 2*ba + (1/2)*cd`; `0` for the zero relation.
impl fmt::Display for QuadraticRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (word, c) in EntryWord2::all().zip(&self.coefficients) {
            if c.is_zero() {
                continue;
            }
            let (negative, magnitude) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, Scalar::rational(-r)),
                _ => (false, c.clone()),
            };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if magnitude.is_one() {
                write!(f, "{word}")?;
            } else if magnitude.as_rational().is_some_and(|r| r.is_integer()) {
                write!(f, "{magnitude}*{word}")?;
            } else {
                write!(f, "({magnitude})*{word}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadraticRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical basis (RREF under the word order) of a plane's relation space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManinRelationSet {
    relations: Vec<QuadraticRelation>,
    echelon: Rref,
    plane: Plane,
}

impl ManinRelationSet {
    /// Spans `generators` and stores the span in canonical form.
    pub fn from_generators(plane: Plane, generators: impl IntoIterator<Item = QuadraticRelation>) -> Self {
        let rows: Vec<Vec<Scalar>> = generators.into_iter().map(|r| r.coefficients).collect();
        let echelon = if rows.is_empty() { rref(vec![vec![Scalar::zero(); WORD_COUNT]]) } else { rref(rows) };
        let relations = echelon.rows().iter().cloned().map(QuadraticRelation::from_coefficients).collect();
        ManinRelationSet { relations, echelon, plane }
    }

    pub fn relations(&self) -> &[QuadraticRelation] {
        &self.relations
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn dim(&self) -> usize {
        self.relations.len()
    }

    /// Words carrying the leading 1 of each relation.
    pub fn leading_words(&self) -> Vec<EntryWord2> {
        self.echelon.pivots().iter().map(|&i| EntryWord2::from_index(i)).collect()
    }

    pub fn contains(&self, relation: &QuadraticRelation) -> bool {
        self.echelon.contains(&relation.coefficients)
    }

    /// Same span, regardless of the plane each set came from.
    pub fn same_span(&self, other: &ManinRelationSet) -> bool {
        self.relations == other.relations
    }
}

/// Products of the form `(u1 g1 + u2 g2)(v1 g1 + v2 g2)` where the `u`, `v`
/// are single entries: coefficient of `g_i g_j` is the word `u_i v_j`.
fn entry_product(u: [usize; 2], v: [usize; 2]) -> [[QuadraticRelation; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| QuadraticRelation::word(EntryWord2::new(u[i], v[j]))))
}

fn combine(parts: &[(&[[QuadraticRelation; 2]; 2], Scalar)]) -> [[QuadraticRelation; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = QuadraticRelation::zero();
            for (m, factor) in parts {
                acc.add_scaled(&m[i][j], factor);
            }
            acc
        })
    })
}

/// Applies a scalar-valued normal-form map word by word.
fn reduce_wordwise<const N: usize>(
    m: &[[QuadraticRelation; 2]; 2],
    reduce: impl Fn(&Scalar, &Scalar, &Scalar, &Scalar) -> [Scalar; N],
) -> [QuadraticRelation; N] {
    let mut out: [QuadraticRelation; N] = std::array::from_fn(|_| QuadraticRelation::zero());
    for w in 0..WORD_COUNT {
        let parts = reduce(
            &m[0][0].coefficients[w],
            &m[0][1].coefficients[w],
            &m[1][0].coefficients[w],
            &m[1][1].coefficients[w],
        );
        for (o, v) in out.iter_mut().zip(parts) {
            o.coefficients[w] = v;
        }
    }
    out
}

/// The six residual vectors whose vanishing is required for
/// `x' = a x + b y`, `y' = c x + d y` (and likewise for `xi, eta`) to respect
/// the plane relations.
pub fn relation_residuals(plane: &Plane) -> Vec<QuadraticRelation> {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    let row1 = [A, B];
    let row2 = [C, D];
    let p11 = entry_product(row1, row1);
    let p12 = entry_product(row1, row2);
    let p21 = entry_product(row2, row1);
    let p22 = entry_product(row2, row2);
    let one = Scalar::one();

    let coord = |m: &[[QuadraticRelation; 2]; 2]| {
        reduce_wordwise(m, |xx, xy, yx, yy| {
            let q = CoordQuadratic { xx: xx.clone(), xy: xy.clone(), yx: yx.clone(), yy: yy.clone() };
            reduce_coord(&q, plane)
        })
    };
    let diff = |m: &[[QuadraticRelation; 2]; 2]| {
        let [v] = reduce_wordwise(m, |xi_xi, xi_eta, eta_xi, eta_eta| {
            let q = DiffQuadratic {
                xi_xi: xi_xi.clone(),
                xi_eta: xi_eta.clone(),
                eta_xi: eta_xi.clone(),
                eta_eta: eta_eta.clone(),
            };
            [reduce_diff(&q, plane)]
        });
        v
    };

    // x'y' - alpha y'x' - beta y'^2
    let coord_residual = combine(&[(&p12, one.clone()), (&p21, -plane.alpha()), (&p22, -plane.beta())]);
    let [r_xx, r_xy, r_yy] = coord(&coord_residual);
    // xi'^2 - A xi'eta', eta'^2 - B xi'eta', eta'xi' - C xi'eta'
    let r_xi = diff(&combine(&[(&p11, one.clone()), (&p12, -plane.xi_sq())]));
    let r_eta = diff(&combine(&[(&p22, one.clone()), (&p12, -plane.eta_sq())]));
    let r_swap = diff(&combine(&[(&p21, one), (&p12, -plane.eta_xi())]));
    vec![r_xx, r_xy, r_yy, r_xi, r_eta, r_swap]
}

pub fn manin_relations(plane: &Plane) -> ManinRelationSet {
    ManinRelationSet::from_generators(plane.clone(), relation_residuals(plane))
}

/// The linear map on relations induced by `T -> S T S^-1`: a relation written
/// in the entries of `S T S^-1` is re-expressed in the entries of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntrySubstitution {
    /// Row `w` is the expansion of the barred word `w` in unbarred words.
    images: Vec<QuadraticRelation>,
    /// Barred entry `e` as a combination of `a, b, c, d`.
    entries: [[Scalar; 4]; 4],
}

impl EntrySubstitution {
    pub fn image_of_word(&self, word: EntryWord2) -> &QuadraticRelation {
        &self.images[word.index()]
    }

    /// Coefficients of barred entry `entry` (0 = a, ..., 3 = d) on `a, b, c, d`.
    pub fn barred_entry(&self, entry: usize) -> &[Scalar; 4] {
        &self.entries[entry]
    }

    pub fn apply(&self, relation: &QuadraticRelation) -> QuadraticRelation {
        let mut out = QuadraticRelation::zero();
        for (image, c) in self.images.iter().zip(&relation.coefficients).filter(|(_, c)| !c.is_zero()) {
            out.add_scaled(image, c);
        }
        out
    }

    /// The 16x16 matrix, row `w` holding the image of word `w`.
    pub fn matrix(&self) -> Vec<Vec<Scalar>> {
        self.images.iter().map(|r| r.coefficients.clone()).collect()
    }
}

pub fn entry_substitution(s: &Transform2) -> EntrySubstitution {
    let inv = s.inverse();
    // (S T S^-1)_{ij} = sum_{k,l} S_ik T_kl Sinv_lj, with T_kl the entry 2k + l.
    let entries: [[Scalar; 4]; 4] = std::array::from_fn(|e| {
        let (i, j) = (e / 2, e % 2);
        std::array::from_fn(|kl| {
            let (k, l) = (kl / 2, kl % 2);
            s.entry(i, k) * inv.entry(l, j)
        })
    });
    let images = EntryWord2::all()
        .map(|w| {
            let (u, v) = w.letters();
            let mut image = QuadraticRelation::zero();
            for (e1, c1) in entries[u].iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (e2, c2) in entries[v].iter().enumerate() {
                    if !c2.is_zero() {
                        image.add_to(EntryWord2::new(e1, e2), &(c1 * c2));
                    }
                }
            }
            image
        })
        .collect();
    EntrySubstitution { images, entries }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityReport {
    pub holds: bool,
    pub checked: usize,
    /// Target relations whose image falls outside the source relation space.
    pub failures: Vec<QuadraticRelation>,
}

impl fmt::Display for SimilarityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "all {} relations map into the source relation space", self.checked)
        } else {
            write!(f, "{} of {} relations fail:", self.failures.len(), self.checked)?;
            for r in &self.failures {
                write!(f, " [{r}]")?;
            }
            Ok(())
        }
    }
}

/// Checks that every relation of `target`, pulled back through
/// `T -> S T S^-1`, holds for the quantum matrix of `source`.
pub fn check_similarity(source: &Plane, target: &Plane, s: &Transform2) -> SimilarityReport {
    let source_rel = manin_relations(source);
    let target_rel = manin_relations(target);
    let sub = entry_substitution(s);
    let failures: Vec<QuadraticRelation> =
        target_rel.relations().iter().filter(|r| !source_rel.contains(&sub.apply(r))).cloned().collect();
    SimilarityReport { holds: failures.is_empty(), checked: target_rel.dim(), failures }
}

/// Scales a relation so it prints with a leading 1 (used by fixtures).
pub fn normalize_leading(relation: &QuadraticRelation) -> QuadraticRelation {
    match relation.coefficients.iter().find(|c| !c.is_zero()) {
        Some(lead) => relation.scaled(&lead.inv().expect("non-zero")),
        None => relation.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{dj_plane, input_plane, jordanian_plane};

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn fr(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    fn commutators() -> Vec<QuadraticRelation> {
        let mut v = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                v.push(QuadraticRelation::commutator(i, j));
            }
        }
        v
    }

    #[test]
    fn word_order() {
        let names: Vec<String> = EntryWord2::all().map(|w| w.to_string()).collect();
        assert_eq!(names[..5], ["aa", "ab", "ac", "ad", "ba"]);
        assert_eq!(names[15], "dd");
    }

    #[test]
    fn classical_plane_gives_commutators() {
        let plane = dj_plane(s(1), s(1)).unwrap();
        let got = manin_relations(&plane);
        let expected = ManinRelationSet::from_generators(plane, commutators());
        assert_eq!(got.dim(), 6);
        assert!(got.same_span(&expected));
    }

    #[test]
    fn classical_residuals_by_hand() {
        // x'y' - y'x' = [a,c] x^2 + ([a,d] + [b,c]) xy + [b,d] y^2 once yx = xy.
        let r = relation_residuals(&dj_plane(s(1), s(1)).unwrap());
        assert_eq!(r[0], QuadraticRelation::commutator(0, 2));
        let mut mixed = QuadraticRelation::commutator(0, 3);
        mixed.add_scaled(&QuadraticRelation::commutator(1, 2), &s(1));
        assert_eq!(r[1], mixed);
        assert_eq!(r[2], QuadraticRelation::commutator(1, 3));
        assert_eq!(r[3], QuadraticRelation::commutator(0, 1));
        assert_eq!(r[4], QuadraticRelation::commutator(2, 3));
    }

    #[test]
    fn printer() {
        let mut r = QuadraticRelation::word(EntryWord2::new(0, 1));
        r.add_scaled(&QuadraticRelation::word(EntryWord2::new(1, 0)), &s(-2));
        r.add_scaled(&QuadraticRelation::word(EntryWord2::new(2, 3)), &fr(1, 2));
        assert_eq!(r.to_string(), "ab - 2*ba + (1/2)*cd");
        assert_eq!(QuadraticRelation::zero().to_string(), "0");
        assert_eq!(r.scaled(&s(-1)).to_string(), "-ab + 2*ba - (1/2)*cd");
    }

    #[test]
    fn identity_substitution() {
        let sub = entry_substitution(&Transform2::identity());
        for w in EntryWord2::all() {
            assert_eq!(sub.image_of_word(w), &QuadraticRelation::word(w));
        }
    }

    #[test]
    fn swap_substitution_permutes_entries() {
        let sub = entry_substitution(&Transform2::swap());
        for (e, expected) in [3, 2, 1, 0].into_iter().enumerate() {
            let mut unit = [s(0), s(0), s(0), s(0)];
            unit[expected] = s(1);
            assert_eq!(sub.barred_entry(e), &unit);
        }
        let ab = EntryWord2::new(0, 1);
        assert_eq!(sub.image_of_word(ab), &QuadraticRelation::word(EntryWord2::new(3, 2)));
    }

    #[test]
    fn similarity_worked_examples() {
        let t = Transform2::new(s(1), s(1), s(1), s(-2)).unwrap();
        let report = check_similarity(&input_plane(s(-2), s(1), s(0)), &dj_plane(s(1), fr(-1, 2)).unwrap(), &t);
        assert!(report.holds, "{report}");

        let t = Transform2::new(s(1), s(0), s(1), s(1)).unwrap();
        let report = check_similarity(&input_plane(s(1), s(1), s(3)), &jordanian_plane(s(0), fr(1, 2)), &t);
        assert!(report.holds, "{report}");

        let plane = dj_plane(fr(2, 3), s(4)).unwrap();
        assert!(check_similarity(&plane, &plane, &Transform2::identity()).holds);
    }

    #[test]
    fn similarity_fails_for_wrong_target() {
        let t = Transform2::new(s(1), s(1), s(1), s(-2)).unwrap();
        let report = check_similarity(&input_plane(s(-2), s(1), s(0)), &dj_plane(s(1), s(-2)).unwrap(), &t);
        assert!(!report.holds);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn normalize_leading_scales_first_coefficient() {
        let r = QuadraticRelation::commutator(1, 0).scaled(&s(3));
        assert_eq!(normalize_leading(&r).to_string(), "ab - ba");
    }
}
