//! Independent reference computations over plain `BigRational`.
//!
//! Elements are sums of `(entry word, plane word)` pairs; plane words are
//! rewritten letter pair by letter pair until they are in normal form.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use qgl2_core::field::{Rational, Scalar};
use qgl2_core::matrixalg::{EntryWord2, QuadraticRelation};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

pub fn to_q(r: &Rational) -> Q {
    Q::new(r.numerator().clone(), r.denominator().clone())
}

pub fn from_q(r: &Q) -> Rational {
    Rational::new(r.numer().clone(), r.denom().clone()).unwrap()
}

pub fn scalar_q(s: &Scalar) -> Q {
    to_q(s.as_rational().expect("rational scalar"))
}

pub fn sc(r: &Q) -> Scalar {
    Scalar::rational(from_q(r))
}

/// Plane data: coordinates `xy = alpha yx + beta yy`, differentials
/// `XX = A XY`, `YY = B XY`, `YX = C XY` (X, Y standing for xi, eta).
#[derive(Debug, Clone)]
pub struct OraclePlane {
    pub alpha: Q,
    pub beta: Q,
    pub a: Q,
    pub b: Q,
    pub c: Q,
}

type Terms = BTreeMap<(String, String), Q>;

fn add(terms: &mut Terms, key: (String, String), value: Q) {
    if value.is_zero() {
        return;
    }
    let entry = terms.entry(key.clone()).or_insert_with(Q::zero);
    *entry += value;
    if entry.is_zero() {
        terms.remove(&key);
    }
}

fn mul(lhs: &Terms, rhs: &Terms) -> Terms {
    let mut out = Terms::new();
    for ((e1, p1), c1) in lhs {
        for ((e2, p2), c2) in rhs {
            add(&mut out, (format!("{e1}{e2}"), format!("{p1}{p2}")), c1 * c2);
        }
    }
    out
}

fn linear(parts: &[(&str, &str, Q)]) -> Terms {
    let mut out = Terms::new();
    for (e, p, c) in parts {
        add(&mut out, (e.to_string(), p.to_string()), c.clone());
    }
    out
}

impl OraclePlane {
    /// One rewrite step on a two-letter plane word; `None` when already normal.
    fn rewrite(&self, word: &str) -> Option<Vec<(String, Q)>> {
        match word {
            "yx" => {
                let inv = Q::one() / &self.alpha;
                Some(vec![("xy".into(), inv.clone()), ("yy".into(), -(&self.beta * &inv))])
            }
            "XX" => Some(vec![("XY".into(), self.a.clone())]),
            "YY" => Some(vec![("XY".into(), self.b.clone())]),
            "YX" => Some(vec![("XY".into(), self.c.clone())]),
            _ => None,
        }
    }

    fn normalize(&self, terms: &Terms) -> Terms {
        let mut out = Terms::new();
        for ((e, p), c) in terms {
            match self.rewrite(p) {
                Some(images) => {
                    for (w, k) in images {
                        add(&mut out, (e.clone(), w), c * k);
                    }
                }
                None => add(&mut out, (e.clone(), p.clone()), c.clone()),
            }
        }
        out
    }

    /// Coefficient vectors (16 words, `aa, ab, ..., dd`) that must vanish for
    /// `x -> a x + b y`, `y -> c x + d y` and the same on `X, Y` to respect the
    /// relations.
    pub fn residuals(&self) -> Vec<Vec<Q>> {
        let one = Q::one();
        let x = linear(&[("a", "x", one.clone()), ("b", "y", one.clone())]);
        let y = linear(&[("c", "x", one.clone()), ("d", "y", one.clone())]);
        let xi = linear(&[("a", "X", one.clone()), ("b", "Y", one.clone())]);
        let eta = linear(&[("c", "X", one.clone()), ("d", "Y", one.clone())]);

        let combine = |parts: Vec<(Terms, Q)>| {
            let mut out = Terms::new();
            for (t, k) in parts {
                for (key, c) in t {
                    add(&mut out, key, c * &k);
                }
            }
            self.normalize(&out)
        };

        let coord = combine(vec![
            (mul(&x, &y), one.clone()),
            (mul(&y, &x), -self.alpha.clone()),
            (mul(&y, &y), -self.beta.clone()),
        ]);
        let xi_sq = combine(vec![(mul(&xi, &xi), one.clone()), (mul(&xi, &eta), -self.a.clone())]);
        let eta_sq = combine(vec![(mul(&eta, &eta), one.clone()), (mul(&xi, &eta), -self.b.clone())]);
        let swap = combine(vec![(mul(&eta, &xi), one.clone()), (mul(&xi, &eta), -self.c.clone())]);

        let mut out = Vec::new();
        for (terms, monomials) in
            [(&coord, &["xx", "xy", "yy"][..]), (&xi_sq, &["XY"][..]), (&eta_sq, &["XY"][..]), (&swap, &["XY"][..])]
        {
            for m in monomials {
                let mut v = vec![Q::zero(); 16];
                for ((e, p), c) in terms {
                    assert!(["xx", "xy", "yy", "XY"].contains(&p.as_str()), "unreduced monomial {p}");
                    if p == m {
                        v[word_index(e)] += c;
                    }
                }
                out.push(v);
            }
        }
        out
    }

    /// Reduced products `(c_XX, c_YY, c_XY, c_YX)` of the new generators
    /// `X' = s11 X + s12 Y`, `Y' = s21 X + s22 Y`, each a multiple of `XY`.
    pub fn products(&self, s: [[Q; 2]; 2]) -> [Q; 4] {
        let gen = |r: &[Q; 2]| linear(&[("", "X", r[0].clone()), ("", "Y", r[1].clone())]);
        let (u, v) = (gen(&s[0]), gen(&s[1]));
        let coeff = |t: Terms| {
            let t = self.normalize(&t);
            t.get(&(String::new(), "XY".to_string())).cloned().unwrap_or_else(Q::zero)
        };
        [coeff(mul(&u, &u)), coeff(mul(&v, &v)), coeff(mul(&u, &v)), coeff(mul(&v, &u))]
    }
}

pub fn word_index(word: &str) -> usize {
    let letter = |c: char| "abcd".find(c).expect("entry letter");
    let mut chars = word.chars();
    let (u, v) = (chars.next().unwrap(), chars.next().unwrap());
    4 * letter(u) + letter(v)
}

/// Canonical reduced row echelon form, zero rows dropped.
pub fn rref(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &lead;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn in_span(basis: &[Vec<Q>], v: &[Q]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rref(rows).len() == rref(basis.to_vec()).len()
}

pub fn relation_q(r: &QuadraticRelation) -> Vec<Q> {
    EntryWord2::all().map(|w| scalar_q(r.coefficient(w))).collect()
}

/// `(S T S^-1)` entries as rows over `a, b, c, d`, computed with explicit
/// 2x2 rational matrices.
pub fn conjugated_entries(s: [[Q; 2]; 2]) -> [[Q; 4]; 4] {
    let det = &s[0][0] * &s[1][1] - &s[0][1] * &s[1][0];
    let inv = [[&s[1][1] / &det, -&s[0][1] / &det], [-&s[1][0] / &det, &s[0][0] / &det]];
    std::array::from_fn(|e| {
        let (i, j) = (e / 2, e % 2);
        let mut row: [Q; 4] = std::array::from_fn(|_| Q::zero());
        for k in 0..2 {
            for l in 0..2 {
                row[2 * k + l] += &s[i][k] * &inv[l][j];
            }
        }
        row
    })
}

/// Rewrites a relation in barred entries as one in `a, b, c, d`.
pub fn pull_back(relation: &[Q], entries: &[[Q; 4]; 4]) -> Vec<Q> {
    let mut out = vec![Q::zero(); 16];
    for (w, c) in relation.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (e1, c1) in entries[w / 4].iter().enumerate() {
            for (e2, c2) in entries[w % 4].iter().enumerate() {
                out[4 * e1 + e2] += c * c1 * c2;
            }
        }
    }
    out
}

/// Reference similarity check: every target relation, read in the entries of
/// `S T S^-1`, lies in the source relation span.
pub fn similarity_holds(source: &OraclePlane, target: &OraclePlane, s: [[Q; 2]; 2]) -> bool {
    let source_span = rref(source.residuals());
    let entries = conjugated_entries(s);
    rref(target.residuals()).iter().all(|r| in_span(&source_span, &pull_back(r, &entries)))
}
