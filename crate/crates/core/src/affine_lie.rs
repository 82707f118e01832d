//! Loop generators of `gl_m` and `sl_m` with the central extension.

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hecke_algebra::add_term;
use crate::scalars::{int, Scalar};

/// Basis of the central extension of `gl_m[t, t^{-1}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GlBasis {
    /// `E_ab t^i`, 1-based.
    E { a: usize, b: usize, i: i64 },
    C,
}

pub type GlElement = BTreeMap<GlBasis, Scalar>;

/// `[E_ab t^i, E_cd t^j] = (δ_bc E_ad - δ_da E_cb) t^{i+j} + i δ_{i,-j} δ_bc δ_da C`.
pub fn gl_bracket(x: &GlBasis, y: &GlBasis) -> GlElement {
    let mut out = BTreeMap::new();
    let (GlBasis::E { a, b, i }, GlBasis::E { a: c, b: d, i: j }) = (*x, *y) else {
        return out;
    };
    if b == c {
        add_term(&mut out, GlBasis::E { a, b: d, i: i + j }, Scalar::one());
    }
    if d == a {
        add_term(&mut out, GlBasis::E { a: c, b, i: i + j }, -Scalar::one());
    }
    if i == -j && b == c && d == a && i != 0 {
        add_term(&mut out, GlBasis::C, int(i));
    }
    out
}

pub fn gl_bracket_elems(x: &GlElement, y: &GlElement) -> GlElement {
    let mut out = BTreeMap::new();
    for (bx, cx) in x {
        for (by, cy) in y {
            for (k, c) in gl_bracket(bx, by) {
                add_term(&mut out, k, c * cx * cy);
            }
        }
    }
    out
}

/// Basis of `sl_m[t, t^{-1}] ⊕ C c` used as PBW letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    /// `E_ab t^i` with `a != b`.
    Root { a: usize, b: usize, i: i64 },
    /// `(E_cc - E_{c+1,c+1}) t^i`.
    Cartan { c: usize, i: i64 },
    Central,
}

/// Position of a letter in the triangular decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// Annihilates coinvariants on the left.
    Lower,
    Cartan,
    /// Annihilates the highest weight vector.
    Raise,
}

pub type LieElement = BTreeMap<Letter, Scalar>;

impl Letter {
    pub fn part(&self) -> Part {
        match *self {
            Letter::Root { a, b, i } => {
                if i < 0 || (i == 0 && a > b) {
                    Part::Lower
                } else {
                    Part::Raise
                }
            }
            Letter::Cartan { i, .. } => match i.cmp(&0) {
                std::cmp::Ordering::Less => Part::Lower,
                std::cmp::Ordering::Equal => Part::Cartan,
                std::cmp::Ordering::Greater => Part::Raise,
            },
            Letter::Central => Part::Cartan,
        }
    }

    pub fn to_gl(&self) -> GlElement {
        let mut out = BTreeMap::new();
        match *self {
            Letter::Root { a, b, i } => {
                out.insert(GlBasis::E { a, b, i }, Scalar::one());
            }
            Letter::Cartan { c, i } => {
                out.insert(GlBasis::E { a: c, b: c, i }, Scalar::one());
                out.insert(GlBasis::E { a: c + 1, b: c + 1, i }, -Scalar::one());
            }
            Letter::Central => {
                out.insert(GlBasis::C, Scalar::one());
            }
        }
        out
    }

    /// `gl_m` weight of the letter under the adjoint action of the diagonal.
    pub fn weight(&self, m: usize) -> Vec<i64> {
        let mut w = vec![0; m];
        if let Letter::Root { a, b, .. } = *self {
            w[a - 1] += 1;
            w[b - 1] -= 1;
        }
        w
    }

    pub fn degree(&self) -> i64 {
        match *self {
            Letter::Root { i, .. } | Letter::Cartan { i, .. } => i,
            Letter::Central => 0,
        }
    }
}

/// Rewrites a traceless element of the `gl_m` loop algebra in letters.
pub fn from_gl(m: usize, x: &GlElement) -> Result<LieElement> {
    let mut out = BTreeMap::new();
    let mut diag: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
    for (k, c) in x {
        match *k {
            GlBasis::E { a, b, i } if a != b => add_term(&mut out, Letter::Root { a, b, i }, c.clone()),
            GlBasis::E { a, i, .. } => {
                diag.entry(i).or_insert_with(|| vec![Scalar::zero(); m])[a - 1] += c;
            }
            GlBasis::C => add_term(&mut out, Letter::Central, c.clone()),
        }
    }
    for (i, d) in diag {
        let mut partial = Scalar::zero();
        for (c, dc) in d.iter().enumerate() {
            partial += dc;
            if c + 1 < m {
                add_term(&mut out, Letter::Cartan { c: c + 1, i }, partial.clone());
            }
        }
        if !partial.is_zero() {
            return Err(Error::InvalidParameters(format!("diagonal part at t^{i} is not traceless")));
        }
    }
    Ok(out)
}

pub fn bracket(m: usize, x: &Letter, y: &Letter) -> LieElement {
    from_gl(m, &gl_bracket_elems(&x.to_gl(), &y.to_gl())).expect("sl_m is closed under the bracket")
}

/// `(E_aa - I/m) t^i` in letters.
pub fn traceless_diagonal(m: usize, a: usize, i: i64) -> LieElement {
    let mut x = BTreeMap::new();
    for c in 1..=m {
        let coeff = if c == a { Scalar::one() } else { Scalar::zero() } - Scalar::one() / int(m as i64);
        add_term(&mut x, GlBasis::E { a: c, b: c, i }, coeff);
    }
    from_gl(m, &x).expect("traceless by construction")
}
