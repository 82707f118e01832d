//! The extended affine Weyl group `R_m` generated by `τ_0, ..., τ_{m-1}`
//! and `π`: words, the semidirect product image, and its actions on
//! integers, loop vectors, loop generators and weights.

use num::One;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::affine_lie::{GlBasis, GlElement};
use crate::error::{Error, Result};
use crate::hecke_algebra::add_term;
use crate::permutations::Permutation;
use crate::scalars::{int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum WeylLetter {
    Tau(usize),
    Pi,
    PiInv,
}

impl WeylLetter {
    pub fn inverse(self) -> WeylLetter {
        match self {
            WeylLetter::Tau(c) => WeylLetter::Tau(c),
            WeylLetter::Pi => WeylLetter::PiInv,
            WeylLetter::PiInv => WeylLetter::Pi,
        }
    }

    /// `t^{±1}` count contributed to the degree of a word.
    pub fn degree(self) -> i64 {
        match self {
            WeylLetter::Tau(_) => 0,
            WeylLetter::Pi => 1,
            WeylLetter::PiInv => -1,
        }
    }

    /// Index permutation on `{1..m}` (1-based in, 1-based out).
    pub fn index_map(self, m: usize, a: usize) -> usize {
        match self {
            WeylLetter::Tau(0) => {
                if a == 1 {
                    m
                } else if a == m {
                    1
                } else {
                    a
                }
            }
            WeylLetter::Tau(c) => {
                if a == c {
                    c + 1
                } else if a == c + 1 {
                    c
                } else {
                    a
                }
            }
            WeylLetter::Pi => a % m + 1,
            WeylLetter::PiInv => (a + m - 2) % m + 1,
        }
    }

    /// Power of `t` picked up by `e_a` (see `act_loop_vector`).
    pub fn loop_shift(self, m: usize, a: usize) -> i64 {
        let d = |x: usize, y: usize| i64::from(x == y);
        match self {
            WeylLetter::Tau(0) => d(a, 1) - d(a, m),
            WeylLetter::Tau(_) => 0,
            WeylLetter::Pi => -d(a, m),
            WeylLetter::PiInv => d(a, 1),
        }
    }
}

impl std::str::FromStr for WeylLetter {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        match tok {
            "pi" => Ok(WeylLetter::Pi),
            "pi^-1" => Ok(WeylLetter::PiInv),
            _ => tok
                .strip_prefix('t')
                .and_then(|r| r.parse::<usize>().ok())
                .map(WeylLetter::Tau)
                .ok_or_else(|| Error::Parse(format!("unknown letter '{tok}'"))),
        }
    }
}

impl From<WeylLetter> for String {
    fn from(l: WeylLetter) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for WeylLetter {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for WeylLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylLetter::Tau(c) => write!(f, "t{c}"),
            WeylLetter::Pi => write!(f, "pi"),
            WeylLetter::PiInv => write!(f, "pi^-1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeylWord {
    pub m: usize,
    pub letters: Vec<WeylLetter>,
}

impl WeylWord {
    pub fn new(m: usize, letters: Vec<WeylLetter>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameters("the affine Weyl group needs m >= 2".into()));
        }
        for l in &letters {
            if let WeylLetter::Tau(c) = l {
                if *c >= m {
                    return Err(Error::IndexOutOfRange { index: *c, bound: m - 1 });
                }
            }
        }
        Ok(WeylWord { m, letters })
    }

    /// Parses whitespace separated letters `t0 .. t{m-1}`, `pi`, `pi^-1`.
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let letters = s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>()?;
        Self::new(m, letters)
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord { m: self.m, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    pub fn concat(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { m: self.m, letters }
    }

    pub fn semidirect_image(&self) -> SemidirectElement {
        self.letters
            .iter()
            .fold(SemidirectElement::identity(self.m), |acc, &l| acc.compose(&SemidirectElement::generator(self.m, l)))
    }

    /// The word acts as the composite of its letters, rightmost first.
    pub fn act_on_integers(&self, d: i64) -> i64 {
        self.letters.iter().rev().fold(d, |x, &l| act_on_integers(self.m, l, x))
    }

    /// Inversion count of the affine permutation; `π` has length 0.
    pub fn length(&self) -> usize {
        let m = self.m as i64;
        let f = |d| self.act_on_integers(d);
        let spread = (1..=m).map(|i| (f(i) - i).abs()).max().unwrap_or(0);
        let reach = 2 * spread + m + 1;
        let mut count = 0;
        for i in 1..=m {
            for j in i + 1..=i + reach {
                if f(i) > f(j) {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn act_on_integers(m: usize, l: WeylLetter, d: i64) -> i64 {
    let m = m as i64;
    match l {
        WeylLetter::Pi => d + 1,
        WeylLetter::PiInv => d - 1,
        WeylLetter::Tau(c) => {
            let r = d.rem_euclid(m);
            let c = c as i64;
            if r == c {
                d + 1
            } else if r == (c + 1) % m {
                d - 1
            } else {
                d
            }
        }
    }
}

/// `translation · perm` in `S_m ⋉ Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemidirectElement {
    pub perm: Permutation,
    pub translation: Vec<i64>,
}

impl SemidirectElement {
    pub fn identity(m: usize) -> Self {
        SemidirectElement { perm: Permutation::identity(m), translation: vec![0; m] }
    }

    pub fn generator(m: usize, l: WeylLetter) -> Self {
        match l {
            WeylLetter::Tau(0) => {
                let mut t = vec![0; m];
                t[0] = 1;
                t[m - 1] = -1;
                SemidirectElement { perm: Permutation::transposition(m, 1, m).unwrap(), translation: t }
            }
            WeylLetter::Tau(c) => SemidirectElement {
                perm: Permutation::simple(m, c).unwrap(),
                translation: vec![0; m],
            },
            WeylLetter::Pi => {
                let mut t = vec![0; m];
                t[0] = 1;
                let cycle = (1..m).fold(Permutation::identity(m), |acc, c| acc.then(&Permutation::simple(m, c).unwrap()));
                SemidirectElement { perm: cycle, translation: t }
            }
            WeylLetter::PiInv => Self::generator(m, WeylLetter::Pi).inverse(),
        }
    }

    /// `(t σ)(t' σ') = (t + σ·t') σσ'`.
    pub fn compose(&self, rhs: &SemidirectElement) -> SemidirectElement {
        let moved = self.perm.act(&rhs.translation);
        SemidirectElement {
            perm: self.perm.then(&rhs.perm),
            translation: self.translation.iter().zip(&moved).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> SemidirectElement {
        let inv = self.perm.inverse();
        SemidirectElement { translation: inv.act(&self.translation).iter().map(|x| -x).collect(), perm: inv }
    }
}

/// `e_a t^i ↦ e_{g(a)} t^{i + shift}`.
pub fn act_loop_vector(m: usize, l: WeylLetter, a: usize, i: i64) -> (usize, i64) {
    (l.index_map(m, a), i + l.loop_shift(m, a))
}

/// Automorphism of the `gl_m` loop algebra induced by a letter.
pub fn act_affine_generator(m: usize, l: WeylLetter, x: &GlBasis) -> GlElement {
    let mut out = BTreeMap::new();
    match *x {
        GlBasis::C => {
            out.insert(GlBasis::C, Scalar::one());
        }
        GlBasis::E { a, b, i } => {
            let j = i + l.loop_shift(m, a) - l.loop_shift(m, b);
            add_term(&mut out, GlBasis::E { a: l.index_map(m, a), b: l.index_map(m, b), i: j }, Scalar::one());
            if i == 0 && a == b {
                add_term(&mut out, GlBasis::C, int(l.loop_shift(m, a)));
            }
        }
    }
    out
}

pub fn act_affine_element(m: usize, l: WeylLetter, x: &GlElement) -> GlElement {
    let mut out = BTreeMap::new();
    for (k, c) in x {
        for (k2, c2) in act_affine_generator(m, l, k) {
            add_term(&mut out, k2, c2 * c);
        }
    }
    out
}

/// Action on a weight `level C* + Σ mu_a E*_aa`. The shifted action is the
/// plain one conjugated by `m C* - Σ a E*_aa`.
pub fn act_weight(l: WeylLetter, level: &Scalar, mu: &[Scalar], shifted: bool) -> Vec<Scalar> {
    let m = mu.len();
    let one = Scalar::one();
    let e = if shifted { one.clone() } else { Scalar::from_integer(0.into()) };
    let mut out = mu.to_vec();
    match l {
        WeylLetter::Pi => {
            out[0] = &mu[m - 1] + level + &e;
            for a in 1..m {
                out[a] = &mu[a - 1] + &e;
            }
        }
        WeylLetter::PiInv => {
            for a in 0..m - 1 {
                out[a] = &mu[a + 1] - &e;
            }
            out[m - 1] = &mu[0] - level - &e;
        }
        WeylLetter::Tau(0) => {
            out[0] = &mu[m - 1] + level + &e;
            out[m - 1] = &mu[0] - level - &e;
        }
        WeylLetter::Tau(c) => {
            out[c - 1] = &mu[c] - &e;
            out[c] = &mu[c - 1] + &e;
        }
    }
    out
}

/// Random word in `τ_0..τ_{m-1}` that is reduced, built by appending
/// letters that increase the length.
pub fn random_reduced_word<R: Rng>(m: usize, target_len: usize, rng: &mut R) -> WeylWord {
    let mut w = WeylWord { m, letters: Vec::new() };
    let mut attempts = 0;
    while w.letters.len() < target_len && attempts < 50 * (target_len + 1) {
        attempts += 1;
        let mut next = w.clone();
        next.letters.push(WeylLetter::Tau(rng.gen_range(0..m)));
        if next.length() == w.letters.len() + 1 {
            w = next;
        }
    }
    w
}

/// Every word reachable from `w` by braid and commutation moves among the
/// `τ_c`. For a reduced word these are all reduced words of the element.
pub fn braid_class(w: &WeylWord) -> BTreeSet<WeylWord> {
    let m = w.m;
    let adjacent = |c: usize, d: usize| (c + 1) % m == d || (d + 1) % m == c;
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = vec![w.clone()];
    while let Some(cur) = queue.pop() {
        let l = &cur.letters;
        for k in 0..l.len().saturating_sub(1) {
            let (WeylLetter::Tau(c), WeylLetter::Tau(d)) = (l[k], l[k + 1]) else {
                continue;
            };
            let mut next = l.clone();
            if c != d && !adjacent(c, d) {
                next.swap(k, k + 1);
            } else if m > 2 && c != d && k + 2 < l.len() && l[k + 2] == WeylLetter::Tau(c) {
                next[k] = WeylLetter::Tau(d);
                next[k + 1] = WeylLetter::Tau(c);
                next[k + 2] = WeylLetter::Tau(d);
            } else {
                continue;
            }
            let next = WeylWord { m, letters: next };
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen
}

/// A random reduced word of length `len` together with a different reduced
/// word of the same element. `None` if no such element turned up.
pub fn random_braid_pair<R: Rng>(m: usize, len: usize, rng: &mut R) -> Option<(WeylWord, WeylWord)> {
    for _ in 0..200 {
        let w = random_reduced_word(m, len, rng);
        let others: Vec<WeylWord> = braid_class(&w).into_iter().filter(|v| *v != w).collect();
        if !others.is_empty() {
            let v = others[rng.gen_range(0..others.len())].clone();
            return Some((w, v));
        }
    }
    None
}
