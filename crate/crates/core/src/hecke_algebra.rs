//! The degenerate affine Hecke algebra `H_N` in the normal form `σ · u^k`,
//! and the standard modules induced from one-dimensional characters.

use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::permutations::{coset_rep, min_coset_reps, Composition, Permutation};
use crate::scalars::{format_scalar, int, to_i64, Scalar};

pub type HeckeKey = (Permutation, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<HeckeKey, Scalar>,
}

pub(crate) fn add_term<K: Ord>(terms: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn check_index(p: usize, n: usize) -> Result<()> {
    if p == 0 || p > n {
        return Err(Error::IndexOutOfRange { index: p, bound: n });
    }
    Ok(())
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_perm(&Permutation::identity(n))
    }

    pub fn from_perm(w: &Permutation) -> Self {
        Self::monomial(w.clone(), vec![0; w.size()], Scalar::one())
    }

    pub fn monomial(w: Permutation, exps: Vec<u32>, c: Scalar) -> Self {
        let n = w.size();
        let mut terms = BTreeMap::new();
        add_term(&mut terms, (w, exps), c);
        HeckeElement { n, terms }
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::monomial(Permutation::identity(n), vec![0; n], c)
    }

    /// The generator `u_p`.
    pub fn u(n: usize, p: usize) -> Result<Self> {
        check_index(p, n)?;
        let mut e = vec![0; n];
        e[p - 1] = 1;
        Ok(Self::monomial(Permutation::identity(n), e, Scalar::one()))
    }

    /// The simple transposition `σ_p`.
    pub fn sigma(n: usize, p: usize) -> Result<Self> {
        Ok(Self::from_perm(&Permutation::simple(n, p)?))
    }

    pub fn transposition(n: usize, p: usize, q: usize) -> Result<Self> {
        Ok(Self::from_perm(&Permutation::transposition(n, p, q)?))
    }

    /// `z_p = u_p - Σ_{r<p} σ_{rp}`.
    pub fn z(n: usize, p: usize) -> Result<Self> {
        let mut out = Self::u(n, p)?;
        for r in 1..p {
            out = out.sub(&Self::transposition(n, r, p)?)?;
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<HeckeKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_size(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch { expected: self.n, got: rhs.n });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_size(rhs)?;
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            add_term(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (k, a) in &self.terms {
            add_term(&mut out.terms, k.clone(), a * c);
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Right multiplication by `σ_q` (0-based `q` swaps `q, q+1`), using
    /// `f σ_q = σ_q (s_q f) + (f - s_q f) / (u_{q+1} - u_q)`.
    pub(crate) fn right_mul_simple(&self, q: usize) -> Self {
        let s = Permutation::simple(self.n, q + 1).expect("simple index in range");
        let mut out = Self::zero(self.n);
        for ((w, e), c) in &self.terms {
            let mut se = e.clone();
            se.swap(q, q + 1);
            add_term(&mut out.terms, (w.then(&s), se), c.clone());
            let (a, b) = (e[q], e[q + 1]);
            if a > b {
                let d = a - b;
                for j in 0..d {
                    let mut f = e.clone();
                    f[q] = b + d - 1 - j;
                    f[q + 1] = b + j;
                    add_term(&mut out.terms, (w.clone(), f), -c.clone());
                }
            } else if a < b {
                let d = b - a;
                for j in 0..d {
                    let mut f = e.clone();
                    f[q] = a + j;
                    f[q + 1] = a + d - 1 - j;
                    add_term(&mut out.terms, (w.clone(), f), c.clone());
                }
            }
        }
        out
    }

    pub(crate) fn right_mul_perm(&self, w: &Permutation) -> Self {
        let mut out = self.clone();
        for q in w.reduced_word() {
            out = out.right_mul_simple(q - 1);
        }
        out
    }

    fn right_mul_umono(&self, k: &[u32]) -> Self {
        let mut out = Self::zero(self.n);
        for ((w, e), c) in &self.terms {
            let f: Vec<u32> = e.iter().zip(k).map(|(a, b)| a + b).collect();
            add_term(&mut out.terms, (w.clone(), f), c.clone());
        }
        out
    }

    /// Product in normal form.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_size(rhs)?;
        let mut out = Self::zero(self.n);
        let mut by_perm: BTreeMap<&Permutation, HeckeElement> = BTreeMap::new();
        for ((w, k), c) in &rhs.terms {
            let left = by_perm.entry(w).or_insert_with(|| self.right_mul_perm(w));
            for (key, a) in left.right_mul_umono(k).terms {
                add_term(&mut out.terms, key, a * c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The homomorphism to the group algebra with `u_p ↦ Σ_{r<p} σ_{rp}`.
    pub fn evaluate_to_group_algebra(&self) -> Self {
        let n = self.n;
        let jm: Vec<HeckeElement> = (1..=n)
            .map(|p| {
                let mut acc = Self::zero(n);
                for r in 1..p {
                    acc = acc.add(&Self::transposition(n, r, p).unwrap()).unwrap();
                }
                acc
            })
            .collect();
        let mut out = Self::zero(n);
        for ((w, e), c) in &self.terms {
            let mut t = Self::from_perm(w).scale(c);
            for (p, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&jm[p]).unwrap();
                }
            }
            out = out.add(&t).unwrap();
        }
        out
    }

    /// The automorphism `u_p ↦ u_p + f`, fixing permutations.
    pub fn shift(&self, f: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for ((w, e), c) in &self.terms {
            // expand Π (u_p + f)^{e_p}
            let mut partial: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
            partial.insert(vec![0; self.n], c.clone());
            for (p, &k) in e.iter().enumerate() {
                let mut next = BTreeMap::new();
                for (mono, a) in &partial {
                    for j in 0..=k {
                        let mut m = mono.clone();
                        m[p] += j;
                        let coeff = binomial(k, j) * pow_scalar(f, k - j);
                        add_term(&mut next, m, a * coeff);
                    }
                }
                partial = next;
            }
            for (m, a) in partial {
                add_term(&mut out.terms, (w.clone(), m), a);
            }
        }
        out
    }

    /// Whether the element lies in the group algebra (no `u` factors).
    pub fn is_group_algebra(&self) -> bool {
        self.terms.keys().all(|(_, e)| e.iter().all(|&k| k == 0))
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> Scalar {
    let mut c = Scalar::one();
    for j in 0..k {
        c = c * int((n - j) as i64) / int((j + 1) as i64);
    }
    c
}

pub(crate) fn pow_scalar(x: &Scalar, k: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Small random rational coefficient, nonzero.
pub(crate) fn random_coefficient<R: rand::Rng>(rng: &mut R) -> Scalar {
    let p = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    Scalar::new(p.into(), rng.gen_range(1..4i64).into())
}

/// Random element with `terms` monomials and `u`-exponents at most `max_u`.
pub fn random_element<R: rand::Rng>(n: usize, terms: usize, max_u: u32, rng: &mut R) -> HeckeElement {
    let mut out = HeckeElement::zero(n);
    for _ in 0..terms {
        let w = Permutation::random(n, rng);
        let e = (0..n).map(|_| rng.gen_range(0..=max_u)).collect();
        add_term(&mut out.terms, (w, e), random_coefficient(rng));
    }
    out
}

/// Residuals of the defining relations of `H_N` plus the derived identities
/// for the `z_p`; each must reduce to zero.
pub fn relation_residuals(n: usize) -> Result<Vec<(String, HeckeElement)>> {
    let mut out = Vec::new();
    let one = HeckeElement::one(n);
    let s: Vec<HeckeElement> = (1..n).map(|p| HeckeElement::sigma(n, p)).collect::<Result<_>>()?;
    let u: Vec<HeckeElement> = (1..=n).map(|p| HeckeElement::u(n, p)).collect::<Result<_>>()?;
    let z: Vec<HeckeElement> = (1..=n).map(|p| HeckeElement::z(n, p)).collect::<Result<_>>()?;
    for p in 0..n.saturating_sub(1) {
        out.push((format!("s{0} s{0} = 1", p + 1), s[p].mul(&s[p])?.sub(&one)?));
        if p + 2 < n {
            let l = s[p].mul(&s[p + 1])?.mul(&s[p])?;
            let r = s[p + 1].mul(&s[p])?.mul(&s[p + 1])?;
            out.push((format!("braid s{} s{}", p + 1, p + 2), l.sub(&r)?));
        }
        for q in p + 2..n.saturating_sub(1) {
            out.push((format!("[s{}, s{}] = 0", p + 1, q + 1), s[p].commutator(&s[q])?));
        }
        for q in 0..n {
            let res = if q == p {
                s[p].mul(&u[p])?.sub(&u[p + 1].mul(&s[p])?)?.add(&one)?
            } else if q == p + 1 {
                continue;
            } else {
                s[p].commutator(&u[q])?
            };
            out.push((format!("s{} u{}", p + 1, q + 1), res));
        }
    }
    for p in 0..n {
        for q in 0..n {
            out.push((format!("[u{}, u{}] = 0", p + 1, q + 1), u[p].commutator(&u[q])?));
            if p != q {
                let t = HeckeElement::transposition(n, p + 1, q + 1)?;
                let rhs = t.mul(&z[p].sub(&z[q])?)?;
                out.push((format!("[z{}, z{}]", p + 1, q + 1), z[p].commutator(&z[q])?.sub(&rhs)?));
            }
        }
    }
    for w in crate::permutations::Permutation::all(n) {
        let hw = HeckeElement::from_perm(&w);
        let hwi = HeckeElement::from_perm(&w.inverse());
        for p in 0..n {
            let lhs = hw.mul(&z[p])?.mul(&hwi)?;
            out.push((format!("{w} z{} {w}^-1", p + 1), lhs.sub(&z[w.at(p)])?));
        }
    }
    Ok(out)
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((w, e), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {}", format_scalar(c), w)?;
            for (p, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, " u{}^{}", p + 1, k)?;
                }
            }
        }
        Ok(())
    }
}

/// `H_N ⊗_{H_nu} C_c` where the block subgroup acts trivially and `u_p` acts
/// by `c_p = mu_a - a + h` for position `p` = `h`-th slot of block `a`.
#[derive(Clone, Debug)]
pub struct StandardModule {
    pub mu: Vec<Scalar>,
    pub lambda: Vec<Scalar>,
    pub nu: Composition,
    pub basis: Vec<Permutation>,
    pub character: Vec<Scalar>,
}

/// `lambda - mu` as a composition; errors unless every entry is a
/// nonnegative integer.
pub fn content_of(mu: &[Scalar], lambda: &[Scalar]) -> Result<Composition> {
    if mu.len() != lambda.len() {
        return Err(Error::SizeMismatch { expected: mu.len(), got: lambda.len() });
    }
    let mut parts = Vec::with_capacity(mu.len());
    for (a, (m, l)) in mu.iter().zip(lambda).enumerate() {
        let d = l - m;
        match to_i64(&d) {
            Some(k) if k >= 0 => parts.push(k as usize),
            _ => {
                return Err(Error::InvalidComposition(format!(
                    "lambda_{0} - mu_{0} = {1} is not a nonnegative integer",
                    a + 1,
                    format_scalar(&d)
                )))
            }
        }
    }
    Ok(Composition(parts))
}

impl StandardModule {
    pub fn new(mu: Vec<Scalar>, lambda: Vec<Scalar>) -> Result<Self> {
        let nu = content_of(&mu, &lambda)?;
        let character = nu
            .block_offsets()
            .into_iter()
            .map(|(a, h)| &mu[a] - int(a as i64 + 1) + int(h as i64))
            .collect();
        let basis = min_coset_reps(&nu);
        Ok(StandardModule { mu, lambda, nu, basis, character })
    }

    pub fn size(&self) -> usize {
        self.nu.total()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `A · (w ⊗ 1)` in the coset basis.
    pub fn act(&self, a: &HeckeElement, w: &Permutation) -> Result<BTreeMap<Permutation, Scalar>> {
        if a.size() != self.size() {
            return Err(Error::SizeMismatch { expected: self.size(), got: a.size() });
        }
        let prod = a.right_mul_perm(w);
        let mut out = BTreeMap::new();
        for ((pi, e), c) in prod.terms() {
            let mut v = c.clone();
            for (p, &k) in e.iter().enumerate() {
                v *= pow_scalar(&self.character[p], k);
            }
            add_term(&mut out, coset_rep(pi, &self.nu), v);
        }
        Ok(out)
    }

    pub fn standard_action(&self, a: &HeckeElement) -> Result<OperatorMatrix<Permutation>> {
        OperatorMatrix::from_columns(&self.basis, &self.basis, |w| self.act(a, w))
    }
}
