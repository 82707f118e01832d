//! The trigonometric Cherednik algebra `C_N` in the normal form
//! `x^v · σ · u^k`, and the induced modules `P_N ⊗ S_mu^lambda`.

use num::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hecke_algebra::{add_term, pow_scalar, random_coefficient, HeckeElement, StandardModule};
use crate::matrix::OperatorMatrix;
use crate::permutations::{bounded_vectors, coset_rep, Permutation};
use crate::scalars::{format_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CherednikKey {
    pub x: Vec<i64>,
    pub perm: Permutation,
    pub u: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherednikElement {
    n: usize,
    kappa: Scalar,
    terms: BTreeMap<CherednikKey, Scalar>,
}

/// `(δ, ρ, c)` standing for `c x^δ ρ`.
type GroupTerm = (Vec<i64>, Permutation, Scalar);

fn unit(n: usize, p: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[p] = 1;
    e
}

fn check_index(p: usize, n: usize) -> Result<()> {
    if p == 0 || p > n {
        return Err(Error::IndexOutOfRange { index: p, bound: n });
    }
    Ok(())
}

impl CherednikElement {
    pub fn zero(n: usize, kappa: Scalar) -> Self {
        CherednikElement { n, kappa, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, kappa: Scalar) -> Self {
        Self::monomial(vec![0; n], Permutation::identity(n), vec![0; n], kappa)
    }

    pub fn monomial(x: Vec<i64>, perm: Permutation, u: Vec<u32>, kappa: Scalar) -> Self {
        let n = perm.size();
        let mut out = Self::zero(n, kappa);
        out.terms.insert(CherednikKey { x, perm, u }, Scalar::one());
        out
    }

    pub fn x_monomial(x: Vec<i64>, kappa: Scalar) -> Self {
        let n = x.len();
        Self::monomial(x, Permutation::identity(n), vec![0; n], kappa)
    }

    /// `x_p^{e}` with `e = ±1`.
    pub fn x(n: usize, p: usize, e: i64, kappa: Scalar) -> Result<Self> {
        check_index(p, n)?;
        let mut v = vec![0; n];
        v[p - 1] = e;
        Ok(Self::x_monomial(v, kappa))
    }

    pub fn from_hecke(h: &HeckeElement, kappa: Scalar) -> Self {
        let n = h.size();
        let mut out = Self::zero(n, kappa);
        for ((w, e), c) in h.terms() {
            add_term(
                &mut out.terms,
                CherednikKey { x: vec![0; n], perm: w.clone(), u: e.clone() },
                c.clone(),
            );
        }
        out
    }

    pub fn u(n: usize, p: usize, kappa: Scalar) -> Result<Self> {
        Ok(Self::from_hecke(&HeckeElement::u(n, p)?, kappa))
    }

    pub fn z(n: usize, p: usize, kappa: Scalar) -> Result<Self> {
        Ok(Self::from_hecke(&HeckeElement::z(n, p)?, kappa))
    }

    pub fn sigma(n: usize, p: usize, kappa: Scalar) -> Result<Self> {
        Ok(Self::from_hecke(&HeckeElement::sigma(n, p)?, kappa))
    }

    pub fn from_perm(w: &Permutation, kappa: Scalar) -> Self {
        Self::from_hecke(&HeckeElement::from_perm(w), kappa)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> &Scalar {
        &self.kappa
    }

    pub fn terms(&self) -> &BTreeMap<CherednikKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch { expected: self.n, got: rhs.n });
        }
        if self.kappa != rhs.kappa {
            return Err(Error::KappaMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.compatible(rhs)?;
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
        let mut out = Self::zero(self.n, self.kappa.clone());
        for (k, a) in &self.terms {
            add_term(&mut out.terms, k.clone(), a * c);
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// The automorphism `u_p ↦ u_p + f`, fixing the `x_p^{±1}` and the
    /// permutations.
    pub fn shift(&self, f: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.kappa.clone());
        for (k, c) in &self.terms {
            let h = HeckeElement::monomial(k.perm.clone(), k.u.clone(), c.clone()).shift(f);
            for ((perm, u), a) in h.terms() {
                add_term(&mut out.terms, CherednikKey { x: k.x.clone(), perm: perm.clone(), u: u.clone() }, a.clone());
            }
        }
        out
    }

    /// `[u_p, x_q^{e}]` as a combination of `x^δ ρ` (0-based indices).
    fn commutator_u_x(&self, p: usize, q: usize, e: i64) -> Vec<GroupTerm> {
        let n = self.n;
        let t = |a: usize, b: usize| Permutation::transposition(n, a + 1, b + 1).unwrap();
        let mut plus: Vec<GroupTerm> = Vec::new();
        if q < p {
            plus.push((unit(n, q), t(p, q), -Scalar::one()));
        } else if q > p {
            plus.push((unit(n, p), t(p, q), -Scalar::one()));
        } else {
            plus.push((unit(n, p), Permutation::identity(n), self.kappa.clone()));
            for r in 0..n {
                if r < p {
                    plus.push((unit(n, r), t(p, r), Scalar::one()));
                } else if r > p {
                    plus.push((unit(n, p), t(p, r), Scalar::one()));
                }
            }
        }
        if e > 0 {
            return plus;
        }
        // [u, x^{-1}] = -x^{-1} [u, x] x^{-1}
        plus.into_iter()
            .map(|(mut d, rho, c)| {
                d[q] -= 1;
                d[rho.at(q)] -= 1;
                (d, rho, -c)
            })
            .collect()
    }

    /// `[u_p, x^γ]` by the Leibniz rule over the factors of `x^γ`.
    fn commutator_u_xmono(&self, p: usize, gamma: &[i64]) -> Vec<GroupTerm> {
        let mut factors = Vec::new();
        for (q, &g) in gamma.iter().enumerate() {
            for _ in 0..g.unsigned_abs() {
                factors.push((q, g.signum()));
            }
        }
        let mut out = Vec::new();
        let mut prefix = vec![0i64; self.n];
        for j in 0..factors.len() {
            let mut suffix = vec![0i64; self.n];
            for &(q, e) in &factors[j + 1..] {
                suffix[q] += e;
            }
            let (q, e) = factors[j];
            for (d, rho, c) in self.commutator_u_x(p, q, e) {
                let moved = rho.act(&suffix);
                let x: Vec<i64> = (0..self.n).map(|i| prefix[i] + d[i] + moved[i]).collect();
                out.push((x, rho, c));
            }
            prefix[q] += e;
        }
        out
    }

    /// `u_p · self`, 0-based `p`.
    fn lmul_u(&self, p: usize) -> Self {
        let n = self.n;
        let up = HeckeElement::u(n, p + 1).unwrap();
        let mut out = Self::zero(n, self.kappa.clone());
        for (k, c) in &self.terms {
            let tail = HeckeElement::monomial(k.perm.clone(), k.u.clone(), c.clone());
            for ((w, e), a) in up.mul(&tail).unwrap().terms() {
                let x = k.x.clone();
                add_term(&mut out.terms, CherednikKey { x, perm: w.clone(), u: e.clone() }, a.clone());
            }
            for (x, rho, a) in self.commutator_u_xmono(p, &k.x) {
                let key = CherednikKey { x, perm: rho.then(&k.perm), u: k.u.clone() };
                add_term(&mut out.terms, key, a * c);
            }
        }
        out
    }

    fn lmul_perm(&self, w: &Permutation) -> Self {
        let mut out = Self::zero(self.n, self.kappa.clone());
        for (k, c) in &self.terms {
            let key = CherednikKey { x: w.act(&k.x), perm: w.then(&k.perm), u: k.u.clone() };
            add_term(&mut out.terms, key, c.clone());
        }
        out
    }

    fn lmul_x(&self, v: &[i64]) -> Self {
        let mut out = Self::zero(self.n, self.kappa.clone());
        for (k, c) in &self.terms {
            let x = k.x.iter().zip(v).map(|(a, b)| a + b).collect();
            add_term(&mut out.terms, CherednikKey { x, perm: k.perm.clone(), u: k.u.clone() }, c.clone());
        }
        out
    }

    /// Product in normal form, computed through the left regular action of
    /// the generators.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.compatible(rhs)?;
        let mut out = Self::zero(self.n, self.kappa.clone());
        let mut by_u: BTreeMap<&Vec<u32>, CherednikElement> = BTreeMap::new();
        for (k, c) in &self.terms {
            let right = by_u.entry(&k.u).or_insert_with(|| {
                let mut t = rhs.clone();
                for (p, &e) in k.u.iter().enumerate() {
                    for _ in 0..e {
                        t = t.lmul_u(p);
                    }
                }
                t
            });
            let t = right.lmul_perm(&k.perm).lmul_x(&k.x);
            for (key, a) in t.terms {
                add_term(&mut out.terms, key, a * c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CherednikElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", format_scalar(c))?;
            for (p, &e) in k.x.iter().enumerate() {
                if e != 0 {
                    write!(f, " x{}^{}", p + 1, e)?;
                }
            }
            write!(f, " {}", k.perm)?;
            for (p, &e) in k.u.iter().enumerate() {
                if e > 0 {
                    write!(f, " u{}^{}", p + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Random element with `terms` monomials, `x`-exponents in `[-max_x, max_x]`
/// and `u`-exponents at most `max_u`.
pub fn random_element<R: rand::Rng>(n: usize, kappa: &Scalar, terms: usize, max_x: i64, max_u: u32, rng: &mut R) -> CherednikElement {
    let mut out = CherednikElement::zero(n, kappa.clone());
    for _ in 0..terms {
        let x = (0..n).map(|_| rng.gen_range(-max_x..=max_x)).collect();
        let perm = Permutation::random(n, rng);
        let u = (0..n).map(|_| rng.gen_range(0..=max_u)).collect();
        add_term(&mut out.terms, CherednikKey { x, perm, u }, random_coefficient(rng));
    }
    out
}

/// Residuals of the defining relations of `C_N` in the `z`-form; each must
/// reduce to zero.
pub fn relation_residuals(n: usize, kappa: &Scalar) -> Result<Vec<(String, CherednikElement)>> {
    let k = kappa.clone();
    let mut out = Vec::new();
    let x: Vec<CherednikElement> = (1..=n).map(|p| CherednikElement::x(n, p, 1, k.clone())).collect::<Result<_>>()?;
    let xi: Vec<CherednikElement> = (1..=n).map(|p| CherednikElement::x(n, p, -1, k.clone())).collect::<Result<_>>()?;
    let z: Vec<CherednikElement> = (1..=n).map(|p| CherednikElement::z(n, p, k.clone())).collect::<Result<_>>()?;
    let one = CherednikElement::one(n, k.clone());
    for p in 0..n {
        out.push((format!("x{0} x{0}^-1 = 1", p + 1), x[p].mul(&xi[p])?.sub(&one)?));
        for q in 0..n {
            out.push((format!("[x{}, x{}] = 0", p + 1, q + 1), x[p].commutator(&x[q])?));
            let lhs = z[p].commutator(&x[q])?;
            let rhs = if p != q {
                let t = CherednikElement::from_perm(&Permutation::transposition(n, p + 1, q + 1)?, k.clone());
                x[p].mul(&t)?.scale(&-Scalar::one())
            } else {
                let mut acc = x[p].scale(kappa);
                for r in 0..n {
                    if r != p {
                        let t = CherednikElement::from_perm(&Permutation::transposition(n, p + 1, r + 1)?, k.clone());
                        acc = acc.add(&x[p].mul(&t)?)?;
                    }
                }
                acc
            };
            out.push((format!("[z{}, x{}]", p + 1, q + 1), lhs.sub(&rhs)?));
        }
    }
    for w in Permutation::all(n) {
        let sw = CherednikElement::from_perm(&w, k.clone());
        let swi = CherednikElement::from_perm(&w.inverse(), k.clone());
        for p in 0..n {
            let lhs = sw.mul(&x[p])?.mul(&swi)?;
            out.push((format!("{w} x{} {w}^-1 = x{}", p + 1, w.at(p) + 1), lhs.sub(&x[w.at(p)])?));
            let lhs = sw.mul(&z[p])?.mul(&swi)?;
            out.push((format!("{w} z{} {w}^-1 = z{}", p + 1, w.at(p) + 1), lhs.sub(&z[w.at(p)])?));
        }
    }
    for (name, r) in crate::hecke_algebra::relation_residuals(n)? {
        out.push((name, CherednikElement::from_hecke(&r, k.clone())));
    }
    Ok(out)
}

/// A basis element `x^v ⊗ (w ⊗ 1)` of the induced module.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InducedKey {
    pub x: Vec<i64>,
    pub rep: Permutation,
}

/// Finite slice of `P_N ⊗ S_mu^lambda`: total x-degree `degree`, every
/// exponent in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBox {
    pub degree: i64,
    pub lo: i64,
    pub hi: i64,
    pub keys: Vec<InducedKey>,
}

#[derive(Clone, Debug)]
pub struct InducedModule {
    pub standard: StandardModule,
    pub kappa: Scalar,
}

impl InducedModule {
    pub fn new(standard: StandardModule, kappa: Scalar) -> Self {
        InducedModule { standard, kappa }
    }

    pub fn size(&self) -> usize {
        self.standard.size()
    }

    pub fn box_basis(&self, degree: i64, lo: i64, hi: i64) -> InducedBox {
        let mut keys = Vec::new();
        for x in bounded_vectors(self.size(), degree, lo, hi) {
            for w in &self.standard.basis {
                keys.push(InducedKey { x: x.clone(), rep: w.clone() });
            }
        }
        keys.sort();
        InducedBox { degree, lo, hi, keys }
    }

    /// `A · (x^v ⊗ w ⊗ 1)` expanded in induced basis keys.
    pub fn act(&self, a: &CherednikElement, key: &InducedKey) -> Result<BTreeMap<InducedKey, Scalar>> {
        if a.size() != self.size() {
            return Err(Error::SizeMismatch { expected: self.size(), got: a.size() });
        }
        if a.kappa() != &self.kappa {
            return Err(Error::KappaMismatch);
        }
        let v = CherednikElement::monomial(key.x.clone(), key.rep.clone(), vec![0; self.size()], self.kappa.clone());
        let prod = a.mul(&v)?;
        let mut out = BTreeMap::new();
        for (k, c) in prod.terms() {
            let mut val = c.clone();
            for (p, &e) in k.u.iter().enumerate() {
                val *= pow_scalar(&self.standard.character[p], e);
            }
            add_term(&mut out, InducedKey { x: k.x.clone(), rep: coset_rep(&k.perm, &self.standard.nu) }, val);
        }
        Ok(out)
    }

    pub fn induced_action(
        &self,
        a: &CherednikElement,
        source: &InducedBox,
        target: &InducedBox,
    ) -> Result<OperatorMatrix<InducedKey>> {
        OperatorMatrix::from_columns(&source.keys, &target.keys, |k| self.act(a, k))
    }
}
