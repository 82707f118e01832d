//! `(C^m)^{⊗N} ⊗ M_mu` for a `gl_m` Verma module, the commuting `H_N`
//! action, and its `n`-coinvariants of a fixed weight.

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hecke_algebra::{add_term, content_of, HeckeElement, StandardModule};
use crate::matrix::{rref, OperatorMatrix};
use crate::permutations::{Composition, Permutation};
use crate::scalars::{genericity_witness, int, Scalar};

/// Sorted list of lowering roots `E_ab` (`a > b`, 1-based) applied to the
/// highest weight vector.
pub type PbwMonomial = Vec<(usize, usize)>;

type Letter = (usize, usize);

fn letter_key(l: &Letter) -> (u8, usize, usize) {
    let rank = match l.0.cmp(&l.1) {
        std::cmp::Ordering::Greater => 0,
        std::cmp::Ordering::Equal => 1,
        std::cmp::Ordering::Less => 2,
    };
    (rank, l.0, l.1)
}

/// `[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb`.
fn bracket(x: &Letter, y: &Letter) -> Vec<(Letter, Scalar)> {
    let mut out = Vec::new();
    if x.1 == y.0 {
        out.push(((x.0, y.1), Scalar::one()));
    }
    if y.1 == x.0 {
        out.push(((y.0, x.1), -Scalar::one()));
    }
    out
}

/// Verma module `M_mu` of `gl_m` in the PBW basis of lowering operators.
#[derive(Clone, Debug)]
pub struct VermaModule {
    pub mu: Vec<Scalar>,
}

impl VermaModule {
    pub fn new(mu: Vec<Scalar>) -> Self {
        VermaModule { mu }
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    /// Straightens `word · vac` into PBW monomials.
    pub fn apply_word(&self, word: Vec<Letter>) -> BTreeMap<PbwMonomial, Scalar> {
        let mut out = BTreeMap::new();
        let mut stack = vec![(word, Scalar::one())];
        while let Some((w, c)) = stack.pop() {
            let inv = (0..w.len().saturating_sub(1)).find(|&i| letter_key(&w[i]) > letter_key(&w[i + 1]));
            match inv {
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    stack.push((swapped, c.clone()));
                    for (z, cz) in bracket(&w[i], &w[i + 1]) {
                        let mut shorter = w[..i].to_vec();
                        shorter.push(z);
                        shorter.extend_from_slice(&w[i + 2..]);
                        stack.push((shorter, &c * cz));
                    }
                }
                None => {
                    let mut coef = c;
                    let mut mono = Vec::new();
                    let mut killed = false;
                    for l in w {
                        match l.0.cmp(&l.1) {
                            std::cmp::Ordering::Greater => mono.push(l),
                            std::cmp::Ordering::Equal => coef *= &self.mu[l.0 - 1],
                            std::cmp::Ordering::Less => {
                                killed = true;
                                break;
                            }
                        }
                    }
                    if !killed {
                        add_term(&mut out, mono, coef);
                    }
                }
            }
        }
        out
    }

    /// `E_cd` applied to a PBW monomial.
    pub fn act(&self, c: usize, d: usize, mono: &PbwMonomial) -> BTreeMap<PbwMonomial, Scalar> {
        let mut w = vec![(c, d)];
        w.extend_from_slice(mono);
        self.apply_word(w)
    }

    /// PBW monomials of weight `mu + w` where `w` is given as an integer
    /// offset; empty unless `w` is a sum of lowering roots.
    pub fn monomials_of_offset(&self, w: &[i64]) -> Vec<PbwMonomial> {
        let m = self.rank();
        let roots: Vec<Letter> = (1..=m).flat_map(|a| (1..a).map(move |b| (a, b))).collect();
        let height: i64 = w.iter().enumerate().map(|(c, &x)| (c as i64 + 1) * x).sum();
        if w.iter().sum::<i64>() != 0 || height < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        fn rec(
            roots: &[Letter],
            i: usize,
            rem: &mut Vec<i64>,
            height: i64,
            cur: &mut PbwMonomial,
            out: &mut Vec<PbwMonomial>,
        ) {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            for j in i..roots.len() {
                let (a, b) = roots[j];
                let h = (a - b) as i64;
                if h > height {
                    continue;
                }
                rem[a - 1] -= 1;
                rem[b - 1] += 1;
                cur.push((a, b));
                rec(roots, j, rem, height - h, cur, out);
                cur.pop();
                rem[a - 1] += 1;
                rem[b - 1] -= 1;
            }
        }
        let mut rem = w.to_vec();
        rec(&roots, 0, &mut rem, height, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TensorKey {
    pub spins: Vec<usize>,
    pub mono: PbwMonomial,
}

pub type TensorVector = BTreeMap<TensorKey, Scalar>;

/// Which Casimir-type operator realises `z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `z_p = Σ E_ab^{(p)} ⊗ E_ba`.
    Gl,
    /// The same minus `(1/m) Σ_a mu_a`.
    Sl,
}

/// The module `(C^m)^{⊗N} ⊗ M_mu`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub m: usize,
    pub n: usize,
    pub verma: VermaModule,
}

fn all_spins(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in &out {
            for a in 1..=m {
                let mut t = s.clone();
                t.push(a);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

impl TensorModule {
    pub fn new(n: usize, mu: Vec<Scalar>) -> Self {
        TensorModule { m: mu.len(), n, verma: VermaModule::new(mu) }
    }

    /// Basis of the component of weight `mu + offset`.
    pub fn weight_component(&self, offset: &[i64]) -> Vec<TensorKey> {
        let mut out = Vec::new();
        for spins in all_spins(self.m, self.n) {
            let mut w = offset.to_vec();
            for &a in &spins {
                w[a - 1] -= 1;
            }
            for mono in self.verma.monomials_of_offset(&w) {
                out.push(TensorKey { spins: spins.clone(), mono });
            }
        }
        out.sort();
        out
    }

    /// `E_cd` acting diagonally.
    pub fn apply_e(&self, c: usize, d: usize, v: &TensorVector) -> TensorVector {
        let mut out = BTreeMap::new();
        for (k, x) in v {
            for q in 0..self.n {
                if k.spins[q] == d {
                    let mut spins = k.spins.clone();
                    spins[q] = c;
                    add_term(&mut out, TensorKey { spins, mono: k.mono.clone() }, x.clone());
                }
            }
            for (mono, y) in self.verma.act(c, d, &k.mono) {
                add_term(&mut out, TensorKey { spins: k.spins.clone(), mono }, x * y);
            }
        }
        out
    }

    pub fn apply_perm(&self, w: &Permutation, v: &TensorVector) -> TensorVector {
        v.iter()
            .map(|(k, x)| (TensorKey { spins: w.act(&k.spins), mono: k.mono.clone() }, x.clone()))
            .collect()
    }

    /// `z_p` (1-based) in the chosen variant.
    pub fn apply_z(&self, p: usize, variant: Variant, v: &TensorVector) -> TensorVector {
        let mut out = BTreeMap::new();
        for (k, x) in v {
            let b = k.spins[p - 1];
            for a in 1..=self.m {
                let mut spins = k.spins.clone();
                spins[p - 1] = a;
                for (mono, y) in self.verma.act(b, a, &k.mono) {
                    add_term(&mut out, TensorKey { spins: spins.clone(), mono }, x * y);
                }
            }
        }
        if variant == Variant::Sl {
            let mean = self.verma.mu.iter().fold(Scalar::zero(), |s, x| s + x) / int(self.m as i64);
            for (k, x) in v {
                add_term(&mut out, k.clone(), -(x * &mean));
            }
        }
        out
    }

    /// `u_p = z_p + Σ_{r<p} σ_{rp}`.
    pub fn apply_u(&self, p: usize, variant: Variant, v: &TensorVector) -> TensorVector {
        let mut out = self.apply_z(p, variant, v);
        for r in 1..p {
            let t = Permutation::transposition(self.n, r, p).unwrap();
            for (k, x) in self.apply_perm(&t, v) {
                add_term(&mut out, k, x);
            }
        }
        out
    }

    pub fn apply_hecke(&self, a: &HeckeElement, variant: Variant, v: &TensorVector) -> Result<TensorVector> {
        if a.size() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: a.size() });
        }
        let mut out = BTreeMap::new();
        for ((w, e), c) in a.terms() {
            let mut t = v.clone();
            for (p, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = self.apply_u(p + 1, variant, &t);
                }
            }
            for (k, x) in self.apply_perm(w, &t) {
                add_term(&mut out, k, x * c);
            }
        }
        Ok(out)
    }

    /// Matrix of `a` on the weight component `mu + offset`.
    pub fn hecke_action_fin(
        &self,
        a: &HeckeElement,
        offset: &[i64],
        variant: Variant,
    ) -> Result<OperatorMatrix<TensorKey>> {
        let keys = self.weight_component(offset);
        OperatorMatrix::from_columns(&keys, &keys, |k| {
            let v = BTreeMap::from([(k.clone(), Scalar::one())]);
            self.apply_hecke(a, variant, &v)
        })
    }
}

/// The `n`-coinvariants of the weight `lambda` component.
#[derive(Clone, Debug)]
pub struct FiniteCoinvariants {
    pub module: TensorModule,
    pub nu: Composition,
    pub keys: Vec<TensorKey>,
    index: BTreeMap<TensorKey, usize>,
    relations: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// Positions in `keys` spanning the quotient.
    pub quotient: Vec<usize>,
}

impl FiniteCoinvariants {
    /// Refuses `mu` with an integral difference.
    pub fn new(mu: Vec<Scalar>, lambda: Vec<Scalar>) -> Result<Self> {
        if let Some((a, b, d)) = genericity_witness(&mu, &Scalar::zero()) {
            return Err(Error::NonGeneric { a, b, diff: crate::scalars::format_scalar(&d) });
        }
        let nu = content_of(&mu, &lambda)?;
        let module = TensorModule::new(nu.total(), mu);
        let offset: Vec<i64> = nu.parts().iter().map(|&k| k as i64).collect();
        let keys = module.weight_component(&offset);
        let index: BTreeMap<TensorKey, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let m = module.m;
        let mut rows = Vec::new();
        for a in 1..=m {
            for b in 1..a {
                // E_ab raises the weight by e_a - e_b
                let mut dom = offset.clone();
                dom[a - 1] -= 1;
                dom[b - 1] += 1;
                for k in module.weight_component(&dom) {
                    let v = module.apply_e(a, b, &BTreeMap::from([(k, Scalar::one())]));
                    let mut row = vec![Scalar::zero(); keys.len()];
                    for (t, x) in v {
                        row[index[&t]] = x;
                    }
                    rows.push(row);
                }
            }
        }
        let (relations, pivots) = if rows.is_empty() { (Vec::new(), Vec::new()) } else { rref(rows) };
        let quotient = (0..keys.len()).filter(|i| !pivots.contains(i)).collect();
        Ok(FiniteCoinvariants { module, nu, keys, index, relations, pivots, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.len()
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &TensorVector) -> Result<Vec<Scalar>> {
        let mut full = vec![Scalar::zero(); self.keys.len()];
        for (k, x) in v {
            let i = *self.index.get(k).ok_or_else(|| Error::BasisMismatch(format!("{k:?} has the wrong weight")))?;
            full[i] += x;
        }
        for (row, &c) in self.relations.iter().zip(&self.pivots) {
            if full[c].is_zero() {
                continue;
            }
            let f = full[c].clone();
            for (a, b) in full.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        Ok(self.quotient.iter().map(|&i| full[i].clone()).collect())
    }

    pub fn quotient_keys(&self) -> Vec<TensorKey> {
        self.quotient.iter().map(|&i| self.keys[i].clone()).collect()
    }

    pub fn action(&self, a: &HeckeElement, variant: Variant) -> Result<OperatorMatrix<TensorKey>> {
        let basis = self.quotient_keys();
        let mut m = OperatorMatrix::zeros(basis.clone(), basis.clone());
        for (j, k) in basis.iter().enumerate() {
            let img = self.module.apply_hecke(a, variant, &BTreeMap::from([(k.clone(), Scalar::one())]))?;
            for (i, x) in self.project(&img)?.into_iter().enumerate() {
                m.entries[i][j] = x;
            }
        }
        Ok(m)
    }

    /// `e_1^{nu_1} ⊗ ... ⊗ e_m^{nu_m} ⊗ vac`.
    pub fn cyclic_vector(&self) -> TensorVector {
        let spins = self.nu.block_of_positions().into_iter().map(|a| a + 1).collect();
        BTreeMap::from([(TensorKey { spins, mono: Vec::new() }, Scalar::one())])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub variant: String,
    pub dim: usize,
    pub expected_dim: usize,
    pub cyclic_invariant: bool,
    #[serde(with = "crate::scalars::serde_scalar_vec")]
    pub eigenvalues: Vec<Scalar>,
    #[serde(with = "crate::scalars::serde_scalar_vec")]
    pub expected_eigenvalues: Vec<Scalar>,
    pub eigenvector: bool,
    pub generates: bool,
    pub intertwines: bool,
    pub passed: bool,
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Scalar::zero(), |s, (x, r)| s + x * &r[j]))
                .collect()
        })
        .collect()
}

/// Checks that the coinvariants are isomorphic to the standard module
/// (pulled back by the mean shift in the `Sl` variant) through the map
/// sending `w ⊗ 1` to `w` applied to the cyclic vector.
pub fn check_standard_iso(mu: Vec<Scalar>, lambda: Vec<Scalar>, variant: Variant) -> Result<IsoReport> {
    let co = FiniteCoinvariants::new(mu.clone(), lambda.clone())?;
    let std = StandardModule::new(mu.clone(), lambda)?;
    let n = std.size();
    let shift = match variant {
        Variant::Gl => Scalar::zero(),
        Variant::Sl => -(mu.iter().fold(Scalar::zero(), |s, x| s + x) / int(mu.len() as i64)),
    };
    let cyc = co.cyclic_vector();
    let cyc_coords = co.project(&cyc)?;

    let mut cyclic_invariant = true;
    for (p, (a, _)) in std.nu.block_offsets().iter().enumerate().skip(1) {
        if std.nu.block_of_positions()[p - 1] == *a {
            let s = Permutation::simple(n, p)?;
            if co.project(&co.module.apply_perm(&s, &cyc))? != cyc_coords {
                cyclic_invariant = false;
            }
        }
    }

    let expected_eigenvalues: Vec<Scalar> = std.character.iter().map(|c| c + &shift).collect();
    let mut eigenvalues = Vec::new();
    let mut eigenvector = true;
    let pivot = cyc_coords.iter().position(|x| !x.is_zero());
    for p in 1..=n {
        let img = co.project(&co.module.apply_u(p, variant, &cyc))?;
        let ev = match pivot {
            Some(i) => &img[i] / &cyc_coords[i],
            None => Scalar::zero(),
        };
        if img.iter().zip(&cyc_coords).any(|(x, y)| *x != &ev * y) {
            eigenvector = false;
        }
        eigenvalues.push(ev);
    }

    // columns: images of the coset basis
    let mut phi = vec![vec![Scalar::zero(); std.dim()]; co.dim()];
    for (j, w) in std.basis.iter().enumerate() {
        for (i, x) in co.project(&co.module.apply_perm(w, &cyc))?.into_iter().enumerate() {
            phi[i][j] = x;
        }
    }
    let generates = co.dim() == std.dim() && crate::matrix::rank(phi.clone()) == std.dim();

    let mut gens = Vec::new();
    for p in 1..n {
        gens.push(HeckeElement::sigma(n, p)?);
    }
    for p in 1..=n {
        gens.push(HeckeElement::z(n, p)?);
    }
    let mut intertwines = true;
    for g in &gens {
        let lhs = mat_mul(&co.action(g, variant)?.entries, &phi);
        let rhs = mat_mul(&phi, &std.standard_action(&g.shift(&shift))?.entries);
        if lhs != rhs {
            intertwines = false;
        }
    }
    let dim = co.dim();
    let expected_dim = std.nu.coset_count();
    let passed = dim == expected_dim
        && cyclic_invariant
        && eigenvector
        && eigenvalues == expected_eigenvalues
        && generates
        && intertwines;
    Ok(IsoReport {
        variant: format!("{variant:?}").to_lowercase(),
        dim,
        expected_dim,
        cyclic_invariant,
        eigenvalues,
        expected_eigenvalues,
        eigenvector,
        generates,
        intertwines,
        passed,
    })
}
