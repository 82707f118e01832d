//! Coinvariants `(P_N ⊗ (C^m)^{⊗N} ⊗ M)_{n̂}` of an affine `sl_m` Verma
//! module `M`, in the basis `Y_a^i = x^i ⊗ e_a ⊗ vac`, with the Cherednik
//! operators `θ_p` and the reduction of general elements to that basis.

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::affine_lie::{bracket, Letter, Part};
use crate::affine_weyl::{act_loop_vector, act_weight, WeylLetter};
use crate::error::{Error, Result};
use crate::cherednik_algebra::{CherednikElement, InducedKey, InducedModule};
use crate::hecke_algebra::{add_term, content_of, StandardModule};
use crate::report::{compare_vectors, Report};
use crate::matrix::OperatorMatrix;
use crate::permutations::{bounded_vectors, min_coset_reps, Composition, Permutation};
use crate::scalars::{format_scalar, genericity_witness, int, serde_scalar, serde_scalar_vec, Scalar};

/// Highest weight data of one fiber: the Verma weight `mu` (a `gl_m`
/// representative), the total weight `lambda = mu + nu`, `kappa`, and the
/// level, which must equal `kappa - m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberWeights {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "serde_scalar")]
    pub kappa: Scalar,
    #[serde(with = "serde_scalar")]
    pub level: Scalar,
    #[serde(with = "serde_scalar_vec")]
    pub mu: Vec<Scalar>,
    #[serde(with = "serde_scalar_vec")]
    pub lambda: Vec<Scalar>,
}

pub type ParameterSet = FiberWeights;

impl FiberWeights {
    pub fn new(kappa: Scalar, mu: Vec<Scalar>, lambda: Vec<Scalar>) -> Result<Self> {
        let level = &kappa - int(mu.len() as i64);
        Self::with_level(kappa, level, mu, lambda)
    }

    pub fn with_level(kappa: Scalar, level: Scalar, mu: Vec<Scalar>, lambda: Vec<Scalar>) -> Result<Self> {
        let m = mu.len();
        if m < 2 {
            return Err(Error::InvalidParameters("need m >= 2".into()));
        }
        let expected = &kappa - int(m as i64);
        if level != expected {
            return Err(Error::LevelMismatch { level: format_scalar(&level), expected: format_scalar(&expected) });
        }
        let nu = content_of(&mu, &lambda)?;
        Ok(FiberWeights { m, n: nu.total(), kappa, level, mu, lambda })
    }

    /// `lambda = mu + nu`.
    pub fn from_content(kappa: Scalar, mu: Vec<Scalar>, nu: &[usize]) -> Result<Self> {
        if nu.len() != mu.len() {
            return Err(Error::SizeMismatch { expected: mu.len(), got: nu.len() });
        }
        let lambda = mu.iter().zip(nu).map(|(x, &k)| x + int(k as i64)).collect();
        Self::new(kappa, mu, lambda)
    }

    pub fn nu(&self) -> Composition {
        content_of(&self.mu, &self.lambda).expect("validated on construction")
    }

    pub fn mean_mu(&self) -> Scalar {
        self.mu.iter().fold(Scalar::zero(), |s, x| s + x) / int(self.m as i64)
    }

    pub fn genericity_witness(&self) -> Option<(usize, usize, Scalar)> {
        genericity_witness(&self.mu, &self.kappa)
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_witness().is_none()
    }

    pub fn require_generic(&self) -> Result<()> {
        match self.genericity_witness() {
            Some((a, b, d)) => Err(Error::NonGeneric { a, b, diff: format_scalar(&d) }),
            None => Ok(()),
        }
    }

    /// Weights of the fiber reached by a letter (shifted action).
    pub fn act(&self, l: WeylLetter) -> FiberWeights {
        FiberWeights {
            m: self.m,
            n: self.n,
            kappa: self.kappa.clone(),
            level: self.level.clone(),
            mu: act_weight(l, &self.level, &self.mu, true),
            lambda: act_weight(l, &self.level, &self.lambda, true),
        }
    }

    /// Value of the highest weight on a Cartan letter.
    pub fn cartan_value(&self, l: &Letter) -> Scalar {
        match *l {
            Letter::Central => self.level.clone(),
            Letter::Cartan { c, i: 0 } => &self.mu[c - 1] - &self.mu[c],
            _ => Scalar::zero(),
        }
    }

    /// `(a, b)` of the cyclic key `1^{nu_1} ... m^{nu_m}`.
    pub fn cyclic_spins(&self) -> Vec<usize> {
        self.nu().block_of_positions().into_iter().map(|a| a + 1).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct YKey {
    pub a: Vec<usize>,
    pub i: Vec<i64>,
}

impl fmt::Display for YKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        let i: Vec<String> = self.i.iter().map(|x| x.to_string()).collect();
        write!(f, "Y_{}^({})", a.join(""), i.join(","))
    }
}

impl YKey {
    pub fn new(a: Vec<usize>, i: Vec<i64>) -> Self {
        YKey { a, i }
    }

    pub fn degree(&self) -> i64 {
        self.i.iter().sum()
    }

    pub fn content(&self, m: usize) -> Vec<usize> {
        let mut c = vec![0; m];
        for &a in &self.a {
            c[a - 1] += 1;
        }
        c
    }

    /// Simultaneous permutation of variables and tensor factors.
    pub fn permuted(&self, w: &Permutation) -> YKey {
        YKey { a: w.act(&self.a), i: w.act(&self.i) }
    }

    /// `x_q^e` (0-based `q`).
    pub fn times_x(&self, q: usize, e: i64) -> YKey {
        let mut i = self.i.clone();
        i[q] += e;
        YKey { a: self.a.clone(), i }
    }

    /// Letter of `R_m` applied to every loop factor.
    pub fn weyl(&self, m: usize, l: WeylLetter) -> YKey {
        let (a, i) = self.a.iter().zip(&self.i).map(|(&a, &i)| act_loop_vector(m, l, a, i)).unzip();
        YKey { a, i }
    }
}

pub type YVector = BTreeMap<YKey, Scalar>;

/// `Y_a^i` with content `nu`, total degree `degree` and every exponent in
/// `[lo, hi]`, ordered lexicographically on `(a, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxBasis {
    pub nu: Composition,
    pub degree: i64,
    pub lo: i64,
    pub hi: i64,
    pub keys: Vec<YKey>,
}

pub fn arrangements(nu: &Composition) -> Vec<Vec<usize>> {
    let cyc: Vec<usize> = nu.block_of_positions().into_iter().map(|a| a + 1).collect();
    let mut out: Vec<Vec<usize>> = min_coset_reps(nu).iter().map(|w| w.act(&cyc)).collect();
    out.sort();
    out
}

impl BoxBasis {
    pub fn new(nu: Composition, degree: i64, lo: i64, hi: i64) -> Self {
        let mut keys = Vec::new();
        let exps = bounded_vectors(nu.total(), degree, lo, hi);
        for a in arrangements(&nu) {
            for i in &exps {
                keys.push(YKey { a: a.clone(), i: i.clone() });
            }
        }
        keys.sort();
        BoxBasis { nu, degree, lo, hi, keys }
    }

    pub fn for_fiber(fw: &FiberWeights, degree: i64, lo: i64, hi: i64) -> Self {
        Self::new(fw.nu(), degree, lo, hi)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, k: &YKey) -> bool {
        self.keys.binary_search(k).is_ok()
    }
}

/// `x_p (1 - σ_pr) x^v / (x_p - x_r)` for 1-based `p != r`.
pub fn divided_difference(p: usize, r: usize, v: &[i64]) -> Vec<(Vec<i64>, Scalar)> {
    let (p, r) = (p - 1, r - 1);
    let mut out = Vec::new();
    let (vp, vr) = (v[p], v[r]);
    let (low, high, sign) = if vp > vr { (vr, vp, 1) } else { (vp, vr, -1) };
    for j in 0..(high - low) {
        let mut e = v.to_vec();
        e[p] = low + 1 + j;
        e[r] = high - 1 - j;
        out.push((e, int(sign)));
    }
    out
}

/// `θ_p Y_a^v` (1-based `p`):
/// `[κ v_p + mu_{a_p} - mean(mu) - (a_p - 1)] Y_a^v`
/// `+ Σ_{r≠p} (divided difference with spins p, r exchanged)`
/// `- Σ_{q≠p, a_q < a_p} Y_{a with p, q exchanged}^v`.
pub fn theta(fw: &FiberWeights, p: usize, key: &YKey) -> Result<YVector> {
    let n = key.a.len();
    if p == 0 || p > n {
        return Err(Error::IndexOutOfRange { index: p, bound: n });
    }
    let p0 = p - 1;
    let ap = key.a[p0];
    let mut out = BTreeMap::new();
    let diag = &fw.kappa * int(key.i[p0]) + &fw.mu[ap - 1] - fw.mean_mu() - int(ap as i64 - 1);
    add_term(&mut out, key.clone(), diag);
    for r in 0..n {
        if r == p0 {
            continue;
        }
        let mut a = key.a.clone();
        a.swap(p0, r);
        for (i, c) in divided_difference(p, r + 1, &key.i) {
            add_term(&mut out, YKey { a: a.clone(), i }, c);
        }
        if key.a[r] < ap {
            add_term(&mut out, YKey { a, i: key.i.clone() }, -Scalar::one());
        }
    }
    Ok(out)
}

pub fn apply_linear<F>(v: &YVector, mut f: F) -> Result<YVector>
where
    F: FnMut(&YKey) -> Result<YVector>,
{
    let mut out = BTreeMap::new();
    for (k, c) in v {
        for (k2, c2) in f(k)? {
            add_term(&mut out, k2, c2 * c);
        }
    }
    Ok(out)
}

pub fn theta_vector(fw: &FiberWeights, p: usize, v: &YVector) -> Result<YVector> {
    apply_linear(v, |k| theta(fw, p, k))
}

pub fn theta_matrix(fw: &FiberWeights, p: usize, b: &BoxBasis) -> Result<OperatorMatrix<YKey>> {
    OperatorMatrix::from_columns(&b.keys, &b.keys, |k| theta(fw, p, k))
}

/// `E_ab t^j Y = Σ_q [a_q = b] x_q^j E_ab^{(q)} Y` and similarly for the
/// other letters; the central element acts by zero on loop factors.
pub fn loop_action(l: &Letter, key: &YKey) -> YVector {
    let mut out = BTreeMap::new();
    match *l {
        Letter::Root { a, b, i } => {
            for q in 0..key.a.len() {
                if key.a[q] == b {
                    let mut k = key.times_x(q, i);
                    k.a[q] = a;
                    add_term(&mut out, k, Scalar::one());
                }
            }
        }
        Letter::Cartan { c, i } => {
            for q in 0..key.a.len() {
                let s = i64::from(key.a[q] == c) - i64::from(key.a[q] == c + 1);
                if s != 0 {
                    add_term(&mut out, key.times_x(q, i), int(s));
                }
            }
        }
        Letter::Central => {}
    }
    out
}

/// Elements `Σ c · (x^i ⊗ e_a) ⊗ X_1 ... X_k` of the module before taking
/// coinvariants; the word acts on the highest weight vector.
pub type BElement = BTreeMap<(YKey, Vec<Letter>), Scalar>;

pub fn belement_from(v: &YVector) -> BElement {
    v.iter().map(|(k, c)| ((k.clone(), Vec::new()), c.clone())).collect()
}

/// Reduces an element to the `Y` basis of the fiber: lowering letters move
/// off the vacuum onto the loop factors with a sign, Cartan letters give
/// the highest weight value, raising letters commute to the right and die.
pub fn reduce_to_y_basis(fw: &FiberWeights, elem: &BElement, depth: usize) -> Result<YVector> {
    let mut out = BTreeMap::new();
    for ((key, word), c) in elem {
        if word.len() > depth {
            return Err(Error::DepthExceeded(depth));
        }
        reduce_word(fw, key, word, c.clone(), &mut out);
    }
    Ok(out)
}

fn letter_weight_under(h: &Letter, y: &Letter) -> i64 {
    match (*h, *y) {
        (Letter::Cartan { c, i: 0 }, Letter::Root { a, b, .. }) => {
            let d = |x: usize, y: usize| i64::from(x == y);
            (d(a, c) - d(a, c + 1)) - (d(b, c) - d(b, c + 1))
        }
        _ => 0,
    }
}

fn reduce_word(fw: &FiberWeights, key: &YKey, word: &[Letter], coef: Scalar, out: &mut YVector) {
    if coef.is_zero() {
        return;
    }
    let Some((x, rest)) = word.split_first() else {
        add_term(out, key.clone(), coef);
        return;
    };
    match x.part() {
        Part::Lower => {
            for (k2, c2) in loop_action(x, key) {
                reduce_word(fw, &k2, rest, -(&coef * c2), out);
            }
        }
        Part::Cartan => {
            let shift: i64 = rest.iter().map(|y| letter_weight_under(x, y)).sum();
            let s = fw.cartan_value(x) + int(shift);
            reduce_word(fw, key, rest, coef * s, out);
        }
        Part::Raise => {
            for j in 0..rest.len() {
                for (z, cz) in bracket(fw.m, x, &rest[j]) {
                    let mut w = rest[..j].to_vec();
                    w.push(z);
                    w.extend_from_slice(&rest[j + 1..]);
                    reduce_word(fw, key, &w, &coef * cz, out);
                }
            }
        }
    }
}

/// `Π^{±1}`: `Y_a^i ↦ Y_b^j` with `e_a t^i ↦ e_{a+1} t^{i - δ_{a,m}}` on
/// every factor (inverse: `e_a t^i ↦ e_{a-1} t^{i + δ_{a,1}}`).
pub fn pi_operator(fw: &FiberWeights, inverse: bool, key: &YKey) -> YVector {
    let l = if inverse { WeylLetter::PiInv } else { WeylLetter::Pi };
    BTreeMap::from([(key.weyl(fw.m, l), Scalar::one())])
}

/// Dictionary from the induced module `P_N ⊗ S_mu^lambda` to the `Y`
/// basis: `x^v ⊗ w ⊗ 1 ↦ Y_{w·a_cyc}^v`.
pub fn induced_key_to_y(fw: &FiberWeights, x: &[i64], rep: &Permutation) -> YKey {
    YKey { a: rep.act(&fw.cyclic_spins()), i: x.to_vec() }
}

enum Gen {
    Z(usize),
    X(usize, i64),
    S(usize),
}

/// Compares `θ_p + mean(mu)` with the action of `z_p` on the induced
/// module `P_N ⊗ S_mu^lambda`, transported through `induced_key_to_y`, and
/// the actions of `x_q^{±1}` and `σ_q`, on a box of the induced module.
pub fn verify_dictionary(fw: &FiberWeights, degree: i64, lo: i64, hi: i64) -> Result<Report> {
    let n = fw.n;
    let module = InducedModule::new(StandardModule::new(fw.mu.clone(), fw.lambda.clone())?, fw.kappa.clone());
    let ibox = module.box_basis(degree, lo, hi);
    let mut report = Report::new(format!("induced module dictionary on {} keys", ibox.keys.len()), fw.is_generic());
    let to_y = |v: &BTreeMap<InducedKey, Scalar>| -> YVector {
        let mut out = BTreeMap::new();
        for (k, c) in v {
            add_term(&mut out, induced_key_to_y(fw, &k.x, &k.rep), c.clone());
        }
        out
    };
    let mean = fw.mean_mu();
    let mut generators: Vec<(String, CherednikElement, Gen)> = Vec::new();
    for p in 1..=n {
        generators.push((format!("z_{p} - mean(mu) ~ theta_{p}"), CherednikElement::z(n, p, fw.kappa.clone())?, Gen::Z(p)));
    }
    for q in 1..=n {
        for e in [1, -1] {
            generators.push((format!("x_{q}^{e}"), CherednikElement::x(n, q, e, fw.kappa.clone())?, Gen::X(q, e)));
        }
    }
    for q in 1..n {
        generators.push((format!("sigma_{q}"), CherednikElement::sigma(n, q, fw.kappa.clone())?, Gen::S(q)));
    }
    for (name, a, g) in &generators {
        let mut witness = None;
        for k in &ibox.keys {
            let y = induced_key_to_y(fw, &k.x, &k.rep);
            let lhs = to_y(&module.act(a, k)?);
            let rhs = match *g {
                Gen::Z(p) => {
                    let mut t = theta(fw, p, &y)?;
                    add_term(&mut t, y.clone(), mean.clone());
                    t
                }
                Gen::X(q, e) => BTreeMap::from([(y.times_x(q - 1, e), Scalar::one())]),
                Gen::S(q) => BTreeMap::from([(y.permuted(&Permutation::simple(n, q)?), Scalar::one())]),
            };
            witness = compare_vectors(&format!("on {y}"), &lhs, &rhs);
            if witness.is_some() {
                break;
            }
        }
        report.push(name.clone(), witness);
    }
    Ok(report)
}
