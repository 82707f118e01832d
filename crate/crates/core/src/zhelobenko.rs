//! Zhelobenko operators `η_c` between coinvariant fibers, the `Π` maps, and
//! their composites along words of the extended affine Weyl group.
//!
//! `eta_closed` evaluates the resummed formula directly. `eta_oracle` runs
//! the defining extremal projector series on elements of the module before
//! coinvariants are taken and reduces the result afterwards.

use itertools::Itertools;
use num::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::affine_coinvariants::{
    apply_linear, loop_action, pi_operator, reduce_to_y_basis, theta, theta_vector, BElement, BoxBasis,
    FiberWeights, YKey, YVector,
};
use crate::affine_lie::{bracket, from_gl, Letter};
use crate::affine_weyl::{act_affine_element, random_braid_pair, WeylLetter, WeylWord};
use crate::error::{Error, Result};
use crate::hecke_algebra::add_term;
use crate::matrix::OperatorMatrix;
use crate::permutations::{Composition, Permutation};
use crate::report::{compare_vectors, Report};
use crate::scalars::{factorial, format_scalar, int, serde_scalar, Scalar};

pub const SCHEMA: &str = "cherednik-lab/1";

/// Box reached from `b` (content `fw.nu()`) by one letter. Large enough to
/// hold the image of every key.
pub fn target_box(fw: &FiberWeights, l: WeylLetter, b: &BoxBasis) -> BoxBasis {
    let m = fw.m;
    let nu = &b.nu.0;
    let flag = |k: usize| i64::from(k > 0);
    let (content, degree, lo, hi) = match l {
        WeylLetter::Tau(0) => {
            let mut c = nu.clone();
            c.swap(0, m - 1);
            let d = nu[0] as i64 - nu[m - 1] as i64;
            (c, b.degree + d, b.lo - flag(nu[m - 1]), b.hi + flag(nu[0]))
        }
        WeylLetter::Tau(c) => {
            let mut v = nu.clone();
            v.swap(c - 1, c);
            (v, b.degree, b.lo, b.hi)
        }
        WeylLetter::Pi => {
            let mut v = vec![nu[m - 1]];
            v.extend_from_slice(&nu[..m - 1]);
            (v, b.degree - nu[m - 1] as i64, b.lo - flag(nu[m - 1]), b.hi)
        }
        WeylLetter::PiInv => {
            let mut v = nu[1..].to_vec();
            v.push(nu[0]);
            (v, b.degree + nu[0] as i64, b.lo, b.hi + flag(nu[0]))
        }
    };
    BoxBasis::new(Composition(content), degree, lo, hi)
}

/// Coefficient of the `h`-th summand: `h! (top) / Π_{s=0}^{h} (base + s)`.
fn closed_coefficient(h: usize, top: &Scalar, base: &Scalar) -> Result<Scalar> {
    let mut denom = Scalar::one();
    for s in 0..=h {
        let d = base + int(s as i64);
        if d.is_zero() {
            return Err(Error::VanishingDenominator(format!("{} + {s}", format_scalar(base))));
        }
        denom *= d;
    }
    Ok(factorial(h as u64) * top / denom)
}

/// `η_c` on one basis key, from the closed formula.
pub fn eta_closed_key(c: usize, fw: &FiberWeights, key: &YKey) -> Result<YVector> {
    let m = fw.m;
    if c >= m {
        return Err(Error::IndexOutOfRange { index: c, bound: m - 1 });
    }
    // `nu_from - h` spins `from` become `to` and `nu_to - h` go back.
    let (from, to) = if c == 0 { (1, m) } else { (c, c + 1) };
    let (top, base) = if c == 0 {
        (
            &fw.lambda[0] - &fw.lambda[m - 1] - &fw.level - int(1),
            &fw.mu[0] - &fw.lambda[m - 1] - &fw.level - int(1),
        )
    } else {
        (&fw.lambda[c] - &fw.lambda[c - 1] - int(1), &fw.mu[c] - &fw.lambda[c - 1] - int(1))
    };
    let pos_from: Vec<usize> = (0..key.a.len()).filter(|&p| key.a[p] == from).collect();
    let pos_to: Vec<usize> = (0..key.a.len()).filter(|&p| key.a[p] == to).collect();
    let (nf, nt) = (pos_from.len(), pos_to.len());
    let mut out = BTreeMap::new();
    for h in 0..=nf.min(nt) {
        let coef = closed_coefficient(h, &top, &base)?;
        for s in pos_from.iter().copied().combinations(nf - h) {
            for t in pos_to.iter().copied().combinations(nt - h) {
                let mut b = key.a.clone();
                for &p in &s {
                    b[p] = to;
                }
                for &p in &t {
                    b[p] = from;
                }
                let mut j = key.i.clone();
                if c == 0 {
                    for p in 0..j.len() {
                        j[p] += i64::from(key.a[p] == 1) - i64::from(b[p] == 1);
                    }
                }
                add_term(&mut out, YKey { a: b, i: j }, coef.clone());
            }
        }
    }
    Ok(out)
}

/// Image of one key under a letter: `η_c` for `τ_c`, `Π^{±1}` for `π^{±1}`.
pub fn step_image(l: WeylLetter, fw: &FiberWeights, key: &YKey) -> Result<YVector> {
    match l {
        WeylLetter::Tau(c) => eta_closed_key(c, fw, key),
        WeylLetter::Pi => Ok(pi_operator(fw, false, key)),
        WeylLetter::PiInv => Ok(pi_operator(fw, true, key)),
    }
}

pub fn step_vector(l: WeylLetter, fw: &FiberWeights, v: &YVector) -> Result<YVector> {
    apply_linear(v, |k| step_image(l, fw, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerStep {
    pub letter: WeylLetter,
    #[serde(rename = "source_weights")]
    pub source: FiberWeights,
    #[serde(rename = "target_weights")]
    pub target: FiberWeights,
    pub source_box: BoxBasis,
    pub target_box: BoxBasis,
    pub matrix: OperatorMatrix<YKey>,
}

pub fn build_step(l: WeylLetter, fw: &FiberWeights, b: &BoxBasis) -> Result<IntertwinerStep> {
    if b.nu != fw.nu() {
        return Err(Error::BasisMismatch("box content differs from the fiber content".into()));
    }
    if let WeylLetter::Tau(c) = l {
        if c >= fw.m {
            return Err(Error::IndexOutOfRange { index: c, bound: fw.m - 1 });
        }
    }
    let tb = target_box(fw, l, b);
    let matrix = OperatorMatrix::from_columns(&b.keys, &tb.keys, |k| step_image(l, fw, k))?;
    Ok(IntertwinerStep { letter: l, source: fw.clone(), target: fw.act(l), source_box: b.clone(), target_box: tb, matrix })
}

pub fn eta_closed(c: usize, b: &BoxBasis, fw: &FiberWeights) -> Result<IntertwinerStep> {
    build_step(WeylLetter::Tau(c), fw, b)
}

/// Composite of a word read as an operator product: the rightmost letter
/// acts first, so `steps` lists the letters in reverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerChain {
    pub schema: String,
    pub word: WeylWord,
    /// Translation degree `g` of the word.
    pub degree: i64,
    /// `κ g / m`, the scalar shift relating the `θ` actions at both ends.
    #[serde(with = "serde_scalar")]
    pub shift: Scalar,
    pub source: FiberWeights,
    pub target: FiberWeights,
    pub steps: Vec<IntertwinerStep>,
    pub composite: OperatorMatrix<YKey>,
}

pub fn build_intertwiner(word: &WeylWord, fw: &FiberWeights, b: &BoxBasis) -> Result<IntertwinerChain> {
    if word.m != fw.m {
        return Err(Error::SizeMismatch { expected: fw.m, got: word.m });
    }
    fw.require_generic()?;
    let mut steps: Vec<IntertwinerStep> = Vec::new();
    let mut composite = OperatorMatrix::identity(b.keys.clone());
    let (mut cur_fw, mut cur_box) = (fw.clone(), b.clone());
    for &l in word.letters.iter().rev() {
        let step = build_step(l, &cur_fw, &cur_box)?;
        composite = step.matrix.compose(&composite)?;
        cur_fw = step.target.clone();
        cur_box = step.target_box.clone();
        steps.push(step);
    }
    let degree = word.degree();
    Ok(IntertwinerChain {
        schema: SCHEMA.into(),
        word: word.clone(),
        degree,
        shift: &fw.kappa * int(degree) / int(fw.m as i64),
        source: fw.clone(),
        target: cur_fw,
        steps,
        composite,
    })
}

/// Sparse image of a vector under a word, with the fiber it lands in.
pub fn chain_map(word: &WeylWord, fw: &FiberWeights, v: &YVector) -> Result<(FiberWeights, YVector)> {
    let mut cur = (fw.clone(), v.clone());
    for &l in word.letters.iter().rev() {
        let image = step_vector(l, &cur.0, &cur.1)?;
        cur = (cur.0.act(l), image);
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Oracle

/// `(E_c, F_c)` of the `sl_2` triple attached to `c`.
pub fn sl2_pair(m: usize, c: usize) -> (Letter, Letter) {
    if c == 0 {
        (Letter::Root { a: m, b: 1, i: 1 }, Letter::Root { a: 1, b: m, i: -1 })
    } else {
        (Letter::Root { a: c, b: c + 1, i: 0 }, Letter::Root { a: c + 1, b: c, i: 0 })
    }
}

/// Value of `H_c` on a term: highest weight of the target fiber plus the
/// weights of the loop factors and of the letters.
fn h_value(target: &FiberWeights, c: usize, key: &YKey, word: &[Letter]) -> Scalar {
    let m = target.m;
    let mut d = vec![0i64; m];
    let mut out = Scalar::zero();
    if c == 0 {
        d[0] = -1;
        d[m - 1] = 1;
        out += &target.level;
    } else {
        d[c - 1] = 1;
        d[c] = -1;
    }
    for (mu, &da) in target.mu.iter().zip(&d) {
        out += mu * int(da);
    }
    let mut shift: i64 = key.a.iter().map(|&a| d[a - 1]).sum();
    for l in word {
        shift += l.weight(m).iter().zip(&d).map(|(x, y)| x * y).sum::<i64>();
    }
    out + int(shift)
}

fn tau_letter(m: usize, c: usize, l: &Letter) -> BTreeMap<Letter, Scalar> {
    from_gl(m, &act_affine_element(m, WeylLetter::Tau(c), &l.to_gl())).expect("automorphism keeps sl_m")
}

/// `τ_c` on loop factors and on every letter.
fn tau_element(m: usize, c: usize, elem: &BElement) -> BElement {
    let mut out = BTreeMap::new();
    for ((key, word), coef) in elem {
        let k2 = key.weyl(m, WeylLetter::Tau(c));
        let mut words: Vec<(Vec<Letter>, Scalar)> = vec![(Vec::new(), coef.clone())];
        for l in word {
            let image = tau_letter(m, c, l);
            words = words
                .iter()
                .flat_map(|(w, a)| {
                    image.iter().map(move |(x, b)| {
                        let mut w2 = w.clone();
                        w2.push(*x);
                        (w2, a * b)
                    })
                })
                .collect();
        }
        for (w, a) in words {
            add_term(&mut out, (k2.clone(), w), a);
        }
    }
    out
}

/// Left multiplication by a letter: on loop factors and on the word.
fn left_mul(x: &Letter, elem: &BElement) -> BElement {
    let mut out = BTreeMap::new();
    for ((key, word), coef) in elem {
        for (k2, c2) in loop_action(x, key) {
            add_term(&mut out, (k2, word.clone()), coef * c2);
        }
        let mut w = vec![*x];
        w.extend_from_slice(word);
        add_term(&mut out, (key.clone(), w), coef.clone());
    }
    out
}

/// Adjoint action: loop factors, plus the bracket with each letter.
fn adjoint(m: usize, x: &Letter, elem: &BElement) -> BElement {
    let mut out = BTreeMap::new();
    for ((key, word), coef) in elem {
        for (k2, c2) in loop_action(x, key) {
            add_term(&mut out, (k2, word.clone()), coef * c2);
        }
        for j in 0..word.len() {
            for (z, cz) in bracket(m, x, &word[j]) {
                let mut w = word.clone();
                w[j] = z;
                add_term(&mut out, (key.clone(), w), coef * cz);
            }
        }
    }
    out
}

/// `η_c` on an element before coinvariants: `τ_c`, then the series
/// `Σ_n (n! H^{(n)})^{-1} E^n ad_F^n`, then reduction in the target fiber.
pub fn eta_oracle_element(c: usize, fw: &FiberWeights, elem: &BElement, depth: usize) -> Result<YVector> {
    let m = fw.m;
    if c >= m {
        return Err(Error::IndexOutOfRange { index: c, bound: m - 1 });
    }
    let target = fw.act(WeylLetter::Tau(c));
    let (e, f) = sl2_pair(m, c);
    let mut current = tau_element(m, c, elem);
    let mut total = current.clone();
    let mut n = 0usize;
    loop {
        current = adjoint(m, &f, &current);
        if current.is_empty() {
            break;
        }
        n += 1;
        if n > depth {
            return Err(Error::DepthExceeded(depth));
        }
        let mut raised = current.clone();
        for _ in 0..n {
            raised = left_mul(&e, &raised);
        }
        for ((key, word), coef) in raised {
            let h = h_value(&target, c, &key, &word);
            let mut denom = factorial(n as u64);
            for s in 0..n {
                let d = &h - int(s as i64);
                if d.is_zero() {
                    return Err(Error::VanishingDenominator(format!("H^({n}) at {}", format_scalar(&h))));
                }
                denom *= d;
            }
            add_term(&mut total, (key, word), coef / denom);
        }
    }
    reduce_to_y_basis(&target, &total, depth + elem.keys().map(|(_, w)| w.len()).max().unwrap_or(0) + n)
}

pub fn eta_oracle(c: usize, y: &YVector, fw: &FiberWeights, depth: usize) -> Result<YVector> {
    let elem: BElement = y.iter().map(|(k, v)| ((k.clone(), Vec::new()), v.clone())).collect();
    eta_oracle_element(c, fw, &elem, depth)
}

/// `X·(Y ⊗ vac)` for a lowering letter `X`; its class in the coinvariants
/// is zero.
pub fn j_generator(x: &Letter, key: &YKey) -> BElement {
    let mut out: BElement = loop_action(x, key).into_iter().map(|(k, c)| ((k, Vec::new()), c)).collect();
    add_term(&mut out, (key.clone(), vec![*x]), Scalar::one());
    out
}

// ---------------------------------------------------------------------------
// Verification

fn permute_vector(v: &YVector, w: &Permutation) -> YVector {
    v.iter().map(|(k, c)| (k.permuted(w), c.clone())).collect()
}

fn shift_vector(v: &YVector, q: usize, e: i64) -> YVector {
    v.iter().map(|(k, c)| (k.times_x(q, e), c.clone())).collect()
}

/// Checks that the letter's operator intertwines the `θ_p`, the
/// multiplications by `x_q^{±1}` and the `σ_q` on every key of the box.
/// For `π^{±1}` the `θ_p` identity carries the shift `∓κ/m`.
pub fn verify_intertwining(l: WeylLetter, fw: &FiberWeights, b: &BoxBasis) -> Result<Report> {
    let n = fw.n;
    let target = fw.act(l);
    let mut report = Report::new(format!("intertwining {l} on {} keys", b.len()), fw.is_generic());
    let shift = &fw.kappa / int(fw.m as i64) * int(-l.degree());
    let images: Vec<YVector> = b.keys.iter().map(|k| step_image(l, fw, k)).collect::<Result<_>>()?;
    for p in 1..=n {
        let mut witness = None;
        for (k, img) in b.keys.iter().zip(&images) {
            let lhs = theta_vector(&target, p, img)?;
            let mut rhs = step_vector(l, fw, &theta(fw, p, k)?)?;
            for (k2, c2) in img {
                add_term(&mut rhs, k2.clone(), &shift * c2);
            }
            witness = compare_vectors(&format!("on {k}"), &lhs, &rhs);
            if witness.is_some() {
                break;
            }
        }
        report.push(format!("theta_{p}"), witness);
    }
    for q in 0..n {
        for e in [1i64, -1] {
            let mut witness = None;
            for (k, img) in b.keys.iter().zip(&images) {
                let lhs = step_image(l, fw, &k.times_x(q, e))?;
                witness = compare_vectors(&format!("on {k}"), &lhs, &shift_vector(img, q, e));
                if witness.is_some() {
                    break;
                }
            }
            report.push(format!("x_{}^{}", q + 1, e), witness);
        }
    }
    for q in 1..n {
        let s = Permutation::simple(n, q)?;
        let mut witness = None;
        for (k, img) in b.keys.iter().zip(&images) {
            let lhs = step_image(l, fw, &k.permuted(&s))?;
            witness = compare_vectors(&format!("on {k}"), &lhs, &permute_vector(img, &s));
            if witness.is_some() {
                break;
            }
        }
        report.push(format!("sigma_{q}"), witness);
    }
    Ok(report)
}

/// Compares two words as maps on every key of the box, including the fiber
/// they end in.
pub fn compare_words(w1: &WeylWord, w2: &WeylWord, fw: &FiberWeights, b: &BoxBasis) -> Result<Option<String>> {
    for k in &b.keys {
        let v = BTreeMap::from([(k.clone(), Scalar::one())]);
        let (f1, v1) = chain_map(w1, fw, &v)?;
        let (f2, v2) = chain_map(w2, fw, &v)?;
        if f1 != f2 {
            return Ok(Some(format!("words end in different fibers: {:?} vs {:?}", f1.mu, f2.mu)));
        }
        if let Some(w) = compare_vectors(&format!("on {k}"), &v1, &v2) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn tau_word(m: usize, cs: &[usize]) -> WeylWord {
    WeylWord { m, letters: cs.iter().map(|&c| WeylLetter::Tau(c)).collect() }
}

/// Braid and commutation relations among the `η_c`, `π η_c π^{-1} = η_{c+1}`,
/// and independence of the reduced decomposition on `samples` random
/// elements (seeded).
pub fn verify_braid(fw: &FiberWeights, b: &BoxBasis, samples: usize, seed: u64) -> Result<Report> {
    let m = fw.m;
    let mut report = Report::new(format!("braid relations, m = {m}, seed {seed}"), fw.is_generic());
    let adjacent = |c: usize, d: usize| (c + 1) % m == d || (d + 1) % m == c;
    for c in 0..m {
        for d in c + 1..m {
            if adjacent(c, d) {
                if m < 3 {
                    continue;
                }
                let w = compare_words(&tau_word(m, &[c, d, c]), &tau_word(m, &[d, c, d]), fw, b)?;
                report.push(format!("eta_{c} eta_{d} eta_{c} = eta_{d} eta_{c} eta_{d}"), w);
            } else {
                let w = compare_words(&tau_word(m, &[c, d]), &tau_word(m, &[d, c]), fw, b)?;
                report.push(format!("eta_{c} eta_{d} = eta_{d} eta_{c}"), w);
            }
        }
    }
    for c in 0..m {
        let lhs = WeylWord { m, letters: vec![WeylLetter::Pi, WeylLetter::Tau(c), WeylLetter::PiInv] };
        let d = (c + 1) % m;
        let w = compare_words(&lhs, &tau_word(m, &[d]), fw, b)?;
        report.push(format!("pi eta_{c} pi^-1 = eta_{d}"), w);
    }
    if m >= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let Some((w1, w2)) = random_braid_pair(m, 4, &mut rng) else {
                report.push("sample an element with two reduced words", Some("none found".into()));
                break;
            };
            let w = compare_words(&w1, &w2, fw, b)?;
            report.push(format!("[{w1}] = [{w2}]"), w);
        }
    }
    Ok(report)
}

/// `eta_closed ≡ eta_oracle` on every key of the box, plus the content of
/// every output term.
pub fn verify_dual_path(c: usize, fw: &FiberWeights, b: &BoxBasis, depth: usize) -> Result<Report> {
    let mut report = Report::new(format!("closed form vs series for eta_{c}"), fw.is_generic());
    let tb = target_box(fw, WeylLetter::Tau(c), b);
    let mut witness = None;
    for k in &b.keys {
        let closed = eta_closed_key(c, fw, k)?;
        let v = BTreeMap::from([(k.clone(), Scalar::one())]);
        let series = eta_oracle(c, &v, fw, depth)?;
        if let Some(bad) = series.keys().find(|t| !tb.contains(t)) {
            witness = Some(format!("on {k}: term {bad} outside the target box"));
            break;
        }
        witness = compare_vectors(&format!("on {k}"), &closed, &series);
        if witness.is_some() {
            break;
        }
    }
    report.push(format!("eta_{c} closed = series"), witness);
    Ok(report)
}
