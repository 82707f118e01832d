//! Independent oracles and parameter grids shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{One, Zero};

use cherednik_lab::affine_coinvariants::{reduce_to_y_basis, BElement, BoxBasis, FiberWeights, YKey, YVector};
use cherednik_lab::affine_lie::{traceless_diagonal, Letter};
use cherednik_lab::affine_weyl::WeylLetter;
use cherednik_lab::permutations::Composition;
use cherednik_lab::scalars::{int, ratio, Scalar};

pub fn add(v: &mut YVector, k: YKey, c: Scalar) {
    let e = v.entry(k).or_insert_with(Scalar::zero);
    *e += c;
}

pub fn clean(v: YVector) -> YVector {
    v.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn unit(k: &YKey) -> YVector {
    BTreeMap::from([(k.clone(), Scalar::one())])
}

/// Bivariate Laurent polynomial in `(x_p, x_r)`.
type Laurent2 = BTreeMap<(i64, i64), Scalar>;

/// Exact division of `f` by `x_p - x_r` through long division in `x_p`.
/// Panics on a nonzero remainder.
fn divide_by_difference(f: &Laurent2) -> Laurent2 {
    if f.is_empty() {
        return Laurent2::new();
    }
    let s = f.keys().map(|&(a, b)| a.min(b)).min().unwrap().min(0);
    let mut rem: Laurent2 = f.iter().map(|(&(a, b), c)| ((a - s, b - s), c.clone())).collect();
    let mut quot = Laurent2::new();
    loop {
        rem.retain(|_, c| !c.is_zero());
        let Some((&(a, b), c)) = rem.iter().max_by_key(|((a, _), _)| *a) else {
            break;
        };
        assert!(a > 0, "x_p - x_r does not divide the polynomial");
        let c = c.clone();
        *quot.entry((a - 1, b)).or_insert_with(Scalar::zero) += &c;
        *rem.entry((a, b)).or_insert_with(Scalar::zero) -= &c;
        *rem.entry((a - 1, b + 1)).or_insert_with(Scalar::zero) += &c;
    }
    quot.into_iter().map(|((a, b), c)| ((a + s, b + s), c)).collect()
}

/// `θ_p` on `Y_a^v` straight from the operator
/// `κ x_p ∂_p + Σ_{r≠p} x_p/(x_p - x_r)(1 - σ_pr) ⊗ σ_pr
///  + Σ_{i≥0} x_p^{-i} ⊗ (Σ_ab E_ab^{(p)} ⊗ E_ba t^i - (1/m) I t^i)`,
/// with the current terms reduced to the `Y` basis by the library's
/// reduction. The current sum is cut at `i = max_current`; terms with
/// `i ≥ 1` must vanish.
pub fn literal_theta(fw: &FiberWeights, p: usize, key: &YKey, max_current: i64) -> YVector {
    let m = fw.m;
    let n = key.a.len();
    let p0 = p - 1;
    let mut out = YVector::new();
    add(&mut out, key.clone(), &fw.kappa * int(key.i[p0]));

    for r in 0..n {
        if r == p0 {
            continue;
        }
        let (vp, vr) = (key.i[p0], key.i[r]);
        let mut f = Laurent2::new();
        *f.entry((vp, vr)).or_insert_with(Scalar::zero) += Scalar::one();
        *f.entry((vr, vp)).or_insert_with(Scalar::zero) -= Scalar::one();
        let mut spins = key.a.clone();
        spins.swap(p0, r);
        for ((ep, er), c) in divide_by_difference(&f) {
            let mut i = key.i.clone();
            i[p0] = ep + 1;
            i[r] = er;
            add(&mut out, YKey::new(spins.clone(), i), c);
        }
    }

    let mut elem = BElement::new();
    let mut push = |k: YKey, w: Vec<Letter>, c: Scalar| {
        *elem.entry((k, w)).or_insert_with(Scalar::zero) += c;
    };
    let ap = key.a[p0];
    for i in 0..=max_current {
        let mut shifted = key.clone();
        shifted.i[p0] -= i;
        // E_ab^{(p)} ⊗ E_ba t^i, a ≠ b: only b = a_p survives on the spin.
        for a in 1..=m {
            if a != ap {
                let mut k = shifted.clone();
                k.a[p0] = a;
                push(k, vec![Letter::Root { a: ap, b: a, i }], Scalar::one());
            }
        }
        // Σ_a E_aa^{(p)} ⊗ (E_aa - I/m) t^i picks a = a_p.
        for (l, c) in traceless_diagonal(m, ap, i) {
            push(shifted.clone(), vec![l], c);
        }
    }
    for (k, c) in reduce_to_y_basis(fw, &elem, 4).expect("depth one words reduce") {
        add(&mut out, k, c);
    }
    clean(out)
}

/// The plain action of a letter on `(level, mu)`, from the formulas for
/// `π`, `τ_0` and the transpositions; `π^{-1}` is solved from `π`.
pub fn plain_action(l: WeylLetter, level: &Scalar, mu: &[Scalar]) -> Vec<Scalar> {
    let m = mu.len();
    match l {
        WeylLetter::Pi => {
            let mut v = vec![&mu[m - 1] + level];
            v.extend_from_slice(&mu[..m - 1]);
            v
        }
        WeylLetter::PiInv => {
            let mut v = mu[1..].to_vec();
            v.push(&mu[0] - level);
            v
        }
        WeylLetter::Tau(0) => {
            let mut v = mu.to_vec();
            v[0] = &mu[m - 1] + level;
            v[m - 1] = &mu[0] - level;
            v
        }
        WeylLetter::Tau(c) => {
            let mut v = mu.to_vec();
            v.swap(c - 1, c);
            v
        }
    }
}

/// Shifted action by conjugating the plain one with `m C* - Σ a E*_aa`.
pub fn rho_shifted(l: WeylLetter, level: &Scalar, mu: &[Scalar]) -> Vec<Scalar> {
    let m = mu.len();
    let rho: Vec<Scalar> = (1..=m).map(|a| -int(a as i64)).collect();
    let moved: Vec<Scalar> = mu.iter().zip(&rho).map(|(x, r)| x + r).collect();
    let lifted_level = level + int(m as i64);
    plain_action(l, &lifted_level, &moved).iter().zip(&rho).map(|(x, r)| x - r).collect()
}

pub const KAPPA: (i64, i64) = (5, 2);

pub fn sample_mu(m: usize) -> Vec<Scalar> {
    [int(0), ratio(1, 3), ratio(5, 7)][..m].to_vec()
}

/// Every fiber with `N` points over `mu`.
pub fn fibers(kappa: &Scalar, mu: &[Scalar], n: usize) -> Vec<FiberWeights> {
    Composition::all(mu.len(), n)
        .into_iter()
        .map(|nu| FiberWeights::from_content(kappa.clone(), mu.to_vec(), &nu.0).unwrap())
        .collect()
}

/// Boxes `[-2, 2]` in degrees `-1, 0, 1`.
pub fn grid_boxes(fw: &FiberWeights) -> Vec<BoxBasis> {
    (-1..=1).map(|g| BoxBasis::for_fiber(fw, g, -2, 2)).collect()
}

/// `(m, N)` pairs of the grid.
pub fn grid_shapes() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 2..=3 {
        for n in 1..=3 {
            out.push((m, n));
        }
    }
    out
}
