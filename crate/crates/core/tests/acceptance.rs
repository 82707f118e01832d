//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cherednik_lab::affine_coinvariants::{pi_operator, theta, theta_vector, BoxBasis, FiberWeights, YKey, YVector};
use cherednik_lab::affine_lie::{Letter, Part};
use cherednik_lab::affine_weyl::WeylLetter;
use cherednik_lab::cherednik_algebra::{self, CherednikElement};
use cherednik_lab::finite_weight::{check_standard_iso, Variant};
use cherednik_lab::hecke_algebra::{self, HeckeElement};
use cherednik_lab::permutations::Composition;
use cherednik_lab::report::compare_vectors;
use cherednik_lab::scalars::{int, ratio, Scalar};
use cherednik_lab::zhelobenko::{eta_closed_key, eta_oracle, eta_oracle_element, j_generator, verify_braid, verify_dual_path, verify_intertwining};

use common::{fibers, grid_boxes, grid_shapes, literal_theta, sample_mu, unit};

type Outcome = Result<String, String>;

fn kappa() -> Scalar {
    ratio(common::KAPPA.0, common::KAPPA.1)
}

fn all_letters(m: usize) -> Vec<WeylLetter> {
    let mut v: Vec<WeylLetter> = (0..m).map(WeylLetter::Tau).collect();
    v.extend([WeylLetter::Pi, WeylLetter::PiInv]);
    v
}

fn fail(msg: impl Into<String>) -> Outcome {
    Err(msg.into())
}

fn presentation() -> Outcome {
    let k = kappa();
    let mut count = 0;
    for n in 1..=4 {
        for (name, r) in hecke_algebra::relation_residuals(n).map_err(|e| e.to_string())? {
            if !r.is_zero() {
                return fail(format!("H_{n} {name}: residual {r}"));
            }
            count += 1;
        }
        for (name, r) in cherednik_algebra::relation_residuals(n, &k).map_err(|e| e.to_string())? {
            if !r.is_zero() {
                return fail(format!("C_{n} {name}: residual {r}"));
            }
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for t in 0..200 {
        let n = rng.gen_range(1..=4);
        let [a, b, c]: [HeckeElement; 3] = std::array::from_fn(|_| hecke_algebra::random_element(n, 3, 2, &mut rng));
        let l = a.mul(&b).and_then(|ab| ab.mul(&c)).map_err(|e| e.to_string())?;
        let r = b.mul(&c).and_then(|bc| a.mul(&bc)).map_err(|e| e.to_string())?;
        if l != r {
            return fail(format!("H_{n} associativity triple {t}"));
        }
    }
    for t in 0..200 {
        let n = rng.gen_range(1..=3);
        let [a, b, c]: [CherednikElement; 3] =
            std::array::from_fn(|_| cherednik_algebra::random_element(n, &k, 2, 1, 1, &mut rng));
        let l = a.mul(&b).and_then(|ab| ab.mul(&c)).map_err(|e| e.to_string())?;
        let r = b.mul(&c).and_then(|bc| a.mul(&bc)).map_err(|e| e.to_string())?;
        if l != r {
            return fail(format!("C_{n} associativity triple {t}"));
        }
    }
    Ok(format!("{count} relations, 400 triples"))
}

fn standard_iso() -> Outcome {
    let mut count = 0;
    for m in 1..=3 {
        let mu = sample_mu(m);
        for n in 1..=3 {
            for nu in Composition::all(m, n) {
                let lambda: Vec<Scalar> = mu.iter().zip(&nu.0).map(|(x, &k)| x + int(k as i64)).collect();
                for variant in [Variant::Gl, Variant::Sl] {
                    let r = check_standard_iso(mu.clone(), lambda.clone(), variant).map_err(|e| e.to_string())?;
                    if !r.passed {
                        return fail(format!("nu = {:?}, {:?}: {}", nu.0, variant, serde_json::to_string(&r).unwrap()));
                    }
                    if r.dim != nu.coset_count() {
                        return fail(format!("nu = {:?}: dimension {} != {}", nu.0, r.dim, nu.coset_count()));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} (nu, variant) cases"))
}

fn theta_dual_path() -> Outcome {
    let k = kappa();
    let mut keys = 0;
    for (m, n) in grid_shapes() {
        for fw in fibers(&k, &sample_mu(m), n) {
            for b in grid_boxes(&fw) {
                for key in &b.keys {
                    for p in 1..=n {
                        let closed = theta(&fw, p, key).map_err(|e| e.to_string())?;
                        if let Some(w) = compare_vectors(&format!("theta_{p} {key}"), &closed, &literal_theta(&fw, p, key, 2)) {
                            return fail(w);
                        }
                    }
                    keys += 1;
                }
            }
        }
    }
    let mu = sample_mu(2);
    let half = ratio(1, 2);
    let fw = FiberWeights::from_content(k.clone(), mu.clone(), &[1, 0]).unwrap();
    let y1 = YKey::new(vec![1], vec![0]);
    let want = BTreeMap::from([(y1.clone(), (&mu[0] - &mu[1]) * &half)]);
    if let Some(w) = compare_vectors("anchor Y_1^0", &theta(&fw, 1, &y1).unwrap(), &want) {
        return fail(w);
    }
    let fw = FiberWeights::from_content(k, mu.clone(), &[0, 1]).unwrap();
    let y2 = YKey::new(vec![2], vec![0]);
    let want = BTreeMap::from([(y2.clone(), (&mu[1] - &mu[0]) * &half - int(1))]);
    if let Some(w) = compare_vectors("anchor Y_2^0", &theta(&fw, 1, &y2).unwrap(), &want) {
        return fail(w);
    }
    Ok(format!("{keys} keys, 2 anchors"))
}

/// `θ^{target} Π^{±1} - Π^{±1} θ = ∓(κ/m) Π^{±1}` on every key of the grid.
fn cor25_on_grid(k: &Scalar) -> Result<usize, String> {
    let mut keys = 0;
    for (m, n) in grid_shapes() {
        for fw in fibers(k, &sample_mu(m), n) {
            for (inverse, l) in [(false, WeylLetter::Pi), (true, WeylLetter::PiInv)] {
                let target = fw.act(l);
                let sign = if inverse { int(1) } else { int(-1) };
                let expected_shift = k / int(m as i64) * sign;
                for b in grid_boxes(&fw) {
                    for key in &b.keys {
                        let img = pi_operator(&fw, inverse, key);
                        for p in 1..=n {
                            let mut lhs = theta_vector(&target, p, &img).map_err(|e| e.to_string())?;
                            for (k2, c2) in theta(&fw, p, key).map_err(|e| e.to_string())? {
                                for (k3, c3) in pi_operator(&fw, inverse, &k2) {
                                    common::add(&mut lhs, k3, -(c3 * &c2));
                                }
                            }
                            let want: YVector = img.iter().map(|(k2, c2)| (k2.clone(), c2 * &expected_shift)).collect();
                            if let Some(w) = compare_vectors(&format!("{l}, theta_{p} on {key}"), &lhs, &want) {
                                return Err(w);
                            }
                        }
                        keys += 1;
                    }
                }
            }
        }
    }
    Ok(keys)
}

fn cor25() -> Outcome {
    let keys = cor25_on_grid(&kappa())?;
    cor25_on_grid(&Scalar::zero()).map_err(|w| format!("kappa = 0: {w}"))?;
    Ok(format!("{keys} keys, zero discrepancy at kappa = 0"))
}

fn theorem() -> Outcome {
    let mut runs = 0;
    for k in [ratio(5, 2), ratio(7, 3)] {
        for (m, n) in grid_shapes() {
            for fw in fibers(&k, &sample_mu(m), n) {
                for b in grid_boxes(&fw) {
                    for l in all_letters(m) {
                        let r = verify_intertwining(l, &fw, &b).map_err(|e| e.to_string())?;
                        if !r.passed() {
                            return fail(format!("kappa = {k}, nu = {:?}, degree {}: {r}", fw.nu().0, b.degree));
                        }
                        runs += 1;
                    }
                }
            }
        }
    }
    // c = 0, m = 2, N = 1: the identity holds only at level kappa - m.
    let base = FiberWeights::from_content(kappa(), sample_mu(2), &[1, 0]).unwrap();
    let b = BoxBasis::for_fiber(&base, 0, -2, 2);
    for shift in [ratio(-2, 1), ratio(-1, 3), ratio(0, 1), ratio(1, 7), ratio(1, 1)] {
        let mut fw = base.clone();
        fw.level = &fw.level + &shift;
        let passed = verify_intertwining(WeylLetter::Tau(0), &fw, &b).map_err(|e| e.to_string())?.passed();
        if passed != shift.is_zero() {
            return fail(format!("level shifted by {shift}: passed = {passed}"));
        }
    }
    Ok(format!("{runs} (letter, fiber, box) runs, level condition sharp"))
}

fn eta_dual_path() -> Outcome {
    let k = kappa();
    let mut runs = 0;
    for (m, n) in grid_shapes() {
        for fw in fibers(&k, &sample_mu(m), n) {
            for b in grid_boxes(&fw) {
                for c in 0..m {
                    let r = verify_dual_path(c, &fw, &b, 8).map_err(|e| e.to_string())?;
                    if !r.passed() {
                        return fail(format!("nu = {:?}: {r}", fw.nu().0));
                    }
                    runs += 1;
                }
            }
        }
    }
    let mu = sample_mu(2);
    let fw = FiberWeights::new(k.clone(), mu.clone(), vec![int(1), ratio(4, 3)]).unwrap();
    let key = YKey::new(vec![1, 2], vec![0, 0]);
    let want = BTreeMap::from([(key.clone(), ratio(-3, 5)), (YKey::new(vec![2, 1], vec![0, 0]), ratio(2, 5))]);
    for (name, got) in [("closed", eta_closed_key(1, &fw, &key)), ("series", eta_oracle(1, &unit(&key), &fw, 8))] {
        if let Some(w) = compare_vectors(&format!("eta_1 anchor ({name})"), &got.map_err(|e| e.to_string())?, &want) {
            return fail(w);
        }
    }
    let fw = FiberWeights::new(k, mu, vec![int(1), ratio(1, 3)]).unwrap();
    let key = YKey::new(vec![1], vec![0]);
    let want = BTreeMap::from([(YKey::new(vec![2], vec![1]), ratio(5, 11))]);
    for (name, got) in [("closed", eta_closed_key(0, &fw, &key)), ("series", eta_oracle(0, &unit(&key), &fw, 8))] {
        if let Some(w) = compare_vectors(&format!("eta_0 anchor ({name})"), &got.map_err(|e| e.to_string())?, &want) {
            return fail(w);
        }
    }
    Ok(format!("{runs} (c, fiber, box) runs, 2 anchors"))
}

fn braids() -> Outcome {
    let k = kappa();
    let mut checks = 0;
    for n in [2] {
        for fw in fibers(&k, &sample_mu(3), n) {
            for g in -1..=1 {
                let b = BoxBasis::for_fiber(&fw, g, -1, 1);
                let r = verify_braid(&fw, &b, 5, 0).map_err(|e| e.to_string())?;
                if !r.passed() {
                    return fail(format!("nu = {:?}: {r}", fw.nu().0));
                }
                checks += r.checks.len();
            }
        }
    }
    for n in 1..=2 {
        for fw in fibers(&k, &sample_mu(2), n) {
            let b = BoxBasis::for_fiber(&fw, 0, -1, 1);
            let r = verify_braid(&fw, &b, 0, 0).map_err(|e| e.to_string())?;
            if !r.passed() {
                return fail(format!("m = 2, nu = {:?}: {r}", fw.nu().0));
            }
            checks += r.checks.len();
        }
    }
    Ok(format!("{checks} checks"))
}

fn random_lowering<R: Rng>(m: usize, rng: &mut R) -> Letter {
    loop {
        let l = match rng.gen_range(0..3) {
            0 => Letter::Cartan { c: rng.gen_range(1..m), i: rng.gen_range(-2..0) },
            _ => {
                let a = rng.gen_range(1..=m);
                let b = rng.gen_range(1..=m);
                if a == b {
                    continue;
                }
                Letter::Root { a, b, i: rng.gen_range(-2..=0) }
            }
        };
        if l.part() == Part::Lower {
            return l;
        }
    }
}

fn kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let k = kappa();
    for t in 0..20 {
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(1..=2);
        let all = fibers(&k, &sample_mu(m), n);
        let fw = &all[rng.gen_range(0..all.len())];
        let b = BoxBasis::for_fiber(fw, rng.gen_range(-1..=1), -1, 1);
        if b.is_empty() {
            return fail("empty sample box");
        }
        let key = &b.keys[rng.gen_range(0..b.len())];
        let x = random_lowering(m, &mut rng);
        let c = rng.gen_range(0..m);
        let r = eta_oracle_element(c, fw, &j_generator(&x, key), 12).map_err(|e| e.to_string())?;
        if !r.values().all(Zero::is_zero) {
            return fail(format!("generator {t}: c = {c}, {x:?} on {key} maps to {r:?}"));
        }
    }
    Ok("20 generators".into())
}

fn goldens() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_cherednik-lab");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 3] = [
        ("t1", &["--m", "2", "--N", "2", "--kappa", "5/2", "--mu", "0,1/3", "--lambda", "1,4/3", "--word", "t1"]),
        ("empty", &["--m", "2", "--N", "2", "--kappa", "5/2", "--mu", "0,1/3", "--lambda", "1,4/3", "--word", ""]),
        ("pi", &["--m", "2", "--N", "1", "--kappa", "5/2", "--mu", "0,1/3", "--nu", "0,1", "--word", "pi"]),
    ];
    for (name, args) in cases {
        let out = Command::new(exe).arg("intertwiner").args(args).output().map_err(|e| e.to_string())?;
        if !out.status.success() {
            return fail(format!("{name}: exit {:?}", out.status.code()));
        }
        let want = std::fs::read(dir.join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        if out.stdout != want {
            return fail(format!("{name}: output differs from the golden file"));
        }
    }
    Ok("3 goldens byte-identical".into())
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("presentation relations and associativity", presentation, Some(Duration::from_secs(10))),
        ("finite coinvariants are standard modules", standard_iso, None),
        ("theta closed form equals the literal operator", theta_dual_path, None),
        ("pi shifts theta by kappa/m", cor25, None),
        ("every letter intertwines the Cherednik actions", theorem, Some(Duration::from_secs(60))),
        ("eta closed form equals the series", eta_dual_path, None),
        ("braid relations and pi conjugation", braids, None),
        ("series kills the relations of the coinvariants", kernel, None),
        ("command line goldens", goldens, None),
    ];
    let mut failures = 0;
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
