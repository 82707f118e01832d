//! Permutations of `{1..N}`, compositions and minimal coset representatives.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored by its images. Internally 0-based; the public
/// indexing (`apply`, `simple`, `transposition`) is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, bound: n });
            }
            if seen[i - 1] {
                return Err(Error::InvalidParameters(format!("repeated image {i}")));
            }
            seen[i - 1] = true;
            out.push(i - 1);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    /// Uniformly random permutation.
    pub fn random<R: rand::Rng>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Self::from_zero_based(images)
    }

    /// The simple transposition `s_q` exchanging `q` and `q+1`.
    pub fn simple(n: usize, q: usize) -> Result<Self> {
        if q == 0 || q >= n {
            return Err(Error::IndexOutOfRange { index: q, bound: n.saturating_sub(1) });
        }
        Self::transposition(n, q, q + 1)
    }

    pub fn transposition(n: usize, p: usize, q: usize) -> Result<Self> {
        for i in [p, q] {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, bound: n });
            }
        }
        let mut w = Self::identity(n);
        w.images.swap(p - 1, q - 1);
        Ok(w)
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1] + 1
    }

    pub(crate) fn at(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(p) = self(other(p))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch { expected: self.size(), got: other.size() });
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Left action on sequences: `(w·v)_{w(p)} = v_p`.
    pub fn act_on_seq<T: Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.size() {
            return Err(Error::SizeMismatch { expected: self.size(), got: v.len() });
        }
        Ok(self.act(v))
    }

    pub(crate) fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (p, x) in v.iter().enumerate() {
            out[self.images[p]] = x.clone();
        }
        out
    }

    pub fn length(&self) -> usize {
        let n = self.size();
        let mut l = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// Reduced word `[q_1, ..., q_k]` (1-based) with `self = s_{q_1} ∘ ... ∘ s_{q_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut imgs = self.images.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for q in 0..imgs.len().saturating_sub(1) {
                if imgs[q] > imgs[q + 1] {
                    imgs.swap(q, q + 1);
                    rev.push(q + 1);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&v).map_err(serde::de::Error::custom)
    }
}

/// Nonnegative integer vector `(nu_1, ..., nu_m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Block index (0-based) of each position.
    pub fn block_of_positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total());
        for (a, &k) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(a, k));
        }
        out
    }

    /// Block `a` (0-based) and 1-based offset `h` of each position.
    pub fn block_offsets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.total());
        for (a, &k) in self.0.iter().enumerate() {
            for h in 1..=k {
                out.push((a, h));
            }
        }
        out
    }

    /// All compositions of `n` into `m` nonnegative parts.
    pub fn all(m: usize, n: usize) -> Vec<Composition> {
        fn rec(m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == m {
                cur.push(left);
                out.push(Composition(cur.clone()));
                cur.pop();
                return;
            }
            for k in (0..=left).rev() {
                cur.push(k);
                rec(m, left - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m == 0 {
            if n == 0 {
                out.push(Composition(vec![]));
            }
            return out;
        }
        rec(m, n, &mut Vec::new(), &mut out);
        out
    }

    /// `N! / prod nu_a!`.
    pub fn coset_count(&self) -> usize {
        let mut c: u128 = 1;
        let mut k: u128 = 0;
        for &p in &self.0 {
            for j in 1..=p as u128 {
                k += 1;
                c = c * k / j;
            }
        }
        c as usize
    }
}

/// Minimal length representatives of `S_N / S_nu`: permutations increasing
/// on every block of consecutive positions. Sorted by images.
pub fn min_coset_reps(nu: &Composition) -> Vec<Permutation> {
    let n = nu.total();
    let mut out = Vec::new();
    // block label of every value; values of one block fill its positions in order
    let mut counts = nu.0.clone();
    let mut assign = Vec::with_capacity(n);
    fn rec(
        n: usize,
        counts: &mut [usize],
        assign: &mut Vec<usize>,
        nu: &Composition,
        out: &mut Vec<Permutation>,
    ) {
        if assign.len() == n {
            let mut start = vec![0; nu.0.len()];
            let mut acc = 0;
            for (a, &k) in nu.0.iter().enumerate() {
                start[a] = acc;
                acc += k;
            }
            let mut images = vec![0; n];
            for (value, &a) in assign.iter().enumerate() {
                images[start[a]] = value;
                start[a] += 1;
            }
            out.push(Permutation { images });
            return;
        }
        for a in 0..counts.len() {
            if counts[a] > 0 {
                counts[a] -= 1;
                assign.push(a);
                rec(n, counts, assign, nu, out);
                assign.pop();
                counts[a] += 1;
            }
        }
    }
    rec(n, &mut counts, &mut assign, nu, &mut out);
    out.sort();
    out
}

/// Factors `w = rep ∘ s` with `rep` a minimal coset representative and `s`
/// preserving every block. Returns `rep`.
pub fn coset_rep(w: &Permutation, nu: &Composition) -> Permutation {
    let mut images = w.images.clone();
    let mut start = 0;
    for &k in &nu.0 {
        images[start..start + k].sort_unstable();
        start += k;
    }
    Permutation { images }
}

/// Whether `w` maps every block of `nu` to itself.
pub fn preserves_blocks(w: &Permutation, nu: &Composition) -> bool {
    let blocks = nu.block_of_positions();
    (0..w.size()).all(|p| blocks[p] == blocks[w.images[p]])
}

/// All integer vectors of length `n` with entries in `[lo, hi]` summing to
/// `total`, in lexicographic order.
pub fn bounded_vectors(n: usize, total: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, total: i64, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let left = n - cur.len();
        if left == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = (left - 1) as i64;
        for v in lo..=hi {
            let r = total - v;
            if r < rest * lo || r > rest * hi {
                continue;
            }
            cur.push(v);
            rec(n, r, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        rec(n, total, lo, hi, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        let w = s1.compose(&s2).unwrap().compose(&s1).unwrap();
        assert_eq!(w, Permutation::transposition(3, 1, 3).unwrap());
        let a = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(a.compose(&s1).unwrap().apply(1), a.apply(2));
    }

    #[test]
    fn sequence_action() {
        let w = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(w.act_on_seq(&['a', 'b', 'c']).unwrap(), vec!['c', 'a', 'b']);
        assert!(w.act_on_seq(&[1, 2]).is_err());
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in Permutation::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut acc = Permutation::identity(4);
            for q in word {
                acc = acc.then(&Permutation::simple(4, q).unwrap());
            }
            assert_eq!(acc, w);
        }
    }

    #[test]
    fn coset_counts() {
        assert_eq!(min_coset_reps(&Composition(vec![1, 1])).len(), 2);
        assert_eq!(min_coset_reps(&Composition(vec![2, 1])).len(), 3);
        assert_eq!(min_coset_reps(&Composition(vec![2, 0, 2])).len(), 6);
        assert_eq!(Composition(vec![2, 0, 2]).coset_count(), 6);
        assert_eq!(min_coset_reps(&Composition(vec![3, 0])).len(), 1);
    }

    #[test]
    fn bounded_vector_enumeration() {
        assert_eq!(bounded_vectors(2, 0, -1, 1), vec![vec![-1, 1], vec![0, 0], vec![1, -1]]);
        assert_eq!(bounded_vectors(3, 1, -2, 2).len(), 18);
        assert!(bounded_vectors(2, 5, -1, 1).is_empty());
    }

    #[test]
    fn coset_factorisation() {
        let nu = Composition(vec![2, 1, 1]);
        let reps = min_coset_reps(&nu);
        for w in Permutation::all(4) {
            let r = coset_rep(&w, &nu);
            assert!(reps.contains(&r));
            assert!(preserves_blocks(&r.inverse().then(&w), &nu));
        }
    }
}
