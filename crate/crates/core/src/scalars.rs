//! Exact rational scalars and lattice predicates.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `p/q` or `p`. Whitespace around the parts is ignored.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    let d = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

pub fn parse_scalar_list(s: &str) -> Result<Vec<Scalar>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_scalar).collect()
}

/// Canonical text form: `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &Scalar) -> bool {
    x.is_integer()
}

/// Converts an integral scalar to `i64`.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer().clone()).ok()
}

/// Whether `x` lies in the lattice generated by 1 and `kappa`.
///
/// For `kappa = p/q` in lowest terms the lattice is `(1/q) Z`.
pub fn in_lattice(x: &Scalar, kappa: &Scalar) -> bool {
    let q = BigRational::from_integer(kappa.denom().clone());
    (x * q).is_integer()
}

/// Integers `(j, k)` with `x = j + k kappa`, when `x` is in the lattice.
pub fn lattice_decomposition(x: &Scalar, kappa: &Scalar) -> Option<(BigInt, BigInt)> {
    if !in_lattice(x, kappa) {
        return None;
    }
    let (p, q) = (kappa.numer().clone(), kappa.denom().clone());
    let t = (x * BigRational::from_integer(q.clone())).to_integer();
    if p.is_zero() {
        return Some((t, BigInt::zero()));
    }
    let e = q.extended_gcd(&p);
    let t = t / &e.gcd;
    Some((&t * &e.x, &t * &e.y))
}

/// First pair `a < b` (1-based) with `mu_a - mu_b` in `Z + kappa Z`.
pub fn genericity_witness(mu: &[Scalar], kappa: &Scalar) -> Option<(usize, usize, Scalar)> {
    for a in 0..mu.len() {
        for b in a + 1..mu.len() {
            let d = &mu[a] - &mu[b];
            if in_lattice(&d, kappa) {
                return Some((a + 1, b + 1, d));
            }
        }
    }
    None
}

pub fn is_generic(mu: &[Scalar], kappa: &Scalar) -> bool {
    genericity_witness(mu, kappa).is_none()
}

pub fn factorial(n: u64) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

pub mod serde_scalar {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_scalar_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format_scalar(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Scalar>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_scalar(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_scalar_matrix {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let r: Vec<String> = row.iter().map(format_scalar).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Scalar>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_scalar(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_witness() {
        for (x, k) in [(ratio(1, 3), ratio(7, 3)), (ratio(-2, 3), ratio(-5, 3)), (int(3), int(0)), (ratio(1, 2), ratio(5, 2))] {
            let (j, kk) = lattice_decomposition(&x, &k).unwrap();
            assert_eq!(BigRational::from_integer(j) + BigRational::from_integer(kk) * &k, x);
        }
        assert!(lattice_decomposition(&ratio(1, 3), &ratio(5, 2)).is_none());
    }

    #[test]
    fn round_trip_text() {
        for s in ["3/7", "-2/5", "4", "0", "-11"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(format_scalar(&parse_scalar("6/4").unwrap()), "3/2");
        assert_eq!(format_scalar(&parse_scalar("4/2").unwrap()), "2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn lattice_examples() {
        let k = ratio(5, 2);
        assert!(in_lattice(&ratio(1, 2), &k));
        assert!(!in_lattice(&ratio(1, 3), &k));
        assert!(in_lattice(&int(3), &int(0)));
        assert!(!in_lattice(&ratio(1, 3), &int(0)));
        assert!(is_generic(&[int(0), ratio(1, 3)], &k));
        assert!(!is_generic(&[int(0), ratio(1, 2)], &k));
        assert!(!is_generic(&[int(0), ratio(1, 3)], &ratio(7, 3)));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
    }
}
