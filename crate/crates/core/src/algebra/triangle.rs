//! Triangular arrays of nested characteristic-polynomial coefficients.
//!
//! `CharTriangle` holds one value for each pair (i, h) with 1 <= h <= i <= n:
//! the h-th coefficient attached to the leading i x i block. The diagonal
//! values (i, i) are determinants of invertible blocks and must be nonzero.
//!
//! Wire format: `{"n": 2, "values": {"1,1": "2", "2,1": "10", "2,2": "10"}}`,
//! keys are `"i,h"`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;

#[derive(Clone, PartialEq, Debug)]
pub struct CharTriangle {
    n: usize,
    // rows[i-1] has i entries: values (i, 1), ..., (i, i)
    rows: Vec<Vec<Rational>>,
}

impl CharTriangle {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Shape(format!(
                    "triangle row {} must have {} entries",
                    i + 1,
                    i + 1
                )));
            }
            if row[i].is_zero() {
                return Err(Error::ZeroDeterminantDatum(i + 1));
            }
        }
        Ok(CharTriangle { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Value at block size i, coefficient index h (both 1-based).
    pub fn get(&self, i: usize, h: usize) -> &Rational {
        &self.rows[i - 1][h - 1]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}

impl Serialize for CharTriangle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            n: usize,
            values: BTreeMap<String, String>,
        }
        let mut values = BTreeMap::new();
        for i in 1..=self.n {
            for h in 1..=i {
                values.insert(format!("{i},{h}"), format_rational(self.get(i, h)));
            }
        }
        Wire { n: self.n, values }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CharTriangle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            values: BTreeMap<String, String>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let expected = wire.n * (wire.n + 1) / 2;
        if wire.values.len() != expected {
            return Err(D::Error::custom(format!(
                "expected {expected} triangle values, got {}",
                wire.values.len()
            )));
        }
        let mut rows: Vec<Vec<Rational>> =
            (1..=wire.n).map(|i| vec![Rational::zero(); i]).collect();
        for (key, val) in &wire.values {
            let (i, h) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad triangle key `{key}`")))?;
            let (i, h): (usize, usize) = (i, h);
            if i < 1 || i > wire.n || h < 1 || h > i {
                return Err(D::Error::custom(format!(
                    "triangle key `{key}` out of range"
                )));
            }
            rows[i - 1][h - 1] =
                parse_rational(val).map_err(|e| D::Error::custom(e.to_string()))?;
        }
        CharTriangle::new(rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat_i64;

    #[test]
    fn construction_validates_diagonal() {
        let ok = CharTriangle::new(vec![vec![rat_i64(2)], vec![rat_i64(10), rat_i64(10)]]);
        assert!(ok.is_ok());
        let bad = CharTriangle::new(vec![vec![rat_i64(2)], vec![rat_i64(10), rat_i64(0)]]);
        assert!(matches!(bad, Err(Error::ZeroDeterminantDatum(2))));
    }

    #[test]
    fn json_roundtrip() {
        let t = CharTriangle::new(vec![vec![rat_i64(2)], vec![rat_i64(10), rat_i64(10)]]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"2,1\":\"10\""));
        let back: CharTriangle = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
        // missing key rejected
        let bad = r#"{"n":2,"values":{"1,1":"2","2,2":"10"}}"#;
        assert!(serde_json::from_str::<CharTriangle>(bad).is_err());
    }
}
