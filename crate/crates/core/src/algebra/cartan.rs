//! Simply-laced Cartan types, their Cartan matrices and finite root systems.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    /// Edges of the Dynkin diagram (0-based, Bourbaki labelling).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            a[i][j] = -1;
            a[j][i] = -1;
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::InvalidType(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            'B' | 'C' | 'F' | 'G' => return Err(Error::UnsupportedType(s.into())),
            _ => return Err(Error::InvalidType(s.into())),
        };
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Positive roots in simple-root coordinates, sorted by height then
/// lexicographically. Uses the simply-laced rule: for a positive root `b`
/// and simple `a_i`, `b + a_i` is a root iff `(b, a_i) = -1`.
pub fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| b[j] * cartan[j][i]).sum();
                if pairing == -1 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if !roots.contains(&c) && !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_types() {
        assert_eq!("A2".parse::<CartanType>().unwrap().rank, 2);
        assert!(matches!("B2".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!(matches!("D3".parse::<CartanType>(), Err(Error::InvalidType(_))));
        assert!(matches!("E9".parse::<CartanType>(), Err(Error::InvalidType(_))));
        assert!("A0".parse::<CartanType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        let count = |s: &str| positive_roots(&s.parse::<CartanType>().unwrap().cartan_matrix()).len();
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A3"), 6);
        assert_eq!(count("D4"), 12);
        assert_eq!(count("D5"), 20);
        assert_eq!(count("E6"), 36);
        assert_eq!(count("E7"), 63);
        assert_eq!(count("E8"), 120);
    }
}
