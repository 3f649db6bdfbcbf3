//! Exact linear algebra over `Q` using fraction-free integer row elimination.
//!
//! Rows are kept as primitive integer vectors; pivots are always the leftmost
//! nonzero column, so the resulting echelon form (and every nullspace witness
//! derived from it) is deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

fn primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x /= &g;
    }
}

/// Clears denominators of a rational row.
pub fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    primitive(&mut out);
    out
}

/// Incrementally maintained row-echelon form of a set of rows of fixed width.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `row` against the current pivots; returns the reduced row.
    fn reduce(&self, mut row: Vec<BigInt>) -> Vec<BigInt> {
        for (&p, prow) in &self.rows {
            if row[p].is_zero() {
                continue;
            }
            let g = row[p].gcd(&prow[p]);
            let a = &prow[p] / &g;
            let b = &row[p] / &g;
            for j in 0..self.width {
                row[j] = &row[j] * &a - &prow[j] * &b;
            }
            primitive(&mut row);
        }
        row
    }

    /// Inserts a row; returns `true` if the rank increased.
    pub fn insert(&mut self, row: &[Q]) -> bool {
        assert_eq!(row.len(), self.width);
        let row = self.reduce(integer_row(row));
        match row.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let mut row = row;
                if row[p].is_negative() {
                    row.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.rows.insert(p, row);
                true
            }
            None => false,
        }
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &[Q]) -> bool {
        self.reduce(integer_row(row)).iter().all(Zero::is_zero)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Fully reduced row-echelon form with unit pivots.
    pub fn rref(&self) -> Vec<(usize, Vec<Q>)> {
        let mut rows: Vec<(usize, Vec<BigInt>)> = self.rows.iter().map(|(p, r)| (*p, r.clone())).collect();
        for i in (0..rows.len()).rev() {
            let (p, prow) = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                let r = &mut row.1;
                if r[p].is_zero() {
                    continue;
                }
                let g = r[p].gcd(&prow[p]);
                let a = &prow[p] / &g;
                let b = &r[p] / &g;
                for j in 0..self.width {
                    r[j] = &r[j] * &a - &prow[j] * &b;
                }
                primitive(r);
            }
        }
        rows.into_iter()
            .map(|(p, r)| {
                let lead = Q::from_integer(r[p].clone());
                (p, r.into_iter().map(|x| Q::from_integer(x) / &lead).collect())
            })
            .collect()
    }

    /// Basis of the right nullspace `{x : row . x = 0 for all rows}`, one
    /// vector per free column, each scaled to a primitive integer vector with
    /// positive free entry.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let rref = self.rref();
        let pivots: Vec<usize> = rref.iter().map(|(p, _)| *p).collect();
        let mut out = Vec::new();
        for f in (0..self.width).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Q::zero(); self.width];
            v[f] = Q::one();
            for (p, row) in &rref {
                v[*p] = -row[f].clone();
            }
            let ints = integer_row(&v);
            out.push(ints.into_iter().map(Q::from_integer).collect());
        }
        out
    }
}

pub fn rank(rows: &[Vec<Q>], width: usize) -> usize {
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn nullspace(rows: &[Vec<Q>], width: usize) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r);
    }
    e.nullspace()
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let lead = a[col][col].clone();
        a[col].iter_mut().for_each(|x| *x /= &lead);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pr = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let lead = a[col][col].clone();
        det *= &lead;
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &lead;
                let pr = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}
