use super::CycloNumber;
use crate::error::{Error, Result};

/// Square matrix over a fixed cyclotomic field, stored by sparse rows.
///
/// Induced representations of the Heisenberg group are monomial, so rows
/// almost always hold a single entry; products and Kronecker products stay
/// sparse.
#[derive(Clone, Debug)]
pub struct CycloMatrix {
    size: usize,
    level: u64,
    rows: Vec<Vec<(usize, CycloNumber)>>,
}

impl CycloMatrix {
    pub fn zero(size: usize, level: u64) -> Self {
        Self {
            size,
            level,
            rows: vec![Vec::new(); size],
        }
    }

    pub fn identity(size: usize, level: u64) -> Self {
        Self::scalar(size, &CycloNumber::from_integer(level, 1))
    }

    pub fn scalar(size: usize, value: &CycloNumber) -> Self {
        Self::diagonal(&vec![value.clone(); size])
    }

    pub fn diagonal(values: &[CycloNumber]) -> Self {
        let level = values.first().map_or(1, |v| v.level());
        let mut m = Self::zero(values.len(), level);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn get(&self, i: usize, j: usize) -> CycloNumber {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| CycloNumber::zero(self.level))
    }

    pub fn set(&mut self, i: usize, j: usize, value: CycloNumber) {
        let value = value.embed(self.level).expect("entry level divides matrix level");
        let row = &mut self.rows[i];
        row.retain(|(c, _)| *c != j);
        if !value.is_zero() {
            row.push((j, value));
            row.sort_by_key(|(c, _)| *c);
        }
    }

    /// Nonzero entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> &[(usize, CycloNumber)] {
        &self.rows[i]
    }

    pub fn embed(&self, level: u64) -> Result<Self> {
        if level % self.level != 0 {
            return Err(Error::BadEmbedding {
                from: self.level,
                to: level,
            });
        }
        Ok(Self {
            size: self.size,
            level,
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, v.embed(level).expect("checked")))
                        .collect()
                })
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "dimension mismatch");
        let level = super::lcm(self.level, other.level);
        let mut out = Self::zero(self.size, level);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: Vec<Option<CycloNumber>> = vec![None; self.size];
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let p = a * b;
                    acc[*j] = Some(match acc[*j].take() {
                        Some(s) => &s + &p,
                        None => p,
                    });
                }
            }
            out.rows[i] = acc
                .into_iter()
                .enumerate()
                .filter_map(|(j, v)| v.filter(|v| !v.is_zero()).map(|v| (j, v.embed(level).expect("lcm"))))
                .collect();
        }
        out
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::identity(self.size, self.level);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product; basis `(i, j)` is index `i * other.size + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let level = super::lcm(self.level, other.level);
        let n = self.size * other.size;
        let mut out = Self::zero(n, level);
        for (i, row_a) in self.rows.iter().enumerate() {
            for (p, row_b) in other.rows.iter().enumerate() {
                let r = i * other.size + p;
                let mut entries: Vec<(usize, CycloNumber)> = Vec::new();
                for (j, a) in row_a {
                    for (q, b) in row_b {
                        let v = a * b;
                        entries.push((j * other.size + q, v.embed(level).expect("lcm")));
                    }
                }
                entries.sort_by_key(|(c, _)| *c);
                out.rows[r] = entries;
            }
        }
        out
    }

    pub fn trace(&self) -> CycloNumber {
        let mut t = CycloNumber::zero(self.level);
        for i in 0..self.size {
            if let Some((_, v)) = self.rows[i].iter().find(|(c, _)| *c == i) {
                t = &t + v;
            }
        }
        t
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> CycloNumber {
        let mut t = CycloNumber::zero(super::lcm(self.level, other.level));
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                if let Some((_, b)) = other.rows[*k].iter().find(|(c, _)| *c == i) {
                    t = &t + &(a * b);
                }
            }
        }
        t
    }

    /// The scalar `c` if this matrix equals `c * identity`.
    pub fn as_scalar(&self) -> Option<CycloNumber> {
        let first = self.get(0, 0);
        let is_scalar = self
            .rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.len() == 1 && row[0].0 == i && row[0].1 == first);
        is_scalar.then_some(first)
    }
}

impl PartialEq for CycloMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 && x.1 == y.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::RootOfUnity;

    #[test]
    fn kron_of_permutation_and_diagonal() {
        let mut x = CycloMatrix::zero(2, 2);
        x.set(0, 1, CycloNumber::from_integer(2, 1));
        x.set(1, 0, CycloNumber::from_integer(2, 1));
        let y = CycloMatrix::diagonal(&[
            CycloNumber::from_integer(2, 1),
            CycloNumber::root(&RootOfUnity::primitive(2), 2).unwrap(),
        ]);
        let k = x.kron(&y);
        assert_eq!(k.size(), 4);
        assert_eq!(k.get(0, 2), CycloNumber::from_integer(2, 1));
        assert_eq!(k.get(1, 3), CycloNumber::from_integer(2, -1));
        assert!(k.trace().is_zero());
        assert_eq!(x.mul(&x), CycloMatrix::identity(2, 2));
        assert_eq!(x.trace_of_product(&x), CycloNumber::from_integer(2, 2));
        assert_eq!(y.pow(2).as_scalar(), Some(CycloNumber::from_integer(2, 1)));
    }
}
