use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};

/// Sparse vector in a [`RingDescription`] basis.
pub type RingElement = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: u32,
}

/// A graded ring free of finite rank over `Z`, given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDescription {
    basis: Vec<BasisElement>,
    unit: usize,
    products: BTreeMap<(usize, usize), RingElement>,
}

fn add_into(acc: &mut RingElement, k: usize, c: BigInt) {
    let e = acc.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

impl RingDescription {
    /// Validates indices and homogeneity of every structure constant.
    pub fn new(
        basis: Vec<BasisElement>,
        unit: usize,
        products: BTreeMap<(usize, usize), RingElement>,
    ) -> Result<Self> {
        let n = basis.len();
        if unit >= n || basis[unit].degree != 0 {
            return Err(Error::InvalidParameter("unit must be a degree-0 basis element".into()));
        }
        let mut cleaned = BTreeMap::new();
        for ((i, j), v) in products {
            if i >= n || j >= n || v.keys().any(|&k| k >= n) {
                return Err(Error::InvalidParameter("structure constant index out of range".into()));
            }
            let v: RingElement = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let deg = basis[i].degree + basis[j].degree;
            if let Some(k) = v.keys().find(|&&k| basis[k].degree != deg) {
                return Err(Error::InvalidParameter(format!(
                    "{} * {} has a term {} of the wrong degree",
                    basis[i].label, basis[j].label, basis[*k].label
                )));
            }
            if !v.is_empty() {
                cleaned.insert((i, j), v);
            }
        }
        Ok(Self {
            basis,
            unit,
            products: cleaned,
        })
    }

    /// `Z` in degree 0.
    pub fn integers() -> Self {
        let one = BTreeMap::from([(0, BigInt::one())]);
        Self::new(
            vec![BasisElement {
                label: "1".into(),
                degree: 0,
            }],
            0,
            BTreeMap::from([((0, 0), one)]),
        )
        .expect("valid")
    }

    /// `H_*(S^1) = Z[e]/(e^2)` with `|e| = 1`.
    pub fn circle_homology() -> Self {
        let basis = vec![
            BasisElement {
                label: "1".into(),
                degree: 0,
            },
            BasisElement {
                label: "e".into(),
                degree: 1,
            },
        ];
        let products = BTreeMap::from([
            ((0, 0), BTreeMap::from([(0, BigInt::one())])),
            ((0, 1), BTreeMap::from([(1, BigInt::one())])),
            ((1, 0), BTreeMap::from([(1, BigInt::one())])),
        ]);
        Self::new(basis, 0, products).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn basis_vector(&self, i: usize) -> RingElement {
        BTreeMap::from([(i, BigInt::one())])
    }

    pub fn basis_product(&self, i: usize, j: usize) -> RingElement {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let mut out = RingElement::new();
        for (i, a) in x {
            for (j, b) in y {
                if let Some(p) = self.products.get(&(*i, *j)) {
                    for (k, c) in p {
                        add_into(&mut out, *k, a * b * c);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let mut out = x.clone();
        for (k, c) in y {
            add_into(&mut out, *k, c.clone());
        }
        out
    }

    /// Rank in each degree `0..=max degree`.
    pub fn ranks_by_degree(&self) -> Vec<usize> {
        let top = self.basis.iter().map(|b| b.degree).max().unwrap_or(0) as usize;
        let mut ranks = vec![0; top + 1];
        for b in &self.basis {
            ranks[b.degree as usize] += 1;
        }
        ranks
    }

    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.len() {
            let e = self.basis_vector(i);
            let u = self.basis_vector(self.unit);
            if self.mul(&u, &e) != e || self.mul(&e, &u) != e {
                return Err(Error::Invariant(format!("unit fails on {}", self.basis[i].label)));
            }
        }
        Ok(())
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(Error::Invariant(format!(
                            "({} {}) {} != {} ({} {})",
                            self.basis[i].label,
                            self.basis[j].label,
                            self.basis[k].label,
                            self.basis[i].label,
                            self.basis[j].label,
                            self.basis[k].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `x y = (-1)^{|x||y|} y x` on basis elements.
    pub fn check_graded_commutative(&self) -> Result<()> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                let sign = if self.basis[i].degree * self.basis[j].degree % 2 == 1 { -1 } else { 1 };
                let ji: RingElement = self
                    .basis_product(j, i)
                    .into_iter()
                    .map(|(k, c)| (k, c * sign))
                    .collect();
                if self.basis_product(i, j) != ji {
                    return Err(Error::Invariant(format!(
                        "{} and {} do not graded-commute",
                        self.basis[i].label, self.basis[j].label
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `A (x) B` with basis `x (x) y` (index `i * |B| + j`) and the Koszul rule
/// `(x (x) y)(x' (x) y') = (-1)^{|y||x'|} x x' (x) y y'`.
pub fn kunneth_tensor(a: &RingDescription, b: &RingDescription) -> RingDescription {
    let nb = b.len();
    let mut basis = Vec::with_capacity(a.len() * nb);
    for x in &a.basis {
        for y in &b.basis {
            basis.push(BasisElement {
                label: format!("{}(x){}", x.label, y.label),
                degree: x.degree + y.degree,
            });
        }
    }
    let mut products = BTreeMap::new();
    for ((i, k), pa) in &a.products {
        for ((j, l), pb) in &b.products {
            let sign = if b.basis[*j].degree * a.basis[*k].degree % 2 == 1 { -1 } else { 1 };
            let mut v = RingElement::new();
            for (p, ca) in pa {
                for (q, cb) in pb {
                    add_into(&mut v, p * nb + q, ca * cb * sign);
                }
            }
            products.insert((i * nb + j, k * nb + l), v);
        }
    }
    RingDescription::new(basis, a.unit * nb + b.unit, products).expect("tensor of valid rings is valid")
}

impl Serialize for RingDescription {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            label: &'a str,
            coeff: String,
        }
        let products: Vec<(&str, &str, Vec<Term>)> = self
            .products
            .iter()
            .map(|((i, j), v)| {
                (
                    self.basis[*i].label.as_str(),
                    self.basis[*j].label.as_str(),
                    v.iter()
                        .map(|(k, c)| Term {
                            label: &self.basis[*k].label,
                            coeff: c.to_string(),
                        })
                        .collect(),
                )
            })
            .collect();
        let mut st = s.serialize_struct("RingDescription", 3)?;
        st.serialize_field("generators", &self.basis)?;
        st.serialize_field("unit", &self.basis[self.unit].label)?;
        st.serialize_field("products", &products)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_torus_from_two_circles() {
        let c = RingDescription::circle_homology();
        let t = kunneth_tensor(&c, &c);
        assert_eq!(t.ranks_by_degree(), vec![1, 2, 1]);
        t.check_unit().unwrap();
        t.check_associative().unwrap();
        t.check_graded_commutative().unwrap();

        let e1 = t.basis_vector(t.index_of("e(x)1").unwrap());
        let e2 = t.basis_vector(t.index_of("1(x)e").unwrap());
        let top = t.index_of("e(x)e").unwrap();
        assert_eq!(t.mul(&e1, &e2), BTreeMap::from([(top, BigInt::one())]));
        assert_eq!(t.mul(&e2, &e1), BTreeMap::from([(top, BigInt::from(-1))]));
        let s = t.add(&e1, &e2);
        assert!(t.mul(&s, &s).is_empty());
    }

    #[test]
    fn integers_are_a_tensor_unit() {
        let c = RingDescription::circle_homology();
        let t = kunneth_tensor(&c, &RingDescription::integers());
        assert_eq!(t.ranks_by_degree(), c.ranks_by_degree());
        for i in 0..c.len() {
            for j in 0..c.len() {
                assert_eq!(t.basis_product(i, j), c.basis_product(i, j));
            }
        }
    }

    #[test]
    fn kunneth_rank_convolution() {
        let c = RingDescription::circle_homology();
        let t3 = kunneth_tensor(&kunneth_tensor(&c, &c), &c);
        assert_eq!(t3.ranks_by_degree(), vec![1, 3, 3, 1]);
        t3.check_associative().unwrap();
        t3.check_graded_commutative().unwrap();
    }

    #[test]
    fn rejects_inhomogeneous_products() {
        let c = RingDescription::circle_homology();
        let mut products = c.products.clone();
        products.insert((1, 1), BTreeMap::from([(0, BigInt::one())]));
        assert!(RingDescription::new(c.basis.clone(), 0, products).is_err());
    }
}
