//! Torus-lattice model of the component multiplication map.
//!
//! The component of `zeta` (order `r`) is the torus `R^2 / L_r` with
//! `L_r = (1/r) Z^2`. Its homology is the exterior algebra on `L_r`, with
//! `a` the point class, `b` and `c` the loops along the two lattice generators
//! and `d = b ^ c` the fundamental class. Multiplying components `zeta, zeta'`
//! is modeled as
//!
//! 1. the cross product into `T_r x T_s`,
//! 2. the addition map into `R^2 / L_{dt}` (`dt = lcm(r, s)`),
//! 3. the covering transfer to the `d^2`-fold cover `R^2 / L_t`,
//!    computed as `PD o Lambda^{2-k}(P^T) o PD^-1`,
//! 4. scaling by `rs / (t d^2)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CoeffDomain, GradedElement, Generator, Kind};
use crate::error::{Error, Result};
use crate::heisenberg::TensorCaseData;

/// Largest component order accepted by the transfer oracle.
pub const MAX_TRANSFER_ORDER: u64 = 10_000;

type IntMatrix = Vec<Vec<BigInt>>;

/// Exterior algebra vectors: bitmask of basis indices to coefficient.
type Ext = BTreeMap<u32, BigInt>;

/// A rank-2 lattice `L` in the plane with `Z^2 <= L`, stored by generator columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice2 {
    cols: [[BigRational; 2]; 2],
}

impl Lattice2 {
    pub fn new(cols: [[BigRational; 2]; 2]) -> Result<Self> {
        let lat = Self { cols };
        if lat.det().is_zero() {
            return Err(Error::InvalidParameter("lattice generators are dependent".into()));
        }
        for e in [[1, 0], [0, 1]] {
            let v = [BigRational::from_integer(e[0].into()), BigRational::from_integer(e[1].into())];
            if !lat.coords(&v).iter().all(|c| c.is_integer()) {
                return Err(Error::InvalidParameter("lattice does not contain Z^2".into()));
            }
        }
        Ok(lat)
    }

    /// `(1/r) Z^2`.
    pub fn scaled_integer(r: u64) -> Self {
        let q = BigRational::new(BigInt::one(), BigInt::from(r));
        let z = BigRational::zero();
        Self::new([[q.clone(), z.clone()], [z, q]]).expect("valid")
    }

    fn det(&self) -> BigRational {
        &self.cols[0][0] * &self.cols[1][1] - &self.cols[1][0] * &self.cols[0][1]
    }

    /// Coordinates of `v` in the generator basis.
    fn coords(&self, v: &[BigRational; 2]) -> [BigRational; 2] {
        let det = self.det();
        let [[a, c], [b, d]] = &self.cols;
        [(d * &v[0] - b * &v[1]) / &det, (a * &v[1] - c * &v[0]) / &det]
    }

    /// Integer matrix whose columns express the generators of `sub` in this basis.
    pub fn sublattice_matrix(&self, sub: &Lattice2) -> Result<[[BigInt; 2]; 2]> {
        let mut m: [[BigInt; 2]; 2] = Default::default();
        for (j, col) in sub.cols.iter().enumerate() {
            let c = self.coords(col);
            for i in 0..2 {
                if !c[i].is_integer() {
                    return Err(Error::InvalidParameter("not a sublattice".into()));
                }
                m[i][j] = c[i].to_integer();
            }
        }
        Ok(m)
    }

    /// `[self : sub]`.
    pub fn index_of(&self, sub: &Lattice2) -> Result<BigInt> {
        let m = self.sublattice_matrix(sub)?;
        Ok((&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).abs())
    }
}

fn det(m: &IntMatrix) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: IntMatrix = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// Sign of concatenating the sorted index lists of `a` then `b`.
fn shuffle_sign(a: u32, b: u32) -> i32 {
    let mut inversions = 0;
    for i in bits(a) {
        inversions += bits(b).iter().filter(|&&j| j < i).count();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn wedge(x: &Ext, y: &Ext) -> Ext {
    let mut out = Ext::new();
    for (s, a) in x {
        for (t, b) in y {
            if s & t == 0 {
                *out.entry(s | t).or_default() += a * b * shuffle_sign(*s, *t);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `Lambda^k(A)` applied to `x`, entries given by `k x k` minors.
fn exterior_power(a: &IntMatrix, x: &Ext) -> Ext {
    let m = a.len();
    let mut out = Ext::new();
    for (s, c) in x {
        let cols = bits(*s);
        for t in subsets(m, cols.len()) {
            let rows = bits(t);
            let minor: IntMatrix = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
            *out.entry(t).or_default() += c * det(&minor);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

const TOP: u32 = 0b11;

/// Poincare duality on the 2-torus, cohomology to homology: `e_S* -> sign e_{S^c}`.
fn pd(x: &Ext) -> Ext {
    x.iter().map(|(s, c)| (TOP & !s, c * shuffle_sign(*s, TOP & !s))).collect()
}

fn pd_inv(x: &Ext) -> Ext {
    x.iter().map(|(s, c)| (TOP & !s, c * shuffle_sign(TOP & !s, *s))).collect()
}

fn mask_of(kind: Kind) -> u32 {
    match kind {
        Kind::A => 0,
        Kind::B => 0b01,
        Kind::C => 0b10,
        Kind::D => 0b11,
    }
}

fn kind_of(mask: u32) -> Kind {
    match mask {
        0 => Kind::A,
        0b01 => Kind::B,
        0b10 => Kind::C,
        _ => Kind::D,
    }
}

/// Linear homology part of the component multiplication map on `g1 x g2`.
pub fn transfer_product(g1: &Generator, g2: &Generator) -> Result<GradedElement> {
    let degree = g1.degree() + g2.degree();
    if degree > 2 {
        return Err(Error::UnsupportedPair(g1.to_string(), g2.to_string(), degree));
    }
    for g in [g1, g2] {
        if g.zeta.order() > MAX_TRANSFER_ORDER {
            return Err(Error::ResourceGuard(format!(
                "component order {} exceeds {MAX_TRANSFER_ORDER}",
                g.zeta.order()
            )));
        }
    }
    let data = TensorCaseData::new(&g1.zeta, &g2.zeta);
    let lr = Lattice2::scaled_integer(data.r);
    let ls = Lattice2::scaled_integer(data.s);
    let base = Lattice2::scaled_integer(data.d * data.t);
    let cover = Lattice2::scaled_integer(data.t);

    // addition map L_r + L_s -> L_dt as a 2 x 4 matrix
    let ar = base.sublattice_matrix(&lr)?;
    let as_ = base.sublattice_matrix(&ls)?;
    let add: IntMatrix = (0..2)
        .map(|i| vec![ar[i][0].clone(), ar[i][1].clone(), as_[i][0].clone(), as_[i][1].clone()])
        .collect();

    let x1 = Ext::from([(mask_of(g1.kind), BigInt::one())]);
    let x2 = Ext::from([(mask_of(g2.kind) << 2, BigInt::one())]);
    let pushed = exterior_power(&add, &wedge(&x1, &x2));

    let p = base.sublattice_matrix(&cover)?;
    let pt: IntMatrix = (0..2).map(|i| (0..2).map(|j| p[j][i].clone()).collect()).collect();
    let lifted = pd(&exterior_power(&pt, &pd_inv(&pushed)));

    let mult = BigInt::from(data.multiplicity());
    let target = g1.zeta.mul(&g2.zeta);
    Ok(GradedElement::from_terms(
        CoeffDomain::Integers,
        lifted
            .into_iter()
            .map(|(mask, c)| (Generator::new(kind_of(mask), target), c * &mult)),
    ))
}

/// Coefficient of the target generator (`a`, the degree-1 kind, or `d`) in
/// [`transfer_product`].
pub fn transfer_coefficient_oracle(g1: &Generator, g2: &Generator) -> Result<BigInt> {
    let product = transfer_product(g1, g2)?;
    let kind = match (g1.kind, g2.kind) {
        (Kind::A, Kind::A) => Kind::A,
        (Kind::A, k) | (k, Kind::A) if k.degree() == 1 => k,
        _ => Kind::D,
    };
    Ok(product.coefficient(&Generator::new(kind, g1.zeta.mul(&g2.zeta))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::RootOfUnity;
    use crate::repring::generator_product;

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    #[test]
    fn oracle_examples() {
        let m1 = r("1/2");
        assert_eq!(transfer_coefficient_oracle(&Generator::b(m1), &Generator::c(m1)).unwrap(), BigInt::one());
        for g in Generator::of_component(r("1/3")) {
            let unit = Generator::a(RootOfUnity::ONE);
            if g.degree() <= 2 {
                assert_eq!(transfer_coefficient_oracle(&unit, &g).unwrap(), BigInt::one());
            }
        }
        assert!(transfer_product(&Generator::b(m1), &Generator::b(r("1/3"))).unwrap().is_zero());
    }

    #[test]
    fn rejects_high_degree() {
        let m1 = r("1/2");
        assert!(matches!(
            transfer_product(&Generator::b(m1), &Generator::d(m1)),
            Err(Error::UnsupportedPair(_, _, 3))
        ));
    }

    #[test]
    fn agrees_with_table_up_to_order_eight() {
        let gens: Vec<Generator> = (1..=8u64)
            .flat_map(RootOfUnity::all_of_order)
            .flat_map(Generator::of_component)
            .collect();
        for g in &gens {
            for h in &gens {
                if g.degree() + h.degree() > 2 {
                    continue;
                }
                let table = generator_product(g, h)
                    .map(|(k, c)| GradedElement::from_terms(CoeffDomain::Integers, [(k, c)]))
                    .unwrap_or_else(|| GradedElement::zero(CoeffDomain::Integers));
                assert_eq!(transfer_product(g, h).unwrap(), table, "{g} * {h}");
            }
        }
    }

    #[test]
    fn lattice_indices() {
        let l6 = Lattice2::scaled_integer(6);
        let l2 = Lattice2::scaled_integer(2);
        assert_eq!(l6.index_of(&l2).unwrap(), BigInt::from(9));
        assert!(l2.sublattice_matrix(&l6).is_err());
        let half = BigRational::new(1.into(), 2.into());
        let z = BigRational::zero();
        assert!(Lattice2::new([[half.clone(), z.clone()], [half, z]]).is_err());
    }
}
