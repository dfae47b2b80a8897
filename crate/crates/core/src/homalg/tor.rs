use num_bigint::BigInt;
use num_traits::One;

use super::matrix::{smith_normal_form, IntMatrix};
use super::{AbelianGroup, GradedAbelianGroup};
use crate::cyclo;
use crate::error::{Error, Result};

/// Coefficient module for Tor: the trivial module `Z` or `F_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Field(u64),
}

/// A `Z[C_m]`-module that is free of finite rank over `Z`, given by the
/// action matrix `T` of the generator `t` (so `T^m = I`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicModule {
    m: u64,
    t: IntMatrix,
}

impl CyclicModule {
    pub fn from_action(m: u64, t: IntMatrix) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("cyclic group order m must be >= 1".into()));
        }
        if t.rows() != t.cols() {
            return Err(Error::InvalidParameter("action matrix must be square".into()));
        }
        let mut p = IntMatrix::identity(t.rows());
        for _ in 0..m {
            p = p.mul(&t);
        }
        if p != IntMatrix::identity(t.rows()) {
            return Err(Error::InvalidParameter(format!("action does not satisfy t^{m} = 1")));
        }
        Ok(Self { m, t })
    }

    /// `Z` with `t` acting as the identity.
    pub fn trivial(m: u64) -> Result<Self> {
        Self::from_action(m, IntMatrix::identity(1))
    }

    /// The free module `Z[C_m]`, basis `t^0, ..., t^{m-1}`.
    pub fn free(m: u64) -> Result<Self> {
        let n = m as usize;
        let mut t = IntMatrix::zeros(n, n);
        for i in 0..n {
            t[((i + 1) % n, i)] = BigInt::one();
        }
        Self::from_action(m, t)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.t.rows()
    }

    pub fn action(&self) -> &IntMatrix {
        &self.t
    }

    fn t_minus_one(&self) -> IntMatrix {
        self.t.add(&IntMatrix::identity(self.rank()).scale(&BigInt::from(-1)))
    }

    fn norm(&self) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.rank(), self.rank());
        let mut p = IntMatrix::identity(self.rank());
        for _ in 0..self.m {
            acc = acc.add(&p);
            p = p.mul(&self.t);
        }
        acc
    }
}

/// A bounded complex `M_0 <- M_1 <- ...` of [`CyclicModule`]s with
/// equivariant differentials; `diffs[j]: M_{j+1} -> M_j`.
#[derive(Clone, Debug)]
pub struct CyclicModuleComplex {
    m: u64,
    modules: Vec<CyclicModule>,
    diffs: Vec<IntMatrix>,
}

impl CyclicModuleComplex {
    /// Checks shapes, equivariance and `d o d = 0`.
    pub fn new(modules: Vec<CyclicModule>, diffs: Vec<IntMatrix>) -> Result<Self> {
        let m = modules
            .first()
            .map(CyclicModule::m)
            .ok_or_else(|| Error::InvalidParameter("complex must have a module".into()))?;
        if modules.iter().any(|x| x.m != m) {
            return Err(Error::InvalidParameter("modules over different group rings".into()));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::InvalidParameter("need one differential between consecutive modules".into()));
        }
        for (j, d) in diffs.iter().enumerate() {
            if d.rows() != modules[j].rank() || d.cols() != modules[j + 1].rank() {
                return Err(Error::InvalidParameter(format!("differential {j} has the wrong shape")));
            }
            if modules[j].t.mul(d) != d.mul(&modules[j + 1].t) {
                return Err(Error::InvalidParameter(format!("differential {j} is not equivariant")));
            }
        }
        for j in 1..diffs.len() {
            if !diffs[j - 1].mul(&diffs[j]).is_zero() {
                return Err(Error::NotAComplex(j));
            }
        }
        Ok(Self { m, modules, diffs })
    }

    pub fn concentrated(module: CyclicModule) -> Self {
        Self {
            m: module.m,
            modules: vec![module],
            diffs: Vec::new(),
        }
    }

    /// `Z --l--> Z` of trivial modules, a free model of `F_l`.
    pub fn mod_ell(m: u64, ell: u64) -> Result<Self> {
        Self::new(
            vec![CyclicModule::trivial(m)?, CyclicModule::trivial(m)?],
            vec![IntMatrix::from_rows(&[vec![BigInt::from(ell)]])],
        )
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn modules(&self) -> &[CyclicModule] {
        &self.modules
    }
}

/// A complex of free abelian groups `C_0 <- C_1 <- ...`; `diffs[n]: C_{n+1} -> C_n`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl FreeComplex {
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::InvalidParameter("need one differential between consecutive groups".into()));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[n] || d.cols() != ranks[n + 1] {
                return Err(Error::InvalidParameter(format!("differential {n} has the wrong shape")));
            }
        }
        for n in 1..diffs.len() {
            if !diffs[n - 1].mul(&diffs[n]).is_zero() {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(Self { ranks, diffs })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Mapping cone of multiplication by `ell`: `C'_n = C_n + C_{n-1}`,
    /// `d(x, y) = (dx + (-1)^{n-1} ell y, dy)`.
    pub fn cone_of_multiplication(&self, ell: u64) -> Result<Self> {
        let ell = BigInt::from(ell);
        let top = self.top() + 1;
        let rank = |n: usize| if n <= self.top() { self.ranks[n] } else { 0 };
        let ranks: Vec<usize> = (0..=top).map(|n| rank(n) + if n > 0 { rank(n - 1) } else { 0 }).collect();
        let mut diffs = Vec::with_capacity(top);
        for n in 1..=top {
            // C'_n = C_n + C_{n-1} -> C'_{n-1} = C_{n-1} + C_{n-2}
            let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            let (cn, cn1) = (rank(n), rank(n - 1));
            if cn > 0 && cn1 > 0 {
                d.set_block(0, 0, &self.diffs[n - 1]);
            }
            let sign = if (n - 1) % 2 == 0 { ell.clone() } else { -ell.clone() };
            if cn1 > 0 {
                d.set_block(0, cn, &IntMatrix::identity(cn1).scale(&sign));
            }
            if n >= 2 && cn1 > 0 && rank(n - 2) > 0 {
                d.set_block(cn1, cn, &self.diffs[n - 2]);
            }
            diffs.push(d);
        }
        Self::new(ranks, diffs)
    }
}

/// `H_n` for `n <= maxdeg`; needs the complex up to degree `maxdeg + 1`.
pub fn homology(c: &FreeComplex, maxdeg: usize) -> Result<GradedAbelianGroup> {
    if c.top() < maxdeg + 1 {
        return Err(Error::InvalidParameter(format!(
            "complex known to degree {} but homology requested to {maxdeg}",
            c.top()
        )));
    }
    let snfs: Vec<_> = c.diffs.iter().map(smith_normal_form).collect();
    let degrees = (0..=maxdeg)
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { snfs[n - 1].rank() };
            let in_snf = &snfs[n];
            AbelianGroup::from_invariants(in_snf.torsion(), c.ranks[n] - out_rank - in_snf.rank())
        })
        .collect();
    Ok(GradedAbelianGroup::new(degrees))
}

/// Total complex of `P (x)_R M` up to degree `top`, where `P` is the
/// periodic resolution `... -> R --N--> R --(t-1)--> R -> Z` of the trivial module.
fn periodic_total_complex(m: &CyclicModuleComplex, top: usize) -> Result<FreeComplex> {
    let blocks = |n: usize| -> Vec<(usize, usize)> {
        (0..=n)
            .filter(|&j| j < m.modules.len())
            .map(|j| (n - j, j))
            .collect()
    };
    let offsets = |n: usize| -> Vec<((usize, usize), usize)> {
        let mut off = 0;
        blocks(n)
            .into_iter()
            .map(|b| {
                let o = off;
                off += m.modules[b.1].rank();
                (b, o)
            })
            .collect()
    };
    let rank = |n: usize| -> usize { blocks(n).iter().map(|&(_, j)| m.modules[j].rank()).sum() };
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    let mut diffs = Vec::with_capacity(top);
    for n in 1..=top {
        let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        let target = offsets(n - 1);
        let find = |b: (usize, usize)| target.iter().find(|(k, _)| *k == b).map(|(_, o)| *o);
        for ((p, j), col) in offsets(n) {
            let module = &m.modules[j];
            if p >= 1 {
                let h = if p % 2 == 1 { module.t_minus_one() } else { module.norm() };
                let row = find((p - 1, j)).expect("block present");
                d.set_block(row, col, &h);
            }
            if j >= 1 {
                let v = if p % 2 == 0 {
                    m.diffs[j - 1].clone()
                } else {
                    m.diffs[j - 1].scale(&BigInt::from(-1))
                };
                let row = find((p, j - 1)).expect("block present");
                d.set_block(row, col, &v);
            }
        }
        diffs.push(d);
    }
    FreeComplex::new(ranks, diffs)
}

/// `Tor_n^{Z[C_m]}(coeff, M)` for `n <= maxdeg`, where `coeff` is a trivial module.
pub fn tor_cyclic(
    m: u64,
    coeff: Coefficients,
    module: &CyclicModuleComplex,
    maxdeg: usize,
) -> Result<GradedAbelianGroup> {
    if m == 0 {
        return Err(Error::InvalidParameter("cyclic group order m must be >= 1".into()));
    }
    if module.m != m {
        return Err(Error::InvalidParameter(format!(
            "module is over Z[C_{}], not Z[C_{m}]",
            module.m
        )));
    }
    match coeff {
        Coefficients::Integers => homology(&periodic_total_complex(module, maxdeg + 1)?, maxdeg),
        Coefficients::Field(ell) => {
            if !cyclo::is_prime(ell) {
                return Err(Error::NotPrime(ell));
            }
            let total = periodic_total_complex(module, maxdeg + 1)?;
            homology(&total.cone_of_multiplication(ell)?, maxdeg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(m: u64) -> CyclicModuleComplex {
        CyclicModuleComplex::concentrated(CyclicModule::trivial(m).unwrap())
    }

    #[test]
    fn integral_tor_of_trivial_module() {
        let t = tor_cyclic(4, Coefficients::Integers, &trivial(4), 5).unwrap();
        assert_eq!(t.to_string(), "(Z, Z/4, 0, Z/4, 0, Z/4)");
        for m in 1..=12u64 {
            let t = tor_cyclic(m, Coefficients::Integers, &trivial(m), 5).unwrap();
            for (n, g) in t.degrees().iter().enumerate() {
                let expected = match n {
                    0 => AbelianGroup::free(1),
                    n if n % 2 == 1 => AbelianGroup::cyclic(m),
                    _ => AbelianGroup::trivial(),
                };
                assert_eq!(*g, expected, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn free_module_is_acyclic() {
        let free = CyclicModuleComplex::concentrated(CyclicModule::free(3).unwrap());
        let t = tor_cyclic(3, Coefficients::Field(2), &free, 4).unwrap();
        assert_eq!(t.summand_counts(), vec![1, 0, 0, 0, 0]);
        let t = tor_cyclic(3, Coefficients::Integers, &free, 4).unwrap();
        assert_eq!(t.to_string(), "(Z, 0, 0, 0, 0)");
    }

    #[test]
    fn mod_two_coefficients() {
        let t = tor_cyclic(2, Coefficients::Field(2), &trivial(2), 4).unwrap();
        assert_eq!(t.summand_counts(), vec![1, 1, 1, 1, 1]);
        assert!(t.degrees().iter().all(|g| g.torsion().iter().all(|x| *x == BigInt::from(2))));
        // M = F_2 itself doubles every degree above 0
        let f2 = CyclicModuleComplex::mod_ell(2, 2).unwrap();
        let t = tor_cyclic(2, Coefficients::Field(2), &f2, 4).unwrap();
        assert_eq!(t.summand_counts(), vec![1, 2, 2, 2, 2]);
        // coprime order: only degree 0 survives
        let t = tor_cyclic(3, Coefficients::Field(2), &trivial(3), 4).unwrap();
        assert_eq!(t.summand_counts(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(tor_cyclic(0, Coefficients::Integers, &trivial(1), 2).is_err());
        assert!(tor_cyclic(3, Coefficients::Integers, &trivial(2), 2).is_err());
        assert!(matches!(
            tor_cyclic(2, Coefficients::Field(4), &trivial(2), 2),
            Err(Error::NotPrime(4))
        ));
        let bad = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(CyclicModule::from_action(3, bad).is_err());
    }

    #[test]
    fn complex_checks_square_zero() {
        let c = FreeComplex::new(
            vec![1, 1, 1],
            vec![IntMatrix::from_rows(&[vec![1]]), IntMatrix::from_rows(&[vec![1]])],
        );
        assert!(matches!(c, Err(Error::NotAComplex(1))));
    }

    #[test]
    fn cone_matches_universal_coefficients() {
        // H(C) = (Z, Z/4, 0, Z/4, 0, Z/4); H_n(C) / 2 + Tor(H_{n-1}(C), F_2) has dimension 1
        let total = periodic_total_complex(&trivial(4), 5).unwrap();
        let h = homology(&total.cone_of_multiplication(2).unwrap(), 4).unwrap();
        assert_eq!(h.summand_counts(), vec![1, 1, 1, 1, 1]);
    }
}
