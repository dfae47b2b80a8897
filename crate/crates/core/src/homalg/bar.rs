use std::collections::BTreeMap;

use crate::cyclo::{self, mod_inverse};
use crate::error::{Error, Result};

/// Largest algebra dimension accepted by [`bar_tor`].
pub const BAR_MAX_DIM: usize = 6;
/// Largest Tor degree accepted by [`bar_tor`].
pub const BAR_MAX_DEGREE: usize = 6;
/// Cell budget of the unnormalized complex, `dim^(maxdeg + 1)`.
const UNNORMALIZED_BUDGET: usize = 50_000;
/// Largest top stage of the normalized bar complex eliminated directly.
pub const BAR_CELL_BUDGET: usize = 4096;

/// How [`bar_tor`] obtains its dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorMethod {
    BarComplex,
    FreeResolution,
}

/// Sparse products `(k, c)` of augmentation-ideal basis elements, indexed by `[i][j]`.
type IdealTable = Vec<Vec<Vec<(usize, u64)>>>;

/// An augmented associative algebra over `F_l` with a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    ell: u64,
    dim: usize,
    /// `mult[i][j]` = coordinates of `e_i e_j`.
    mult: Vec<Vec<Vec<u64>>>,
    unit: Vec<u64>,
    augmentation: Vec<u64>,
}

impl FiniteAlgebra {
    /// Validates the unit, associativity and multiplicativity of the augmentation.
    pub fn new(ell: u64, mult: Vec<Vec<Vec<u64>>>, unit: Vec<u64>, augmentation: Vec<u64>) -> Result<Self> {
        if !cyclo::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let dim = unit.len();
        if dim == 0
            || augmentation.len() != dim
            || mult.len() != dim
            || mult.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::InvalidParameter("structure constants have inconsistent shapes".into()));
        }
        let red = |v: &Vec<u64>| v.iter().map(|x| x % ell).collect::<Vec<_>>();
        let alg = Self {
            ell,
            dim,
            mult: mult.iter().map(|row| row.iter().map(red).collect()).collect(),
            unit: red(&unit),
            augmentation: red(&augmentation),
        };
        for i in 0..dim {
            let e = alg.basis(i);
            if alg.mul(&alg.unit, &e) != e || alg.mul(&e, &alg.unit) != e {
                return Err(Error::InvalidParameter("unit law fails".into()));
            }
            for j in 0..dim {
                let f = alg.basis(j);
                let ef = alg.mul(&e, &f);
                if alg.eps(&ef) != alg.eps(&e) * alg.eps(&f) % ell {
                    return Err(Error::InvalidParameter("augmentation is not multiplicative".into()));
                }
                for k in 0..dim {
                    let g = alg.basis(k);
                    if alg.mul(&ef, &g) != alg.mul(&e, &alg.mul(&f, &g)) {
                        return Err(Error::InvalidParameter("multiplication is not associative".into()));
                    }
                }
            }
        }
        if alg.eps(&alg.unit) != 1 {
            return Err(Error::InvalidParameter("augmentation must send 1 to 1".into()));
        }
        Ok(alg)
    }

    /// `F_l[C_m]` with basis `t^0, ..., t^{m-1}` and `t -> 1`.
    pub fn group_algebra(ell: u64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("cyclic group order m must be >= 1".into()));
        }
        let mult = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut v = vec![0; m];
                        v[(i + j) % m] = 1;
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![0; m];
        unit[0] = 1;
        Self::new(ell, mult, unit, vec![1; m])
    }

    /// `F_l` itself.
    pub fn base_field(ell: u64) -> Result<Self> {
        Self::new(ell, vec![vec![vec![1]]], vec![1], vec![1])
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn basis(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                let ab = a * b % self.ell;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    out[k] = (out[k] + ab * c) % self.ell;
                }
            }
        }
        out
    }

    fn eps(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.augmentation).map(|(a, b)| a * b).sum::<u64>() % self.ell
    }

    /// Basis `e_i - (eps_i / eps_u) e_u` (`i != u`) of the augmentation ideal,
    /// and the products of these basis elements in the same coordinates.
    fn augmentation_ideal(&self) -> (usize, IdealTable) {
        let ell = self.ell;
        let u = self.augmentation.iter().position(|&x| x != 0).expect("eps(1) = 1");
        let inv = mod_inverse(self.augmentation[u], ell).expect("prime field");
        let others: Vec<usize> = (0..self.dim).filter(|&i| i != u).collect();
        let vec_of = |i: usize| {
            let mut v = self.basis(i);
            v[u] = (v[u] + ell - self.augmentation[i] * inv % ell) % ell;
            v
        };
        let table = others
            .iter()
            .map(|&i| {
                others
                    .iter()
                    .map(|&j| {
                        let p = self.mul(&vec_of(i), &vec_of(j));
                        others
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| p[k] != 0)
                            .map(|(idx, &k)| (idx, p[k]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        (others.len(), table)
    }
}

/// Rank over `F_ell` of the span of sparse columns.
fn rank_mod(columns: impl Iterator<Item = BTreeMap<usize, u64>>, ell: u64) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for mut v in columns {
        while let Some((&r, &c)) = v.iter().next() {
            match pivots.get(&r) {
                Some(p) => {
                    let factor = c * mod_inverse(p[&r], ell).expect("nonzero pivot") % ell;
                    for (&i, &x) in p {
                        let e = v.entry(i).or_insert(0);
                        *e = (*e + ell - factor * x % ell) % ell;
                        if *e == 0 {
                            v.remove(&i);
                        }
                    }
                }
                None => {
                    pivots.insert(r, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn decode(mut code: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = code % base;
        code /= base;
    }
    out
}

fn encode(word: &[usize], base: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * base + x)
}

fn check_guard(alg: &FiniteAlgebra, maxdeg: usize) -> Result<()> {
    if alg.dim > BAR_MAX_DIM || maxdeg > BAR_MAX_DEGREE {
        return Err(Error::ResourceGuard(format!(
            "bar complex limited to dim <= {BAR_MAX_DIM} and degree <= {BAR_MAX_DEGREE} (got dim {}, degree {maxdeg})",
            alg.dim
        )));
    }
    Ok(())
}

fn add_to(col: &mut BTreeMap<usize, u64>, k: usize, c: u64, ell: u64) {
    let e = col.entry(k).or_insert(0);
    *e = (*e + c) % ell;
    if *e == 0 {
        col.remove(&k);
    }
}

/// The route [`bar_tor`] takes: the normalized bar complex while its top
/// stage `(dim - 1)^(maxdeg + 1)` fits in [`BAR_CELL_BUDGET`], otherwise a
/// free resolution.
pub fn bar_method(alg: &FiniteAlgebra, maxdeg: usize) -> TorMethod {
    let top = (alg.dim - 1).checked_pow(maxdeg as u32 + 1);
    if top.is_some_and(|c| c <= BAR_CELL_BUDGET) {
        TorMethod::BarComplex
    } else {
        TorMethod::FreeResolution
    }
}

/// `dim_{F_l} Tor_n^A(F_l, F_l)` for `n <= maxdeg`, from the normalized bar
/// complex `B_p = (ker eps)^{(x) p}` with
/// `d[a_1|...|a_p] = sum_{i<p} (-1)^i [a_1|...|a_i a_{i+1}|...|a_p]`.
///
/// Above the cell budget the same groups are read off [`tor_by_resolution`].
pub fn bar_tor(alg: &FiniteAlgebra, maxdeg: usize) -> Result<Vec<usize>> {
    check_guard(alg, maxdeg)?;
    match bar_method(alg, maxdeg) {
        TorMethod::BarComplex => normalized_bar_tor(alg, maxdeg),
        TorMethod::FreeResolution => tor_by_resolution(alg, maxdeg),
    }
}

fn normalized_bar_tor(alg: &FiniteAlgebra, maxdeg: usize) -> Result<Vec<usize>> {
    let ell = alg.ell;
    let (n, table) = alg.augmentation_ideal();
    let dims: Vec<usize> = (0..=maxdeg + 1).map(|p| n.pow(p as u32)).collect();
    // rank of d_p : B_p -> B_{p-1}; d_0 = d_1 = 0
    let rank = |p: usize| -> usize {
        if p < 2 || n == 0 {
            return 0;
        }
        let cols = (0..dims[p]).map(|code| {
            let w = decode(code, n, p);
            let mut col = BTreeMap::new();
            for i in 0..p - 1 {
                let sign = if (i + 1) % 2 == 0 { 1 } else { ell - 1 };
                for &(k, c) in &table[w[i]][w[i + 1]] {
                    let mut target: Vec<usize> = Vec::with_capacity(p - 1);
                    target.extend_from_slice(&w[..i]);
                    target.push(k);
                    target.extend_from_slice(&w[i + 2..]);
                    add_to(&mut col, encode(&target, n), c * sign % ell, ell);
                }
            }
            col
        });
        rank_mod(cols, ell)
    };
    let ranks: Vec<usize> = (0..=maxdeg + 1).map(rank).collect();
    Ok((0..=maxdeg).map(|p| dims[p] - ranks[p] - ranks[p + 1]).collect())
}

/// The same dimensions from the unnormalized bar complex `B_p = A^{(x) p}` with
/// `d[a_1|...|a_p] = eps(a_1)[a_2|...] + sum (-1)^i [...|a_i a_{i+1}|...] + (-1)^p eps(a_p)[...|a_{p-1}]`.
pub fn bar_tor_unnormalized(alg: &FiniteAlgebra, maxdeg: usize) -> Result<Vec<usize>> {
    check_guard(alg, maxdeg)?;
    let n = alg.dim;
    if n.checked_pow(maxdeg as u32 + 1).is_none_or(|c| c > UNNORMALIZED_BUDGET) {
        return Err(Error::ResourceGuard(format!(
            "unnormalized bar complex of dimension {n}^{} exceeds {UNNORMALIZED_BUDGET}",
            maxdeg + 1
        )));
    }
    let ell = alg.ell;
    let dims: Vec<usize> = (0..=maxdeg + 1).map(|p| n.pow(p as u32)).collect();
    let rank = |p: usize| -> usize {
        if p == 0 {
            return 0;
        }
        let cols = (0..dims[p]).map(|code| {
            let w = decode(code, n, p);
            let mut col = BTreeMap::new();
            add_to(&mut col, encode(&w[1..], n), alg.augmentation[w[0]], ell);
            for i in 0..p - 1 {
                let sign = if (i + 1) % 2 == 0 { 1 } else { ell - 1 };
                for (k, &c) in alg.mult[w[i]][w[i + 1]].iter().enumerate().filter(|(_, c)| **c != 0) {
                    let mut target: Vec<usize> = Vec::with_capacity(p - 1);
                    target.extend_from_slice(&w[..i]);
                    target.push(k);
                    target.extend_from_slice(&w[i + 2..]);
                    add_to(&mut col, encode(&target, n), c * sign % ell, ell);
                }
            }
            let sign = if p % 2 == 0 { 1 } else { ell - 1 };
            add_to(&mut col, encode(&w[..p - 1], n), alg.augmentation[w[p - 1]] * sign % ell, ell);
            col
        });
        rank_mod(cols, ell)
    };
    let ranks: Vec<usize> = (0..=maxdeg + 1).map(rank).collect();
    Ok((0..=maxdeg).map(|p| dims[p] - ranks[p] - ranks[p + 1]).collect())
}

/// Echelon basis of a subspace of `F_l^N`, optionally tracking how each row
/// was combined from the inserted vectors.
struct Echelon {
    ell: u64,
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

impl Echelon {
    fn new(ell: u64) -> Self {
        Self { ell, rows: Vec::new() }
    }

    /// Reduces `v` (with history `h`); stores it if independent and returns
    /// the history of the zero combination otherwise.
    fn insert(&mut self, mut v: Vec<u64>, mut h: Vec<u64>) -> Option<Vec<u64>> {
        let ell = self.ell;
        for (pivot, row, hist) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = (*x + ell - c * y % ell) % ell;
            }
            for (x, y) in h.iter_mut().zip(hist) {
                *x = (*x + ell - c * y % ell) % ell;
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => Some(h),
            Some(pivot) => {
                let inv = mod_inverse(v[pivot], ell).expect("prime field");
                v.iter_mut().for_each(|x| *x = *x * inv % ell);
                h.iter_mut().for_each(|x| *x = *x * inv % ell);
                // keep rows fully reduced so later insertions see clean pivots
                for (_, row, hist) in &mut self.rows {
                    let c = row[pivot];
                    if c != 0 {
                        for (x, y) in row.iter_mut().zip(&v) {
                            *x = (*x + ell - c * y % ell) % ell;
                        }
                        for (x, y) in hist.iter_mut().zip(&h) {
                            *x = (*x + ell - c * y % ell) % ell;
                        }
                    }
                }
                self.rows.push((pivot, v, h));
                None
            }
        }
    }

    fn contains(&self, v: &[u64]) -> bool {
        let ell = self.ell;
        let mut v = v.to_vec();
        for (pivot, row, _) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + ell - c * y % ell) % ell;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

impl FiniteAlgebra {
    /// `e_i . v` for `v` in `A^g`, acting blockwise from the left.
    fn act(&self, i: usize, v: &[u64]) -> Vec<u64> {
        let e = self.basis(i);
        v.chunks(self.dim).flat_map(|block| self.mul(&e, block)).collect()
    }
}

/// `dim_{F_l} Tor_n^A(F_l, F_l)` for `n <= maxdeg` from a free resolution
/// `... -> A^{h_1} -> A -> F_l` built by choosing generators of each kernel
/// greedily. The dimensions are `h_p - rank(1 (x) d_p) - rank(1 (x) d_{p+1})`.
pub fn tor_by_resolution(alg: &FiniteAlgebra, maxdeg: usize) -> Result<Vec<usize>> {
    check_guard(alg, maxdeg)?;
    let (ell, n) = (alg.ell, alg.dim);
    let u = alg.augmentation.iter().position(|&x| x != 0).expect("eps(1) = 1");
    let inv = mod_inverse(alg.augmentation[u], ell).expect("prime field");
    let mut kernel: Vec<Vec<u64>> = (0..n)
        .filter(|&i| i != u)
        .map(|i| {
            let mut v = alg.basis(i);
            v[u] = (v[u] + ell - alg.augmentation[i] * inv % ell) % ell;
            v
        })
        .collect();
    let mut ranks_p = vec![1usize];
    let mut eps_ranks = vec![0usize];
    for _ in 1..=maxdeg + 1 {
        let mut span = Echelon::new(ell);
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for v in &kernel {
            if !span.contains(v) {
                for i in 0..n {
                    span.insert(alg.act(i, v), Vec::new());
                }
                gens.push(v.clone());
            }
        }
        let h = gens.len();
        let mut eps_span = Echelon::new(ell);
        for g in &gens {
            let image: Vec<u64> = g.chunks(n).map(|block| alg.eps(block)).collect();
            eps_span.insert(image, Vec::new());
        }
        eps_ranks.push(eps_span.rank());
        ranks_p.push(h);
        if h > 4096 {
            return Err(Error::ResourceGuard(format!("free resolution rank {h} exceeds 4096")));
        }
        // kernel of A^h -> A^{h_prev}, basis vector (j, i) -> e_i . gens[j]
        let mut ech = Echelon::new(ell);
        let mut next = Vec::new();
        for (j, g) in gens.iter().enumerate() {
            for i in 0..n {
                let mut hist = vec![0; n * h];
                hist[j * n + i] = 1;
                if let Some(k) = ech.insert(alg.act(i, g), hist) {
                    next.push(k);
                }
            }
        }
        kernel = next;
    }
    Ok((0..=maxdeg)
        .map(|p| ranks_p[p] - eps_ranks[p] - eps_ranks[p + 1])
        .collect())
}

/// Whether `t^m - 1` is squarefree over `F_ell`, i.e. `F_ell[C_m]` is semisimple.
pub fn group_algebra_is_semisimple(m: u64, ell: u64) -> bool {
    // derivative m t^{m-1} shares a root with t^m - 1 exactly when ell | m
    let f: Vec<u64> = {
        let mut v = vec![0; m as usize + 1];
        v[0] = ell - 1;
        v[m as usize] = 1;
        v
    };
    let df: Vec<u64> = (1..f.len()).map(|i| f[i] * (i as u64 % ell) % ell).collect();
    poly_gcd_degree(f, df, ell) == 0
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_gcd_degree(a: Vec<u64>, b: Vec<u64>, ell: u64) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let inv = mod_inverse(*b.last().expect("nonempty"), ell).expect("prime field");
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = a.last().copied().unwrap_or(0) * inv % ell;
            for (i, &c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + ell - factor * c % ell) % ell;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_examples() {
        let a = FiniteAlgebra::group_algebra(2, 3).unwrap();
        assert_eq!(bar_tor(&a, 4).unwrap(), vec![1, 0, 0, 0, 0]);
        let a = FiniteAlgebra::group_algebra(2, 2).unwrap();
        assert_eq!(bar_tor(&a, 4).unwrap(), vec![1, 1, 1, 1, 1]);
        let a = FiniteAlgebra::base_field(5).unwrap();
        assert_eq!(bar_tor(&a, 3).unwrap(), vec![1, 0, 0, 0]);
        let a = FiniteAlgebra::group_algebra(3, 4).unwrap();
        assert_eq!(bar_tor(&a, 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn semisimple_group_algebras_have_no_higher_tor() {
        for (ell, m) in [(2u64, 3usize), (2, 5), (3, 2), (3, 4)] {
            let a = FiniteAlgebra::group_algebra(ell, m).unwrap();
            assert!(group_algebra_is_semisimple(m as u64, ell));
            let dims = bar_tor(&a, 3).unwrap();
            assert_eq!(dims[0], 1);
            assert!(dims[1..].iter().all(|&d| d == 0), "ell={ell} m={m}: {dims:?}");
        }
        assert!(!group_algebra_is_semisimple(4, 2));
        assert!(!group_algebra_is_semisimple(6, 3));
    }

    #[test]
    fn modular_group_algebras_are_periodic() {
        for (ell, m) in [(2u64, 4usize), (3, 3), (2, 6)] {
            let a = FiniteAlgebra::group_algebra(ell, m).unwrap();
            assert_eq!(bar_tor(&a, 4).unwrap(), vec![1, 1, 1, 1, 1], "ell={ell} m={m}");
        }
    }

    #[test]
    fn normalized_matches_unnormalized() {
        for (ell, m) in [(2u64, 2usize), (2, 3), (3, 3), (2, 4), (3, 2)] {
            let a = FiniteAlgebra::group_algebra(ell, m).unwrap();
            assert_eq!(bar_tor(&a, 3).unwrap(), bar_tor_unnormalized(&a, 3).unwrap(), "ell={ell} m={m}");
        }
    }

    #[test]
    fn resolution_matches_bar_complex() {
        for m in 1..=6usize {
            for ell in [2u64, 3, 5] {
                let a = FiniteAlgebra::group_algebra(ell, m).unwrap();
                let deg = if m <= 4 { 4 } else { 3 };
                assert_eq!(
                    tor_by_resolution(&a, deg).unwrap(),
                    normalized_bar_tor(&a, deg).unwrap(),
                    "ell={ell} m={m}"
                );
            }
        }
        // F_2[x]/(x^3): Tor is F_2 in every degree
        let mult = (0..3)
            .map(|i| (0..3).map(|j| (0..3).map(|k| u64::from(i + j == k)).collect()).collect())
            .collect();
        let a = FiniteAlgebra::new(2, mult, vec![1, 0, 0], vec![1, 0, 0]).unwrap();
        assert_eq!(tor_by_resolution(&a, 4).unwrap(), normalized_bar_tor(&a, 4).unwrap());
        assert_eq!(tor_by_resolution(&a, 4).unwrap(), vec![1; 5]);
    }

    #[test]
    fn largest_desk_case_uses_resolution() {
        let a = FiniteAlgebra::group_algebra(2, 6).unwrap();
        assert_eq!(bar_method(&a, 6), TorMethod::FreeResolution);
        assert_eq!(bar_tor(&a, 6).unwrap(), vec![1; 7]);
        let a = FiniteAlgebra::group_algebra(5, 6).unwrap();
        assert_eq!(bar_tor(&a, 6).unwrap(), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(bar_method(&FiniteAlgebra::group_algebra(2, 3).unwrap(), 4), TorMethod::BarComplex);
    }

    #[test]
    fn guards_and_validation() {
        let a = FiniteAlgebra::group_algebra(2, 7).unwrap();
        assert!(matches!(bar_tor(&a, 2), Err(Error::ResourceGuard(_))));
        let a = FiniteAlgebra::group_algebra(2, 2).unwrap();
        assert!(matches!(bar_tor(&a, 7), Err(Error::ResourceGuard(_))));
        assert!(matches!(FiniteAlgebra::group_algebra(6, 2), Err(Error::NotPrime(6))));
        // non-associative constants are rejected
        let mult = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 1]],
        ];
        assert!(FiniteAlgebra::new(2, mult, vec![1, 0], vec![1, 0]).is_err());
    }
}
