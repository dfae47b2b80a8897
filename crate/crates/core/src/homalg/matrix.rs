use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AbelianGroup;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect(),
        }
    }

    /// Matrix with the given vectors as columns, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mod_floor(m)).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += k * row[src]`.
    fn add_row(&mut self, target: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[target * self.cols + j] += v;
        }
    }

    /// `col[target] += k * col[src]`.
    fn add_col(&mut self, target: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = v;
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `U * A * V = D` with `D` diagonal and `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Elementary divisors other than 1 and 0.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[(i, j)].is_zero())
                .min_by(|&x, &y| d[x].abs().cmp(&d[y].abs()));
            let Some((pi, pj)) = pivot else {
                return Snf { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = -d[(i, t)].div_floor(&d[(t, t)]);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = -d[(t, j)].div_floor(&d[(t, t)]);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let p = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { d, u, v }
}

/// Column echelon form `A * U = E` with `U` unimodular. The first `rank`
/// columns of `E` have strictly increasing pivot rows (first nonzero entry,
/// positive); the remaining columns are zero.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub e: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the column span of `A`.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|j| self.e.column(j)).collect()
    }

    /// Basis of the integer kernel of `A`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.u.cols).map(|j| self.u.column(j)).collect()
    }

    /// Integer coordinates of `v` in [`basis`](Self::basis), if `v` lies in the span.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let (q, r) = rest[p].div_rem(&self.e[(p, j)]);
            if !r.is_zero() {
                return None;
            }
            for (i, x) in rest.iter_mut().enumerate() {
                *x -= &q * &self.e[(i, j)];
            }
            out.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(out)
    }
}

pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let mut e = a.clone();
    let mut u = IntMatrix::identity(a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for i in 0..a.rows {
        if r == a.cols {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..a.cols).filter(|&j| !e[(i, j)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let j0 = *nonzero
                .iter()
                .min_by(|&&x, &&y| e[(i, x)].abs().cmp(&e[(i, y)].abs()))
                .expect("nonempty");
            e.swap_cols(r, j0);
            u.swap_cols(r, j0);
            let mut done = true;
            for j in r + 1..a.cols {
                if !e[(i, j)].is_zero() {
                    let q = -e[(i, j)].div_floor(&e[(i, r)]);
                    e.add_col(j, r, &q);
                    u.add_col(j, r, &q);
                    done &= e[(i, j)].is_zero();
                }
            }
            if done {
                if e[(i, r)].is_negative() {
                    e.negate_col(r);
                    u.negate_col(r);
                }
                pivots.push(i);
                r += 1;
                break;
            }
        }
    }
    ColumnEchelon { e, u, pivots }
}

/// `span(ambient) / span(sub)` for `span(sub) <= span(ambient)`, both given
/// by generating columns of equal height. Panics if `sub` is not contained.
pub fn quotient_group(ambient: &IntMatrix, sub: &IntMatrix) -> AbelianGroup {
    assert_eq!(ambient.rows, sub.rows, "height mismatch");
    let ech = column_echelon(ambient);
    let coords: Vec<Vec<BigInt>> = sub
        .columns()
        .iter()
        .map(|c| ech.coords(c).expect("sublattice must lie in the ambient lattice"))
        .collect();
    let r = ech.rank();
    if r == 0 {
        return AbelianGroup::trivial();
    }
    let c = IntMatrix::from_columns(r, &coords);
    let snf = smith_normal_form(&c);
    AbelianGroup::from_invariants(snf.torsion(), r - snf.rank())
}

/// A finitely generated abelian group `Z^n / span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    gens: usize,
    relations: IntMatrix,
}

impl PresentedGroup {
    pub fn new(gens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows, gens, "relation height must equal generator count");
        Self { gens, relations }
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0))
    }

    /// `Z/m`, with `m = 0` giving `Z`.
    pub fn cyclic(m: u64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[vec![BigInt::from(m)]]))
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn structure(&self) -> AbelianGroup {
        quotient_group(&IntMatrix::identity(self.gens), &self.relations)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.gens + other.gens, self.relations.block_diag(&other.relations))
    }

    /// Whether `f: Z^gens -> Z^target.gens` sends relations into relations.
    pub fn is_hom(&self, f: &IntMatrix, target: &Self) -> bool {
        let ech = column_echelon(&target.relations);
        f.mul(&self.relations)
            .columns()
            .iter()
            .all(|c| ech.coords(c).is_some())
    }

    pub fn image(&self, f: &IntMatrix, target: &Self) -> AbelianGroup {
        quotient_group(&f.hcat(&target.relations), &target.relations)
    }

    pub fn cokernel(&self, f: &IntMatrix, target: &Self) -> AbelianGroup {
        quotient_group(&IntMatrix::identity(target.gens), &f.hcat(&target.relations))
    }

    pub fn kernel(&self, f: &IntMatrix, target: &Self) -> AbelianGroup {
        // preimage of span(R_T): first coordinates of ker [f | -R_T]
        let joint = f.hcat(&target.relations.scale(&BigInt::from(-1)));
        let ker = column_echelon(&joint).kernel();
        let pre: Vec<Vec<BigInt>> = ker.iter().map(|v| v[..self.gens].to_vec()).collect();
        let pre = IntMatrix::from_columns(self.gens, &pre).hcat(&self.relations);
        quotient_group(&pre, &self.relations)
    }

    pub fn is_surjective(&self, f: &IntMatrix, target: &Self) -> bool {
        self.cokernel(f, target).is_trivial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check_snf(a: &IntMatrix) -> Snf {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d);
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        let diag = snf.diagonal();
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        snf
    }

    #[test]
    fn snf_examples() {
        let snf = check_snf(&m(&[vec![3, 0], vec![0, 5]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(15)]);
        let snf = check_snf(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        let snf = check_snf(&IntMatrix::identity(3));
        assert_eq!(snf.diagonal(), vec![BigInt::one(); 3]);
        check_snf(&IntMatrix::zeros(2, 3));
        check_snf(&IntMatrix::zeros(0, 2));
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[vec![2, 4], vec![6, 8]]).det(), BigInt::from(-8));
        assert_eq!(m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).det(), BigInt::from(-1));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn echelon_kernel_and_coords() {
        let a = m(&[vec![2, 4, 6], vec![1, 3, 5]]);
        let ech = column_echelon(&a);
        assert_eq!(a.mul(&ech.u), ech.e);
        assert!(ech.u.det().abs().is_one());
        assert_eq!(ech.rank(), 2);
        for k in ech.kernel() {
            assert!(a.apply(&k).iter().all(Zero::is_zero));
        }
        let v = a.apply(&[BigInt::from(1), BigInt::from(-2), BigInt::from(7)]);
        assert!(ech.coords(&v).is_some());
        assert!(ech.coords(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn presented_group_maps() {
        let z2 = PresentedGroup::cyclic(2);
        let z4 = PresentedGroup::cyclic(4);
        let reduce = m(&[vec![1]]);
        assert!(z4.is_hom(&reduce, &z2));
        assert!(z4.is_surjective(&reduce, &z2));
        assert_eq!(z4.kernel(&reduce, &z2), AbelianGroup::cyclic(2));
        let double = m(&[vec![2]]);
        assert!(z2.is_hom(&double, &z4));
        assert_eq!(z2.image(&double, &z4), AbelianGroup::cyclic(2));
        assert_eq!(z2.cokernel(&double, &z4), AbelianGroup::cyclic(2));
        assert!(z2.kernel(&double, &z4).is_trivial());
        assert!(!z4.is_hom(&reduce, &PresentedGroup::cyclic(3)));
        let zz = PresentedGroup::free(1);
        assert_eq!(zz.kernel(&double, &PresentedGroup::free(1)), AbelianGroup::trivial());
        assert_eq!(zz.cokernel(&double, &PresentedGroup::free(1)), AbelianGroup::cyclic(2));
    }

    proptest! {
        #[test]
        fn snf_random(rows in 1usize..=6, cols in 1usize..=6, seed in proptest::collection::vec(-20i64..=20, 36)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 6..i * 6 + cols].to_vec()).collect();
            check_snf(&m(&data));
        }

        #[test]
        fn quotient_order_matches_det(seed in proptest::collection::vec(-9i64..=9, 9)) {
            let a = m(&[seed[0..3].to_vec(), seed[3..6].to_vec(), seed[6..9].to_vec()]);
            let d = a.det();
            prop_assume!(!d.is_zero());
            let g = quotient_group(&IntMatrix::identity(3), &a);
            prop_assert_eq!(g.order(), Some(d.abs()));
        }
    }
}
