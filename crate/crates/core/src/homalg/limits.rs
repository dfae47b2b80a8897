use num_bigint::BigInt;
use serde::Serialize;

use super::matrix::{IntMatrix, PresentedGroup};
use super::AbelianGroup;
use crate::error::{Error, Result};

/// A finite window `G_0 <- G_1 <- ... <- G_{n-1}` of a tower;
/// `maps[i]: G_{i+1} -> G_i`.
#[derive(Clone, Debug)]
pub struct Tower {
    groups: Vec<PresentedGroup>,
    maps: Vec<IntMatrix>,
}

impl Tower {
    pub fn new(groups: Vec<PresentedGroup>, maps: Vec<IntMatrix>) -> Result<Self> {
        if groups.len() < 2 {
            return Err(Error::InvalidParameter("tower window needs at least two groups".into()));
        }
        if maps.len() + 1 != groups.len() {
            return Err(Error::InvalidParameter("need one transition between consecutive groups".into()));
        }
        for (i, f) in maps.iter().enumerate() {
            let (src, dst) = (&groups[i + 1], &groups[i]);
            if f.rows() != dst.gens() || f.cols() != src.gens() || !src.is_hom(f, dst) {
                return Err(Error::InvalidParameter(format!("transition {} -> {i} is not a homomorphism", i + 1)));
            }
        }
        Ok(Self { groups, maps })
    }

    /// `Z/p <- Z/p^2 <- ... <- Z/p^s`, each map sending `1 -> 1`.
    pub fn reductions(p: u64, s: u32) -> Result<Self> {
        let groups = (1..=s).map(|i| PresentedGroup::cyclic(p.pow(i))).collect();
        let maps = (1..s).map(|_| IntMatrix::identity(1)).collect();
        Self::new(groups, maps)
    }

    /// `G <- G <- ...` with identity maps.
    pub fn constant(group: PresentedGroup, len: usize) -> Result<Self> {
        let n = group.gens();
        Self::new(vec![group; len], vec![IntMatrix::identity(n); len.saturating_sub(1)])
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn groups(&self) -> &[PresentedGroup] {
        &self.groups
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimReport {
    pub window: usize,
    pub lim: AbelianGroup,
    pub lim1: AbelianGroup,
    pub mittag_leffler: bool,
    pub note: String,
}

/// Kernel and cokernel of `(g_i) -> (g_i - f_i(g_{i+1}))` from `prod_{i<n} G_i`
/// to `prod_{i<n-1} G_i`.
pub fn lim_lim1(tower: &Tower) -> Result<LimReport> {
    let n = tower.len();
    let total = tower
        .groups
        .iter()
        .skip(1)
        .fold(tower.groups[0].clone(), |acc, g| acc.direct_sum(g));
    let target = tower.groups[..n - 1]
        .iter()
        .skip(1)
        .fold(tower.groups[0].clone(), |acc, g| acc.direct_sum(g));
    let offsets: Vec<usize> = tower
        .groups
        .iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.gens();
            Some(o)
        })
        .collect();
    let mut delta = IntMatrix::zeros(target.gens(), total.gens());
    for i in 0..n - 1 {
        let gi = tower.groups[i].gens();
        delta.set_block(offsets[i], offsets[i], &IntMatrix::identity(gi));
        delta.set_block(offsets[i], offsets[i + 1], &tower.maps[i].scale(&BigInt::from(-1)));
    }
    let lim = total.kernel(&delta, &target);
    let lim1 = total.cokernel(&delta, &target);
    let mittag_leffler = (0..n - 1).all(|i| tower.groups[i + 1].is_surjective(&tower.maps[i], &tower.groups[i]));
    let note = if mittag_leffler {
        "all transitions in the window are surjective (Mittag-Leffler)".to_string()
    } else {
        "transitions not all surjective; a finite window always has vanishing lim^1, so lim^1 of the full tower is not determined here".to_string()
    };
    Ok(LimReport {
        window: n,
        lim,
        lim1,
        mittag_leffler,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_tower() {
        let r = lim_lim1(&Tower::reductions(2, 3).unwrap()).unwrap();
        assert_eq!(r.lim, AbelianGroup::cyclic(8));
        assert!(r.lim1.is_trivial());
        assert!(r.mittag_leffler);
    }

    #[test]
    fn constant_tower() {
        let g = PresentedGroup::cyclic(6).direct_sum(&PresentedGroup::free(1));
        let r = lim_lim1(&Tower::constant(g.clone(), 4).unwrap()).unwrap();
        assert_eq!(r.lim, g.structure());
        assert!(r.lim1.is_trivial());
        assert!(r.mittag_leffler);
    }

    #[test]
    fn doubling_tower() {
        let z = PresentedGroup::free(1);
        let two = IntMatrix::from_rows(&[vec![2]]);
        let t = Tower::new(vec![z.clone(), z.clone(), z], vec![two.clone(), two]).unwrap();
        let r = lim_lim1(&t).unwrap();
        assert_eq!(r.lim, AbelianGroup::free(1));
        assert!(r.lim1.is_trivial());
        assert!(!r.mittag_leffler);
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let bad = Tower::new(
            vec![PresentedGroup::cyclic(3), PresentedGroup::cyclic(2)],
            vec![IntMatrix::identity(1)],
        );
        assert!(bad.is_err());
        assert!(Tower::new(vec![PresentedGroup::cyclic(2)], vec![]).is_err());
    }
}
