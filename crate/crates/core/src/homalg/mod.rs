//! Homological algebra over `Z`, cyclic group rings and small algebras over `F_l`.

mod bar;
mod circle;
mod limits;
mod matrix;
mod tor;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::Serialize;

pub use bar::{
    bar_method, bar_tor, bar_tor_unnormalized, group_algebra_is_semisimple, tor_by_resolution, FiniteAlgebra, TorMethod,
    BAR_CELL_BUDGET, BAR_MAX_DEGREE, BAR_MAX_DIM,
};
pub use circle::{
    circle_colimit, ideal_power_quotient, ideal_power_quotient_literal, CircleChain, CircleColimit,
    ColimitOptions, IdealPowerReport, StableColimit, TruncatedIdealQuotient, IDEAL_MODEL_NOTE, LITERAL_MAX_RANK,
};
pub use limits::{lim_lim1, LimReport, Tower};
pub use matrix::{column_echelon, quotient_group, smith_normal_form, ColumnEchelon, IntMatrix, PresentedGroup, Snf};
pub use tor::{
    homology, tor_cyclic, Coefficients, CyclicModule, CyclicModuleComplex, FreeComplex,
};

/// A finitely generated abelian group by invariant factors `d_1 | d_2 | ...`,
/// with free summands recorded as trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self::from_invariants(Vec::new(), rank)
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[BigInt::from(n)])
    }

    /// From a divisibility chain of torsion invariants (units are dropped).
    pub fn from_invariants(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        let mut factors: Vec<BigInt> = torsion.into_iter().filter(|x| !x.is_one()).collect();
        debug_assert!(factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        factors.extend(std::iter::repeat_n(BigInt::zero(), free_rank));
        Self { factors }
    }

    /// Direct sum of cyclic groups of the given orders (`0` meaning `Z`).
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let free = orders.iter().filter(|x| x.is_zero()).count();
        let torsion: Vec<BigInt> = orders.iter().filter(|x| !x.is_zero()).cloned().collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&torsion));
        Self::from_invariants(snf.torsion(), free)
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|x| x.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|x| !x.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of cyclic summands; the `F_l`-dimension of an elementary group.
    pub fn num_summands(&self) -> usize {
        self.factors.len()
    }

    /// Cardinality, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank() == 0).then(|| self.factors.iter().product())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all = self.factors.clone();
        all.extend(other.factors.iter().cloned());
        Self::from_orders(&all)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion().iter().map(|d| format!("Z/{d}")).collect();
        match self.rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn factor_json(x: &BigInt) -> serde_json::Value {
    match x.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self.factors.iter().map(factor_json).collect();
        v.serialize(s)
    }
}

/// Abelian groups indexed by degree `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedAbelianGroup {
    degrees: Vec<AbelianGroup>,
}

impl GradedAbelianGroup {
    pub fn new(degrees: Vec<AbelianGroup>) -> Self {
        Self { degrees }
    }

    pub fn degrees(&self) -> &[AbelianGroup] {
        &self.degrees
    }

    pub fn get(&self, n: usize) -> Option<&AbelianGroup> {
        self.degrees.get(n)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Number of cyclic summands per degree.
    pub fn summand_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(AbelianGroup::num_summands).collect()
    }

    /// CSV with columns `degree,invariant_factors,group`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,invariant_factors,group\n");
        for (n, g) in self.degrees.iter().enumerate() {
            let factors: Vec<String> = g.factors().iter().map(BigInt::to_string).collect();
            out.push_str(&format!("{n},\"{}\",{g}\n", factors.join(" ")));
        }
        out
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for GradedAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.degrees.len()))?;
        for (n, g) in self.degrees.iter().enumerate() {
            map.serialize_entry(&n.to_string(), g)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_normalization() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::cyclic(0).to_string(), "Z");
        assert_eq!(AbelianGroup::cyclic(1).to_string(), "0");
        assert_eq!(AbelianGroup::cyclic(4).to_string(), "Z/4");
        let g = AbelianGroup::from_orders(&[BigInt::from(4), BigInt::from(6), BigInt::zero(), BigInt::zero()]);
        assert_eq!(g.to_string(), "Z/2 + Z/12 + Z^2");
        assert_eq!(g.rank(), 2);
        assert_eq!(g.order(), None);
        assert_eq!(AbelianGroup::cyclic(3).direct_sum(&AbelianGroup::cyclic(5)), AbelianGroup::cyclic(15));
    }

    #[test]
    fn graded_serialization_and_csv() {
        let g = GradedAbelianGroup::new(vec![AbelianGroup::free(1), AbelianGroup::cyclic(4), AbelianGroup::trivial()]);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"0":[0],"1":[4],"2":[]}"#);
        assert_eq!(g.to_csv(), "degree,invariant_factors,group\n0,\"0\",Z\n1,\"4\",Z/4\n2,\"\",0\n");
        assert_eq!(g.to_string(), "(Z, Z/4, 0)");
    }
}
