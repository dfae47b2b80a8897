//! Irreducible representations of the integral Heisenberg group
//! `H = <x, y, z | [x,z] = [y,z] = 1, [x,y] = z>`.
//!
//! An irreducible class of dimension `r` is a triple `(alpha, beta, zeta)` with
//! `zeta` of order `r`; two triples describe the same class exactly when they
//! agree on `(alpha^r, beta^r, zeta)`. Only torsion points (roots of unity)
//! are modeled, so every class factors through a finite quotient `H(Z/N)`.
//!
//! [`tensor_irr`] applies the closed-form tensor rule. [`decompose_tensor_bruteforce`]
//! recomputes the same decomposition from explicit induced matrices and exact
//! character inner products over `H(Z/N)`, without using the rule.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cyclo::{self, rational_to_u64, CycloMatrix, CycloNumber, RootOfUnity};
use crate::error::{Error, Result};

/// A Heisenberg irreducible `(alpha, beta, zeta)`; see the module docs.
///
/// Equality, ordering and hashing are by equivalence class, so two triples
/// with the same [`key`](IrrTriple::key) compare equal.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct IrrTriple {
    pub alpha: RootOfUnity,
    pub beta: RootOfUnity,
    pub zeta: RootOfUnity,
}

impl IrrTriple {
    pub fn new(alpha: RootOfUnity, beta: RootOfUnity, zeta: RootOfUnity) -> Self {
        Self { alpha, beta, zeta }
    }

    /// The orbit representative `[V_zeta] = (1, 1, zeta)`.
    pub fn v(zeta: RootOfUnity) -> Self {
        Self::new(RootOfUnity::ONE, RootOfUnity::ONE, zeta)
    }

    /// The one-dimensional class `(alpha, beta, 1)`.
    pub fn character(alpha: RootOfUnity, beta: RootOfUnity) -> Self {
        Self::new(alpha, beta, RootOfUnity::ONE)
    }

    pub fn trivial() -> Self {
        Self::v(RootOfUnity::ONE)
    }

    pub fn dim(&self) -> u64 {
        self.zeta.order()
    }

    /// `(alpha^r, beta^r, zeta)`, the complete invariant of the class.
    pub fn key(&self) -> (RootOfUnity, RootOfUnity, RootOfUnity) {
        let r = self.dim() as i64;
        (self.alpha.pow(r), self.beta.pow(r), self.zeta)
    }

    /// The representative whose `alpha` and `beta` exponents lie in `[0, 1/r)`.
    pub fn canonical_form(&self) -> Self {
        let r = self.dim();
        let (a, b, z) = self.key();
        let root_of = |w: RootOfUnity| {
            RootOfUnity::new(w.num() as i64, w.den() * r).expect("positive denominator")
        };
        Self::new(root_of(a), root_of(b), z)
    }

    /// Tensor with the character `(alpha', beta', 1)`.
    pub fn translate(&self, alpha: RootOfUnity, beta: RootOfUnity) -> Self {
        Self::new(self.alpha.mul(&alpha), self.beta.mul(&beta), self.zeta)
    }

    fn sort_key(&self) -> (RootOfUnity, RootOfUnity, RootOfUnity) {
        let c = self.canonical_form();
        (c.zeta, c.alpha, c.beta)
    }

    /// Orders of every root appearing in the triple.
    fn orders(&self) -> [u64; 3] {
        [self.alpha.order(), self.beta.order(), self.zeta.order()]
    }
}

impl PartialEq for IrrTriple {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for IrrTriple {}

impl std::hash::Hash for IrrTriple {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for IrrTriple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IrrTriple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for IrrTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.zeta)
    }
}

/// Canonical representative `(chi1^r, chi2^r)` of a character modulo the
/// isotropy group `I_zeta = <(zeta, 1), (1, zeta)>`, `r = order(zeta)`.
pub fn canonicalize_character(
    pair: (RootOfUnity, RootOfUnity),
    zeta: &RootOfUnity,
) -> (RootOfUnity, RootOfUnity) {
    let r = zeta.order() as i64;
    (pair.0.pow(r), pair.1.pow(r))
}

/// A finite multiset of irreducible classes: an element of the free abelian
/// monoid on `Irr(H)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepSum {
    terms: BTreeMap<IrrTriple, u64>,
}

impl RepSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(t: IrrTriple) -> Self {
        let mut s = Self::new();
        s.add(t, 1);
        s
    }

    pub fn add(&mut self, t: IrrTriple, mult: u64) {
        if mult > 0 {
            *self.terms.entry(t.canonical_form()).or_insert(0) += mult;
        }
    }

    pub fn merge(&mut self, other: &RepSum) {
        for (t, m) in &other.terms {
            self.add(*t, *m);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrTriple, u64)> {
        self.terms.iter().map(|(t, m)| (t, *m))
    }

    pub fn multiplicity(&self, t: &IrrTriple) -> u64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    /// Number of distinct classes.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_dim(&self) -> u64 {
        self.terms.iter().map(|(t, m)| m * t.dim()).sum()
    }

    /// Sum of multiplicities.
    pub fn count(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn tensor(&self, other: &RepSum) -> RepSum {
        let mut out = RepSum::new();
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                for (t, k) in tensor_irr(a, b).iter() {
                    out.add(*t, k * m * n);
                }
            }
        }
        out
    }

    pub fn translate(&self, alpha: RootOfUnity, beta: RootOfUnity) -> RepSum {
        let mut out = RepSum::new();
        for (t, m) in &self.terms {
            out.add(t.translate(alpha, beta), *m);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RepSumEntry {
    triple: IrrTriple,
    mult: u64,
}

impl Serialize for RepSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<RepSumEntry> = self
            .terms
            .iter()
            .map(|(t, m)| RepSumEntry { triple: *t, mult: *m })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<RepSumEntry>::deserialize(d)?;
        let mut out = RepSum::new();
        for e in entries {
            out.add(e.triple, e.mult);
        }
        Ok(out)
    }
}

impl fmt::Display for RepSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, m)| if *m == 1 { t.to_string() } else { format!("{m}{t}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The quantities `r, s, t, d, eta` attached to a pair of central
/// characters `zeta, zeta'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TensorCaseData {
    /// Order of `zeta`.
    pub r: u64,
    /// Order of `zeta'`.
    pub s: u64,
    /// Order of `zeta * zeta'`.
    pub t: u64,
    pub d: u64,
    /// Generator of `<zeta, zeta'>` of order `d * t` with `eta^d = zeta * zeta'`.
    pub eta: RootOfUnity,
}

impl TensorCaseData {
    pub fn new(zeta: &RootOfUnity, zeta2: &RootOfUnity) -> Self {
        let (r, s) = (zeta.order(), zeta2.order());
        let product = zeta.mul(zeta2);
        let t = product.order();
        let l = cyclo::lcm(r, s);
        let d = l / t;
        let eta = (1..=l)
            .filter(|&k| cyclo::gcd(k, l) == 1)
            .map(|k| RootOfUnity::new(k as i64, l).expect("l >= 1"))
            .find(|eta| eta.pow(d as i64) == product)
            .expect("a primitive generator with eta^d = zeta zeta' exists by CRT");
        Self { r, s, t, d, eta }
    }

    /// The overall multiplicity `rs / (t d^2)`.
    pub fn multiplicity(&self) -> u64 {
        let num = self.r * self.s;
        let den = self.t * self.d * self.d;
        assert_eq!(num % den, 0, "rs/(td^2) must be integral");
        num / den
    }
}

/// Tensor product of two irreducible classes by the closed-form rule
/// `(1,1,zeta) (x) (1,1,zeta') = (rs/td^2) sum_{i,j=1..d} (eta^i, eta^j, zeta zeta')`,
/// translated by the character `(alpha alpha', beta beta')`.
pub fn tensor_irr(a: &IrrTriple, b: &IrrTriple) -> RepSum {
    let data = TensorCaseData::new(&a.zeta, &b.zeta);
    let mult = data.multiplicity();
    let alpha = a.alpha.mul(&b.alpha);
    let beta = a.beta.mul(&b.beta);
    let center = a.zeta.mul(&b.zeta);
    let mut out = RepSum::new();
    for i in 1..=data.d {
        for j in 1..=data.d {
            let t = IrrTriple::new(
                data.eta.pow(i as i64).mul(&alpha),
                data.eta.pow(j as i64).mul(&beta),
                center,
            );
            out.add(t, mult);
        }
    }
    debug_assert_eq!(out.total_dim(), data.r * data.s);
    out
}

/// Images of the generators `x, y, z` in an induced representation.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pub triple: IrrTriple,
    pub x: CycloMatrix,
    pub y: CycloMatrix,
    pub z: CycloMatrix,
}

impl InducedRep {
    pub fn dim(&self) -> usize {
        self.x.size()
    }

    pub fn level(&self) -> u64 {
        self.x.level()
    }

    /// Checks `[x,z] = [y,z] = 1` and `[x,y] = z` with `[g,h] = g^-1 h^-1 g h`,
    /// in the equivalent inverse-free form `xz = zx`, `yz = zy`, `xy = yxz`.
    pub fn check_relations(&self) -> Result<()> {
        let (x, y, z) = (&self.x, &self.y, &self.z);
        if x.mul(z) != z.mul(x) {
            return Err(Error::RelationFailure(format!("[x,z] != 1 for {}", self.triple)));
        }
        if y.mul(z) != z.mul(y) {
            return Err(Error::RelationFailure(format!("[y,z] != 1 for {}", self.triple)));
        }
        if x.mul(y) != y.mul(x).mul(z) {
            return Err(Error::RelationFailure(format!("[x,y] != z for {}", self.triple)));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &InducedRep) -> Result<InducedRep> {
        let rep = InducedRep {
            triple: self.triple,
            x: self.x.kron(&other.x),
            y: self.y.kron(&other.y),
            z: self.z.kron(&other.z),
        };
        rep.check_relations()?;
        Ok(rep)
    }
}

fn level_of(t: &IrrTriple) -> u64 {
    t.orders().into_iter().fold(1, cyclo::lcm)
}

/// Matrices of the representation induced from the character
/// `x^r -> alpha^r, y -> beta, z -> zeta` of `<x^r, y, z>`.
///
/// With basis `e_k = x^k v` (`k < r`): `x e_k = e_{k+1}`, `x e_{r-1} = alpha^r e_0`,
/// `y e_k = beta zeta^-k e_k`, and `z = zeta`. The presentation relations and
/// the eigenvalue conditions (`alpha` for `x`, `beta` for `y`) are verified.
pub fn induced_matrices(t: &IrrTriple) -> Result<InducedRep> {
    let r = t.dim() as usize;
    let level = level_of(t);
    let num = |w: RootOfUnity| CycloNumber::root(&w, level).expect("orders divide level");

    let mut x = CycloMatrix::zero(r, level);
    for k in 0..r {
        if k + 1 < r {
            x.set(k + 1, k, CycloNumber::from_integer(level, 1));
        } else {
            x.set(0, k, num(t.alpha.pow(r as i64)));
        }
    }
    let y_diag: Vec<CycloNumber> = (0..r)
        .map(|k| num(t.beta.mul(&t.zeta.pow(-(k as i64)))))
        .collect();
    let y = CycloMatrix::diagonal(&y_diag);
    let z = CycloMatrix::scalar(r, &num(t.zeta));

    let rep = InducedRep { triple: *t, x, y, z };
    rep.check_relations()?;

    // x v = alpha v for v = sum_k alpha^-k e_k; y e_0 = beta e_0.
    let alpha = num(t.alpha);
    for i in 0..r {
        let lhs = rep.x.row(i).iter().fold(CycloNumber::zero(level), |acc, (k, v)| {
            &acc + &(v * &num(t.alpha.pow(-(*k as i64))))
        });
        let rhs = &alpha * &num(t.alpha.pow(-(i as i64)));
        if lhs != rhs {
            return Err(Error::RelationFailure(format!("x lacks eigenvalue alpha for {t}")));
        }
    }
    if rep.y.get(0, 0) != num(t.beta) {
        return Err(Error::RelationFailure(format!("y lacks eigenvalue beta for {t}")));
    }
    Ok(rep)
}

/// Characters `trace(g)` of `g = x^a y^b` for `a, b < n`, as a dense table;
/// the center contributes the scalar `z^c`.
fn xy_character_table(rep: &InducedRep, n: u64, support: Option<&[(u64, u64)]>) -> BTreeMap<(u64, u64), CycloNumber> {
    let y_powers: Vec<CycloMatrix> = {
        let mut v = Vec::with_capacity(n as usize);
        let mut acc = CycloMatrix::identity(rep.dim(), rep.level());
        for _ in 0..n {
            v.push(acc.clone());
            acc = acc.mul(&rep.y);
        }
        v
    };
    let wanted: Option<BTreeSet<(u64, u64)>> = support.map(|s| s.iter().copied().collect());
    let mut table = BTreeMap::new();
    let mut xa = CycloMatrix::identity(rep.dim(), rep.level());
    for a in 0..n {
        for b in 0..n {
            if wanted.as_ref().is_some_and(|w| !w.contains(&(a, b))) {
                continue;
            }
            table.insert((a, b), xa.trace_of_product(&y_powers[b as usize]));
        }
        xa = xa.mul(&rep.x);
    }
    table
}

/// Decomposes `a (x) b` by exact character theory over `H(Z/N)`.
///
/// Builds induced matrices for `a` and `b`, forms their Kronecker products,
/// and computes multiplicities `(1/N^3) sum_g chi(g) conj(chi_W(g))` against
/// every class `(xi1, xi2, zeta zeta')` with `xi1^N = xi2^N = 1`. Group
/// elements are enumerated as `x^a y^b z^c`; since `z` acts on both sides by
/// the same central scalar, the sum over `c` is computed once and factored out.
pub fn decompose_tensor_bruteforce(a: &IrrTriple, b: &IrrTriple, n: u64) -> Result<RepSum> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    for w in [a.alpha, a.beta, a.zeta, b.alpha, b.beta, b.zeta] {
        if n % w.order() != 0 {
            return Err(Error::OrderNotDividing {
                root: w.to_string(),
                modulus: n,
            });
        }
    }
    let level = n;
    let va = induced_matrices(a)?;
    let vb = induced_matrices(b)?;
    let va = InducedRep {
        triple: *a,
        x: va.x.embed(level)?,
        y: va.y.embed(level)?,
        z: va.z.embed(level)?,
    };
    let vb = InducedRep {
        triple: *b,
        x: vb.x.embed(level)?,
        y: vb.y.embed(level)?,
        z: vb.z.embed(level)?,
    };
    let prod = va.tensor(&vb)?;
    let omega_root = a.zeta.mul(&b.zeta);
    let omega = prod
        .z
        .as_scalar()
        .ok_or_else(|| Error::Invariant("z does not act by a scalar on the tensor product".into()))?;
    if omega != CycloNumber::root(&omega_root, level)? {
        return Err(Error::Invariant("central character is not zeta zeta'".into()));
    }

    let chi = xy_character_table(&prod, n, None);
    let support: Vec<(u64, u64)> = chi
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, _)| *k)
        .collect();

    // Sum over the center: sum_c omega^c conj(omega^c).
    let mut central = CycloNumber::zero(level);
    let mut wc = CycloNumber::from_integer(level, 1);
    for _ in 0..n {
        central = &central + &(&wc * &wc.conj());
        wc = &wc * &omega;
    }

    let candidates: BTreeSet<IrrTriple> = RootOfUnity::all_dividing(n)
        .into_iter()
        .flat_map(|x1| {
            RootOfUnity::all_dividing(n)
                .into_iter()
                .map(move |x2| IrrTriple::new(x1, x2, omega_root).canonical_form())
        })
        .collect();

    let group_order = BigRational::from_integer(BigInt::from(n).pow(3));
    let mut out = RepSum::new();
    for w in candidates {
        let rep_w = induced_matrices(&w)?;
        let rep_w = InducedRep {
            triple: w,
            x: rep_w.x.embed(level)?,
            y: rep_w.y.embed(level)?,
            z: rep_w.z.embed(level)?,
        };
        let chi_w = xy_character_table(&rep_w, n, Some(&support));
        let mut acc = CycloNumber::zero(level);
        for key in &support {
            acc = &acc + &(&chi[key] * &chi_w[key].conj());
        }
        let inner = (&acc * &central).scale(&(BigRational::from_integer(1.into()) / &group_order));
        let mult = inner
            .as_rational()
            .and_then(|q| rational_to_u64(&q).or_else(|| q.is_zero().then_some(0)))
            .ok_or_else(|| Error::NonIntegralMultiplicity(format!("<chi, {w}> = {inner}")))?;
        out.add(w, mult);
    }
    let expected = a.dim() * b.dim();
    if out.total_dim() != expected {
        return Err(Error::Invariant(format!(
            "decomposition of {a} (x) {b} has dimension {} != {expected}",
            out.total_dim()
        )));
    }
    Ok(out)
}

/// The level at which the oracle can compare `a (x) b`: `preferred` when every
/// root order divides it, otherwise the lcm of the orders involved.
pub fn oracle_level(a: &IrrTriple, b: &IrrTriple, preferred: u64) -> u64 {
    let l = level_of(a);
    let l = cyclo::lcm(l, level_of(b));
    if preferred % l == 0 {
        preferred
    } else {
        l
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    fn tri(a: &str, b: &str, z: &str) -> IrrTriple {
        IrrTriple::new(r(a), r(b), r(z))
    }

    #[test]
    fn canonical_form_examples() {
        let t = tri("1/3", "2/5", "0/1");
        assert_eq!(t.canonical_form().alpha, t.alpha);
        assert_eq!(t.canonical_form().beta, t.beta);

        let a = tri("1/4", "0/1", "1/2");
        let b = tri("3/4", "0/1", "1/2");
        assert_eq!(a.key(), (r("1/2"), r("0/1"), r("1/2")));
        assert_eq!(a.key(), b.key());
        assert_eq!(a, b);
        assert_eq!(a.canonical_form().alpha, b.canonical_form().alpha);

        let v3 = IrrTriple::v(r("1/3"));
        let c = v3.canonical_form();
        assert_eq!((c.alpha, c.beta, c.zeta), (v3.alpha, v3.beta, v3.zeta));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for level in 1..=24u64 {
            let roots = RootOfUnity::all_dividing(level);
            for z in roots.iter().filter(|z| z.order() == level || level <= 6) {
                for a in &roots {
                    for b in roots.iter().step_by(3) {
                        let t = IrrTriple::new(*a, *b, *z);
                        let c = t.canonical_form();
                        let cc = c.canonical_form();
                        assert_eq!((c.alpha, c.beta, c.zeta), (cc.alpha, cc.beta, cc.zeta));
                        assert_eq!(c.key(), t.key());
                        assert_eq!(c.zeta, t.zeta);
                    }
                }
            }
        }
    }

    #[test]
    fn character_canonicalization() {
        let pair = (r("1/4"), r("1/4"));
        assert_eq!(canonicalize_character(pair, &RootOfUnity::ONE), pair);
        assert_eq!(canonicalize_character(pair, &r("1/2")), (r("1/2"), r("1/2")));
        let orbit: BTreeSet<_> = [r("0/1"), r("1/2")]
            .iter()
            .flat_map(|s1| {
                [r("0/1"), r("1/2")]
                    .into_iter()
                    .map(move |s2| canonicalize_character((r("1/4").mul(s1), r("1/4").mul(&s2)), &r("1/2")))
            })
            .collect();
        assert_eq!(orbit.len(), 1);
    }

    #[test]
    fn character_fibers_have_size_r_squared() {
        for m in [4u64, 6, 8, 12] {
            for r_ord in crate::cyclo::divisors(m) {
                let zeta = RootOfUnity::primitive(r_ord);
                let roots = RootOfUnity::all_dividing(m);
                let mut fibers: BTreeMap<(RootOfUnity, RootOfUnity), u64> = BTreeMap::new();
                for a in &roots {
                    for b in &roots {
                        *fibers.entry(canonicalize_character((*a, *b), &zeta)).or_default() += 1;
                    }
                }
                assert!(fibers.values().all(|&n| n == r_ord * r_ord), "m={m} r={r_ord}");
            }
        }
    }

    #[test]
    fn tensor_rule_examples() {
        // coprime orders
        let s = tensor_irr(&IrrTriple::v(r("1/2")), &IrrTriple::v(r("1/3")));
        assert_eq!(s, RepSum::single(IrrTriple::v(r("5/6"))));

        let s = tensor_irr(&IrrTriple::v(r("1/2")), &IrrTriple::v(r("1/2")));
        let mut expected = RepSum::new();
        for (a, b) in [("0/1", "0/1"), ("1/2", "0/1"), ("0/1", "1/2"), ("1/2", "1/2")] {
            expected.add(IrrTriple::character(r(a), r(b)), 1);
        }
        assert_eq!(s, expected);

        let s = tensor_irr(&IrrTriple::v(r("1/3")), &IrrTriple::v(r("1/3")));
        let mut expected = RepSum::new();
        expected.add(IrrTriple::v(r("2/3")), 3);
        assert_eq!(s, expected);

        // k = m with k > l: order 4 times order 2 gives 2 [V_(zeta zeta')]
        let s = tensor_irr(&IrrTriple::v(r("1/4")), &IrrTriple::v(r("1/2")));
        let mut expected = RepSum::new();
        expected.add(IrrTriple::v(r("3/4")), 2);
        assert_eq!(s, expected);
    }

    #[test]
    fn case_data_invariants() {
        for m in 1..=12u64 {
            for n in 1..=12u64 {
                for z in RootOfUnity::all_of_order(m) {
                    for w in RootOfUnity::all_of_order(n) {
                        let d = TensorCaseData::new(&z, &w);
                        assert_eq!(d.d * d.t, cyclo::lcm(m, n));
                        assert_eq!(d.eta.order(), d.d * d.t);
                        assert_eq!(d.eta.pow(d.d as i64), z.mul(&w));
                        let total = tensor_irr(&IrrTriple::v(z), &IrrTriple::v(w)).total_dim();
                        assert_eq!(total, m * n);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_matrices_of_sign_class() {
        let rep = induced_matrices(&IrrTriple::v(r("1/2"))).unwrap();
        let one = CycloNumber::from_integer(2, 1);
        let minus = CycloNumber::from_integer(2, -1);
        assert_eq!(rep.x.get(0, 1), one);
        assert_eq!(rep.x.get(1, 0), one);
        assert!(rep.x.get(0, 0).is_zero());
        assert_eq!(rep.y, CycloMatrix::diagonal(&[one.clone(), minus.clone()]));
        assert_eq!(rep.z, CycloMatrix::scalar(2, &minus));
    }

    #[test]
    fn induced_matrices_of_characters_are_scalars() {
        let t = tri("1/3", "3/4", "0/1");
        let rep = induced_matrices(&t).unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.x.get(0, 0), CycloNumber::root(&r("1/3"), 12).unwrap());
        assert_eq!(rep.y.get(0, 0), CycloNumber::root(&r("3/4"), 12).unwrap());
        assert_eq!(rep.z.get(0, 0), CycloNumber::from_integer(12, 1));
    }

    #[test]
    fn induced_matrices_satisfy_presentation() {
        for m in 1..=8u64 {
            for z in RootOfUnity::all_of_order(m) {
                for a in ["0/1", "1/3", "1/2"] {
                    let t = IrrTriple::new(r(a), r("1/4"), z);
                    let rep = induced_matrices(&t).unwrap();
                    rep.check_relations().unwrap();
                    let level = rep.level();
                    let expected = CycloNumber::root(&z, level)
                        .unwrap()
                        .scale(&BigRational::from_integer(BigInt::from(m)));
                    assert_eq!(rep.z.trace(), expected);
                }
            }
        }
    }

    #[test]
    fn bruteforce_examples() {
        let v2 = IrrTriple::v(r("1/2"));
        assert_eq!(decompose_tensor_bruteforce(&v2, &v2, 2).unwrap(), tensor_irr(&v2, &v2));
        assert_eq!(decompose_tensor_bruteforce(&v2, &v2, 2).unwrap().len(), 4);
        let triv = IrrTriple::trivial();
        assert_eq!(
            decompose_tensor_bruteforce(&triv, &triv, 1).unwrap(),
            RepSum::single(triv)
        );
    }

    #[test]
    fn bruteforce_rejects_non_dividing_order() {
        let a = IrrTriple::v(r("1/4"));
        let err = decompose_tensor_bruteforce(&a, &a, 6).unwrap_err();
        assert!(matches!(err, Error::OrderNotDividing { modulus: 6, .. }));
    }

    #[test]
    fn bruteforce_with_translated_characters() {
        let a = tri("1/6", "1/2", "1/3");
        let b = tri("1/3", "0/1", "2/3");
        assert_eq!(decompose_tensor_bruteforce(&a, &b, 6).unwrap(), tensor_irr(&a, &b));
    }

    #[test]
    fn repsum_serialization_is_sorted() {
        let s = tensor_irr(&IrrTriple::v(r("1/2")), &IrrTriple::v(r("1/2")));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"[{"triple":{"alpha":"0/1","beta":"0/1","zeta":"0/1"},"mult":1},{"triple":{"alpha":"0/1","beta":"1/2","zeta":"0/1"},"mult":1},{"triple":{"alpha":"1/2","beta":"0/1","zeta":"0/1"},"mult":1},{"triple":{"alpha":"1/2","beta":"1/2","zeta":"0/1"},"mult":1}]"#
        );
        let back: RepSum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn tensor_is_commutative_and_translation_equivariant() {
        let roots: Vec<RootOfUnity> = (1..=6).flat_map(RootOfUnity::all_of_order).collect();
        for z in &roots {
            for w in &roots {
                let (a, b) = (IrrTriple::v(*z), IrrTriple::v(*w));
                assert_eq!(tensor_irr(&a, &b), tensor_irr(&b, &a));
                let ch = (r("1/5"), r("1/3"));
                let lhs = tensor_irr(&a.translate(ch.0, ch.1), &b);
                assert_eq!(lhs, tensor_irr(&a, &b).translate(ch.0, ch.1));
            }
        }
    }
}
