//! The graded ring `H_*(Irr H)`.
//!
//! Each component `zeta` of `Irr H` is a torus carrying generators
//! `a_zeta` (degree 0), `b_zeta`, `c_zeta` (degree 1) and `d_zeta` (degree 2).
//! Products follow the table in [`generator_product`]; every product of total
//! degree above 2 vanishes, as do `b b` and `c c`.

mod ring;
mod transfer;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{self, RootOfUnity};
use crate::error::{Error, Result};

pub use ring::{kunneth_tensor, BasisElement, RingDescription, RingElement};
pub use transfer::{transfer_coefficient_oracle, transfer_product, Lattice2, MAX_TRANSFER_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    A,
    B,
    C,
    D,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::A, Kind::B, Kind::C, Kind::D];

    pub fn degree(self) -> u32 {
        match self {
            Kind::A => 0,
            Kind::B | Kind::C => 1,
            Kind::D => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Kind::A => 'a',
            Kind::B => 'b',
            Kind::C => 'c',
            Kind::D => 'd',
        }
    }
}

/// A homology generator of the component of `Irr H` containing `[V_zeta]`.
///
/// Ordered by `(degree, kind, zeta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub zeta: RootOfUnity,
}

impl Generator {
    pub fn new(kind: Kind, zeta: RootOfUnity) -> Self {
        Self { kind, zeta }
    }

    pub fn a(zeta: RootOfUnity) -> Self {
        Self::new(Kind::A, zeta)
    }

    pub fn b(zeta: RootOfUnity) -> Self {
        Self::new(Kind::B, zeta)
    }

    pub fn c(zeta: RootOfUnity) -> Self {
        Self::new(Kind::C, zeta)
    }

    pub fn d(zeta: RootOfUnity) -> Self {
        Self::new(Kind::D, zeta)
    }

    pub fn degree(&self) -> u32 {
        self.kind.degree()
    }

    /// The four generators of one component.
    pub fn of_component(zeta: RootOfUnity) -> [Generator; 4] {
        Kind::ALL.map(|k| Generator::new(k, zeta))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.letter(), self.zeta)
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `"b:1/2"`.
impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed generator {s:?}: expected e.g. \"b:1/2\""));
        let (k, z) = s.split_once(':').ok_or_else(bad)?;
        let kind = match k.trim() {
            "a" => Kind::A,
            "b" => Kind::B,
            "c" => Kind::C,
            "d" => Kind::D,
            _ => return Err(bad()),
        };
        Ok(Generator::new(kind, z.trim().parse()?))
    }
}

/// Product of two generators from the table
///
/// ```text
/// a_z a_w = |z||w|/|zw| a_zw      a_z b_w = |z| b_zw      a_z c_w = |z| c_zw
/// a_z d_w = |z||zw|/|w| d_zw      b_z c_w = |zw| d_zw     c_z b_w = -|zw| d_zw
/// ```
///
/// with degree-0 generators central. Returns `None` for a zero product.
pub fn generator_product(g: &Generator, h: &Generator) -> Option<(Generator, BigInt)> {
    let target = g.zeta.mul(&h.zeta);
    let (r, s, t) = (g.zeta.order(), h.zeta.order(), target.order());
    let (kind, coeff): (Kind, BigInt) = match (g.kind, h.kind) {
        (Kind::A, Kind::A) => (Kind::A, BigInt::from(r * s / t)),
        (Kind::A, k @ (Kind::B | Kind::C)) => (k, BigInt::from(r)),
        (k @ (Kind::B | Kind::C), Kind::A) => (k, BigInt::from(s)),
        (Kind::A, Kind::D) => (Kind::D, BigInt::from(r * t / s)),
        (Kind::D, Kind::A) => (Kind::D, BigInt::from(s * t / r)),
        (Kind::B, Kind::C) => (Kind::D, BigInt::from(t)),
        (Kind::C, Kind::B) => (Kind::D, -BigInt::from(t)),
        _ => return None,
    };
    Some((Generator::new(kind, target), coeff))
}

/// Coefficient ring of a [`GradedElement`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum CoeffDomain {
    Integers,
    /// `Z / ell^n`.
    Modular { ell: u64, n: u32 },
}

impl CoeffDomain {
    pub fn modular(ell: u64, n: u32) -> Result<Self> {
        if !cyclo::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("exponent n must be >= 1".into()));
        }
        Ok(CoeffDomain::Modular { ell, n })
    }

    pub fn modulus(&self) -> Option<BigInt> {
        match self {
            CoeffDomain::Integers => None,
            CoeffDomain::Modular { ell, n } => Some(BigInt::from(*ell).pow(*n)),
        }
    }

    /// Canonical representative: unchanged over `Z`, in `[0, ell^n)` otherwise.
    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self.modulus() {
            None => x,
            Some(m) => x.mod_floor(&m),
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Integers => write!(f, "Z"),
            CoeffDomain::Modular { ell, n } => write!(f, "Z/{ell}^{n}"),
        }
    }
}

/// A sparse linear combination of generators; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    domain: CoeffDomain,
    terms: BTreeMap<Generator, BigInt>,
}

impl GradedElement {
    pub fn zero(domain: CoeffDomain) -> Self {
        Self {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(g: Generator, domain: CoeffDomain) -> Self {
        Self::from_terms(domain, [(g, BigInt::one())])
    }

    pub fn from_terms(domain: CoeffDomain, terms: impl IntoIterator<Item = (Generator, BigInt)>) -> Self {
        let mut out = Self::zero(domain);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    /// The unit `a_1`.
    pub fn one(domain: CoeffDomain) -> Self {
        Self::generator(Generator::a(RootOfUnity::ONE), domain)
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Generator) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: Generator, c: BigInt) {
        let entry = self.terms.entry(g).or_default();
        *entry = self.domain.reduce(&*entry + c);
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    fn check_domain(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::MixedDomains(self.domain.to_string(), other.domain.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.domain, self.terms.iter().map(|(g, c)| (*g, c * k)))
    }

    /// The part of degree exactly `degree`.
    pub fn homogeneous(&self, degree: u32) -> Self {
        Self::from_terms(
            self.domain,
            self.terms
                .iter()
                .filter(|(g, _)| g.degree() == degree)
                .map(|(g, c)| (*g, c.clone())),
        )
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Generator::degree).max()
    }

    /// Change of coefficients along `Z -> Z/l^n` or `Z/l^n -> Z/l^m` (`m <= n`).
    pub fn reduce_to(&self, domain: CoeffDomain) -> Result<Self> {
        let ok = match (self.domain, domain) {
            (_, CoeffDomain::Integers) => self.domain == CoeffDomain::Integers,
            (CoeffDomain::Integers, _) => true,
            (CoeffDomain::Modular { ell, n }, CoeffDomain::Modular { ell: l2, n: m }) => ell == l2 && m <= n,
        };
        if !ok {
            return Err(Error::MixedDomains(self.domain.to_string(), domain.to_string()));
        }
        Ok(Self::from_terms(domain, self.terms.iter().map(|(g, c)| (*g, c.clone()))))
    }

    /// Bilinear extension of [`generator_product`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_domain(other)?;
        let mut out = Self::zero(self.domain);
        for (g, x) in &self.terms {
            for (h, y) in &other.terms {
                if let Some((k, c)) = generator_product(g, h) {
                    out.add_term(k, c * x * y);
                }
            }
        }
        Ok(out)
    }
}

/// Product in the table ring; errors on mixed coefficient domains.
pub fn mul_graded(u: &GradedElement, v: &GradedElement) -> Result<GradedElement> {
    u.mul(v)
}

/// The augmentation `a_zeta -> |zeta|`, zero in positive degree. The value is
/// reduced in the element's coefficient domain and then, if given, modulo `ell`.
pub fn augment(u: &GradedElement, reduce_mod: Option<u64>) -> BigInt {
    let total: BigInt = u
        .terms
        .iter()
        .filter(|(g, _)| g.kind == Kind::A)
        .map(|(g, c)| c * BigInt::from(g.zeta.order()))
        .sum();
    let total = u.domain.reduce(total);
    match reduce_mod {
        Some(l) => total.mod_floor(&BigInt::from(l)),
        None => total,
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.terms {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            match (first, sign) {
                (true, "-") => write!(f, "-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            if mag.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}*{g}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRecord {
    degree: u32,
    kind: Kind,
    zeta: RootOfUnity,
    coeff: String,
}

impl Serialize for GradedElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(g, c)| TermRecord {
                degree: g.degree(),
                kind: g.kind,
                zeta: g.zeta,
                coeff: c.to_string(),
            })
            .collect();
        records.serialize(s)
    }
}

/// The subring of `H_*(Irr H)` spanned by finitely many components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergRing {
    components: BTreeSet<RootOfUnity>,
}

impl HeisenbergRing {
    pub fn new(components: impl IntoIterator<Item = RootOfUnity>) -> Self {
        Self {
            components: components.into_iter().collect(),
        }
    }

    /// All components `zeta` with `zeta^m = 1`; always closed under products.
    pub fn dividing(m: u64) -> Self {
        Self::new(RootOfUnity::all_dividing(m))
    }

    pub fn components(&self) -> &BTreeSet<RootOfUnity> {
        &self.components
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self
            .components
            .iter()
            .flat_map(|z| Generator::of_component(*z))
            .collect();
        gens.sort();
        gens
    }

    /// Errors with the first product that leaves the component set.
    pub fn check_closed(&self) -> Result<()> {
        for z in &self.components {
            for w in &self.components {
                let zw = z.mul(w);
                if !self.components.contains(&zw) {
                    return Err(Error::NotClosed(format!("{z} * {w} = {zw} is not a component")));
                }
            }
        }
        Ok(())
    }

    /// Basis, unit and structure constants over `Z`.
    pub fn description(&self) -> Result<RingDescription> {
        self.check_closed()?;
        if !self.components.contains(&RootOfUnity::ONE) {
            return Err(Error::NotClosed("the identity component is missing".into()));
        }
        let gens = self.generators();
        let index: BTreeMap<Generator, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let basis = gens
            .iter()
            .map(|g| BasisElement {
                label: g.to_string(),
                degree: g.degree(),
            })
            .collect();
        let mut products = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            for (j, h) in gens.iter().enumerate() {
                if let Some((k, c)) = generator_product(g, h) {
                    products.insert((i, j), BTreeMap::from([(index[&k], c)]));
                }
            }
        }
        RingDescription::new(basis, index[&Generator::a(RootOfUnity::ONE)], products)
    }

    /// Components whose order lies in `{1, ell, ..., ell^K}`.
    pub fn p_typical(&self, ell: u64, k: u32) -> Result<HeisenbergRing> {
        if !cyclo::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let allowed: BTreeSet<u64> = (0..=k).map(|i| ell.pow(i)).collect();
        Ok(Self::new(
            self.components
                .iter()
                .copied()
                .filter(|z| allowed.contains(&z.order())),
        ))
    }
}

/// The `ell`-typical subring: generators whose component has order `ell^i`,
/// `i <= K`, verified closed under products.
pub fn restrict_p_typical(ring: &HeisenbergRing, ell: u64, k: u32) -> Result<RingDescription> {
    ring.p_typical(ell, k)?.description()
}
