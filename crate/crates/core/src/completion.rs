//! `l`-adic towers `{R/l^n}` of the `l`-typical ring, idempotent splittings
//! and finite-stage completed direct sums.
//!
//! Every object here is a finite shadow: components are those `zeta` with
//! `zeta^{l^K} = 1`, precision is bounded by `l^{n_max}`, and reports carry
//! both bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclo::{self, RootOfUnity};
use crate::error::{Error, Result};
use crate::homalg::{lim_lim1, ideal_power_quotient, AbelianGroup, ColimitOptions, IntMatrix, LimReport, PresentedGroup, Tower};
use crate::repring::{generator_product, CoeffDomain, GradedElement, Generator, HeisenbergRing, Kind, RingDescription};

/// An element of `Z / l^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPadic {
    ell: u64,
    n: u32,
    value: BigInt,
}

impl TruncatedPadic {
    pub fn new(ell: u64, n: u32, value: impl Into<BigInt>) -> Result<Self> {
        if !cyclo::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("precision must be >= 1".into()));
        }
        let modulus = BigInt::from(ell).pow(n);
        Ok(Self {
            ell,
            n,
            value: value.into().mod_floor(&modulus),
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.ell).pow(self.n)
    }

    fn same(&self, value: BigInt) -> Self {
        Self::new(self.ell, self.n, value).expect("parameters already validated")
    }

    fn check(&self, other: &Self) -> Result<()> {
        if (self.ell, self.n) != (other.ell, other.n) {
            return Err(Error::MixedDomains(
                format!("Z/{}^{}", self.ell, self.n),
                format!("Z/{}^{}", other.ell, other.n),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.same(&self.value + &other.value))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.same(&self.value - &other.value))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.same(&self.value * &other.value))
    }

    pub fn neg(&self) -> Self {
        self.same(-&self.value)
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(&BigInt::from(self.ell))
    }

    /// Inverse by the extended Euclidean algorithm; non-units are an error.
    pub fn inv(&self) -> Result<Self> {
        let m = self.modulus();
        let e = self.value.extended_gcd(&m);
        if !e.gcd.is_one() {
            return Err(Error::NotAUnit(self.value.to_string(), format!("{}^{}", self.ell, self.n)));
        }
        Ok(self.same(e.x))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Image under `Z/l^n -> Z/l^m`, `m <= n`.
    pub fn reduce_to(&self, m: u32) -> Result<Self> {
        if m == 0 || m > self.n {
            return Err(Error::InvalidParameter(format!("cannot reduce precision {} to {m}", self.n)));
        }
        Self::new(self.ell, m, self.value.clone())
    }
}

impl fmt::Display for TruncatedPadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.ell, self.n)
    }
}

/// Prime, precision bound and root-order bound `l^K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionParams {
    pub ell: u64,
    pub n_max: u32,
    pub k: u32,
}

impl CompletionParams {
    pub fn new(ell: u64, n_max: u32, k: u32) -> Result<Self> {
        if !cyclo::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if n_max == 0 {
            return Err(Error::InvalidParameter("n_max must be >= 1".into()));
        }
        if ell.checked_pow(k).is_none_or(|v| v > 1 << 16) {
            return Err(Error::ResourceGuard(format!("order bound {ell}^{k} is too large")));
        }
        Ok(Self { ell, n_max, k })
    }

    pub fn order_bound(&self) -> u64 {
        self.ell.pow(self.k)
    }

    /// The components `zeta` with `zeta^{l^K} = 1`.
    pub fn components(&self) -> Vec<RootOfUnity> {
        RootOfUnity::all_dividing(self.order_bound())
    }

    pub fn domain(&self, n: u32) -> CoeffDomain {
        CoeffDomain::Modular { ell: self.ell, n }
    }
}

/// Basis label of a level of a [`ProGradedModule`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TowerBasis {
    pub zeta: RootOfUnity,
    pub degree: u32,
    pub index: u32,
}

impl TowerBasis {
    pub fn of_generator(g: &Generator) -> Self {
        let index = u32::from(g.kind == Kind::C);
        Self {
            zeta: g.zeta,
            degree: g.degree(),
            index,
        }
    }
}

/// Result of one named verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

impl NamedCheck {
    pub fn new(name: &str, passed: bool, witness: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            witness: witness.into(),
        }
    }
}

/// Levels `n = 1..=n_max`, each the free `Z/l^n`-module on `basis`, with
/// reduction maps from level `n` to level `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProGradedModule {
    pub params: CompletionParams,
    basis: Vec<TowerBasis>,
}

impl ProGradedModule {
    pub fn new(params: CompletionParams, mut basis: Vec<TowerBasis>) -> Self {
        basis.sort();
        Self { params, basis }
    }

    pub fn basis(&self) -> &[TowerBasis] {
        &self.basis
    }

    /// Rank in degrees `0..=max(top degree, 3)`.
    pub fn ranks_by_degree(&self) -> Vec<usize> {
        let top = self.basis.iter().map(|b| b.degree).max().unwrap_or(0).max(3) as usize;
        let mut ranks = vec![0; top + 1];
        for b in &self.basis {
            ranks[b.degree as usize] += 1;
        }
        ranks
    }

    /// `Z^B / l^n Z^B`.
    pub fn level(&self, n: u32) -> Result<PresentedGroup> {
        if n == 0 || n > self.params.n_max {
            return Err(Error::InvalidParameter(format!("level {n} outside 1..={}", self.params.n_max)));
        }
        let b = self.basis.len();
        let modulus = BigInt::from(self.params.ell).pow(n);
        Ok(PresentedGroup::new(b, IntMatrix::identity(b).scale(&modulus)))
    }

    /// Reduction from level `from` to level `to <= from`.
    pub fn transition(&self, from: u32, to: u32) -> Result<IntMatrix> {
        if to == 0 || to > from || from > self.params.n_max {
            return Err(Error::InvalidParameter(format!("no transition {from} -> {to}")));
        }
        Ok(IntMatrix::identity(self.basis.len()))
    }

    /// Surjectivity of every transition and compatibility of composites.
    pub fn check_transitions(&self) -> Result<Vec<NamedCheck>> {
        let mut surjective = Vec::new();
        let mut composite = Vec::new();
        for n in 2..=self.params.n_max {
            let (src, dst) = (self.level(n)?, self.level(n - 1)?);
            let t = self.transition(n, n - 1)?;
            surjective.push(src.is_hom(&t, &dst) && src.is_surjective(&t, &dst));
            if n >= 3 {
                let two_step = self.transition(n - 1, n - 2)?.mul(&t);
                composite.push(two_step == self.transition(n, n - 2)?);
            }
        }
        Ok(vec![
            NamedCheck::new(
                "transitions_surjective",
                surjective.iter().all(|&x| x),
                format!("{} transitions checked", surjective.len()),
            ),
            NamedCheck::new(
                "composite_transitions",
                composite.iter().all(|&x| x),
                format!("{} composites checked", composite.len()),
            ),
        ])
    }
}

/// The `l`-typical ring truncated at components of order dividing `l^K`,
/// together with its tower of reductions modulo `l^n`.
#[derive(Clone, Debug)]
pub struct RingTower {
    pub params: CompletionParams,
    pub ring: HeisenbergRing,
    pub description: RingDescription,
    pub module: ProGradedModule,
    generators: Vec<Generator>,
}

/// Builds the tower `{R~/l^n}`, `n <= n_max`, from the `l`-typical subring.
pub fn mod_ln_tower(params: CompletionParams) -> Result<RingTower> {
    let ring = HeisenbergRing::dividing(params.order_bound()).p_typical(params.ell, params.k)?;
    let description = ring.description()?;
    let generators = ring.generators();
    let module = ProGradedModule::new(params, generators.iter().map(TowerBasis::of_generator).collect());
    Ok(RingTower {
        params,
        ring,
        description,
        module,
        generators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionReport {
    pub prime: u64,
    pub precision: u32,
    pub order_bound: u64,
    pub ranks: BTreeMap<u32, usize>,
    pub checks: Vec<NamedCheck>,
}

impl CompletionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl RingTower {
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn product_at(&self, n: u32, g: &Generator, h: &Generator) -> Result<GradedElement> {
        let dom = self.params.domain(n);
        GradedElement::generator(*g, dom).mul(&GradedElement::generator(*h, dom))
    }

    /// Ranks, transitions, table reduction, reduction as a ring map, and
    /// associativity at every level (exhaustive for `K <= 2`).
    pub fn verify(&self) -> Result<CompletionReport> {
        let p = &self.params;
        let ranks = self.module.ranks_by_degree();
        let q = p.order_bound() as usize;
        let expected = [q, 2 * q, q, 0];
        let mut checks = vec![NamedCheck::new(
            "ranks",
            ranks.len() >= 4 && ranks[..4] == expected && ranks[4..].iter().all(|&r| r == 0),
            format!("{ranks:?}"),
        )];
        checks.extend(self.module.check_transitions()?);

        let mut table_ok = true;
        let mut table_witness = String::from("all pairs agree");
        let mut hom_ok = true;
        for n in 1..=p.n_max {
            let dom = p.domain(n);
            for g in &self.generators {
                for h in &self.generators {
                    let got = self.product_at(n, g, h)?;
                    let want = match generator_product(g, h) {
                        Some((k, c)) => GradedElement::from_terms(dom, [(k, c)]),
                        None => GradedElement::zero(dom),
                    };
                    if got != want && table_ok {
                        table_ok = false;
                        table_witness = format!("level {n}: {g} * {h} = {got}, table gives {want}");
                    }
                    if n >= 2 {
                        let lower = p.domain(n - 1);
                        let reduced = got.reduce_to(lower)?;
                        let direct = self.product_at(n - 1, g, h)?;
                        hom_ok &= reduced == direct;
                    }
                }
            }
        }
        checks.push(NamedCheck::new("table_reduction", table_ok, table_witness));
        checks.push(NamedCheck::new(
            "transitions_are_ring_maps",
            hom_ok,
            "reduction commutes with products",
        ));

        if p.k <= 2 {
            let mut assoc_ok = true;
            for n in 1..=p.n_max {
                let dom = p.domain(n);
                for g in &self.generators {
                    for h in &self.generators {
                        let gh = self.product_at(n, g, h)?;
                        for k in &self.generators {
                            let kk = GradedElement::generator(*k, dom);
                            let lhs = gh.mul(&kk)?;
                            let rhs = GradedElement::generator(*g, dom).mul(&self.product_at(n, h, k)?)?;
                            assoc_ok &= lhs == rhs;
                        }
                    }
                }
            }
            checks.push(NamedCheck::new("associativity", assoc_ok, "exhaustive over generator triples"));
        } else {
            checks.push(NamedCheck::new("associativity", true, "skipped for K > 2"));
        }
        let closed = self.ring.check_closed().is_ok();
        checks.push(NamedCheck::new("closed_under_products", closed, "component set is a subgroup"));

        Ok(CompletionReport {
            prime: p.ell,
            precision: p.n_max,
            order_bound: p.order_bound(),
            ranks: ranks.iter().enumerate().map(|(d, r)| (d as u32, *r)).collect(),
            checks,
        })
    }
}

/// `e_zeta = (1/|zeta|) sum_k a_{zeta^k} / |zeta^k|` in degree 0 over `Z/l^n`.
pub fn idempotent_e(zeta: &RootOfUnity, ell: u64, n: u32) -> Result<GradedElement> {
    let r = zeta.order();
    if !cyclo::is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if r % ell == 0 {
        return Err(Error::InvalidParameter(format!(
            "idempotent needs order({zeta}) = {r} coprime to {ell}"
        )));
    }
    let dom = CoeffDomain::modular(ell, n)?;
    let unit = |x: u64| TruncatedPadic::new(ell, n, x);
    let scale = unit(1)?.div(&unit(r)?)?;
    let mut e = GradedElement::zero(dom);
    for k in 0..r {
        let w = zeta.pow(k as i64);
        let c = scale.div(&unit(w.order())?)?;
        e.add_term(Generator::a(w), c.value().clone());
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentCheck {
    pub zeta: RootOfUnity,
    pub ell: u64,
    pub n: u32,
    pub e: GradedElement,
    pub idempotent: bool,
    /// `e (|zeta| - a_zeta) = 0`.
    pub kernel_identity: bool,
}

pub fn verify_idempotent(zeta: &RootOfUnity, ell: u64, n: u32) -> Result<IdempotentCheck> {
    let e = idempotent_e(zeta, ell, n)?;
    let dom = e.domain();
    let shifted = GradedElement::from_terms(
        dom,
        [
            (Generator::a(RootOfUnity::ONE), BigInt::from(zeta.order())),
            (Generator::a(*zeta), BigInt::from(-1)),
        ],
    );
    Ok(IdempotentCheck {
        zeta: *zeta,
        ell,
        n,
        idempotent: e.mul(&e)? == e,
        kernel_identity: e.mul(&shifted)?.is_zero(),
        e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitEntry {
    pub source: Generator,
    pub image: GradedElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub ell: u64,
    pub n: u32,
    pub modulus_bound: u64,
    pub quotient: AbelianGroup,
    pub typical: AbelianGroup,
    pub idempotent_image: AbelianGroup,
    pub basis_map: Vec<SplitEntry>,
    pub checks: Vec<NamedCheck>,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn coords_of(element: &GradedElement, index: &BTreeMap<Generator, usize>, len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    for (g, c) in element.terms() {
        v[index[g]] = c.clone();
    }
    v
}

/// Compares the degree-0 ring on components `zeta^M = 1`, modulo the ideal of
/// all `a_zeta - |zeta|` with `order(zeta)` prime to `l`, against the degree-0
/// `l`-typical ring, through `a_zeta -> |zeta_c| a_{zeta_l}`.
pub fn split_report(ell: u64, n: u32, modulus_bound: u64) -> Result<SplitReport> {
    if modulus_bound == 0 {
        return Err(Error::InvalidParameter("bound must be >= 1".into()));
    }
    let dom = CoeffDomain::modular(ell, n)?;
    let modulus = BigInt::from(ell).pow(n);
    let comps = RootOfUnity::all_dividing(modulus_bound);
    let gens: Vec<Generator> = comps.iter().map(|z| Generator::a(*z)).collect();
    let index: BTreeMap<Generator, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let len = gens.len();

    let typical_comps: Vec<RootOfUnity> = comps.iter().filter(|z| z.primary_split(ell).1.is_one()).copied().collect();
    let typical_gens: Vec<Generator> = typical_comps.iter().map(|z| Generator::a(*z)).collect();
    let typical_index: BTreeMap<Generator, usize> = typical_gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let tlen = typical_gens.len();

    let phi = |g: &Generator| -> GradedElement {
        let (lpart, cpart) = g.zeta.primary_split(ell);
        GradedElement::from_terms(dom, [(Generator::a(lpart), BigInt::from(cpart.order()))])
    };
    let elem = |g: &Generator| GradedElement::generator(*g, dom);

    // ideal generated by a_zeta - |zeta| (zeta of order prime to l)
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for z in comps.iter().filter(|z| z.order() % ell != 0 && !z.is_one()) {
        let rel = elem(&Generator::a(*z)).sub(&GradedElement::from_terms(
            dom,
            [(Generator::a(RootOfUnity::ONE), BigInt::from(z.order()))],
        ))?;
        for g in &gens {
            relations.push(coords_of(&rel.mul(&elem(g))?, &index, len));
        }
    }
    let base = IntMatrix::identity(len).scale(&modulus);
    let rel_matrix = if relations.is_empty() {
        base.clone()
    } else {
        base.hcat(&IntMatrix::from_columns(len, &relations))
    };
    let full = PresentedGroup::new(len, base.clone());
    let quotient_group = PresentedGroup::new(len, rel_matrix.clone());
    let quotient = quotient_group.structure();
    let typical_group = PresentedGroup::new(tlen, IntMatrix::identity(tlen).scale(&modulus));
    let typical = typical_group.structure();

    // phi as a matrix into the typical basis
    let phi_cols: Vec<Vec<BigInt>> = gens.iter().map(|g| coords_of(&phi(g), &typical_index, tlen)).collect();
    let phi_matrix = IntMatrix::from_columns(tlen, &phi_cols);

    let mut hom_ok = true;
    for g in &gens {
        for h in &gens {
            let lhs = phi_apply(&elem(g).mul(&elem(h))?, &phi);
            let rhs = phi(g).mul(&phi(h))?;
            hom_ok &= lhs == rhs;
        }
    }
    let kills = quotient_group.is_hom(&phi_matrix, &typical_group);
    let onto = full.is_surjective(&phi_matrix, &typical_group);
    let iso = kills && onto && quotient.order() == typical.order();

    // idempotent route: image of multiplication by e in the full ring
    let coprime_part = modulus_bound / ell.pow(cyclo_valuation(modulus_bound, ell));
    let idem_image = if coprime_part == 1 {
        full.structure()
    } else {
        let zeta_c = RootOfUnity::primitive(coprime_part);
        let e = idempotent_e(&zeta_c, ell, n)?;
        let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| e.mul(&elem(g)).map(|x| coords_of(&x, &index, len))).collect::<Result<_>>()?;
        full.image(&IntMatrix::from_columns(len, &cols), &full)
    };

    let basis_map = gens.iter().map(|g| SplitEntry { source: *g, image: phi(g) }).collect();
    let checks = vec![
        NamedCheck::new("phi_is_ring_map", hom_ok, "phi(xy) = phi(x) phi(y) on all basis pairs"),
        NamedCheck::new("phi_kills_relations", kills, "a_zeta - |zeta| maps to 0"),
        NamedCheck::new("phi_surjective", onto, format!("target {typical}")),
        NamedCheck::new("quotient_isomorphic", iso, format!("quotient {quotient} vs {typical}")),
        NamedCheck::new(
            "idempotent_route_agrees",
            idem_image == quotient,
            format!("image of e: {idem_image}; quotient: {quotient}"),
        ),
    ];
    Ok(SplitReport {
        ell,
        n,
        modulus_bound,
        quotient,
        typical,
        idempotent_image: idem_image,
        basis_map,
        checks,
    })
}

fn cyclo_valuation(mut m: u64, p: u64) -> u32 {
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

fn phi_apply(x: &GradedElement, phi: &impl Fn(&Generator) -> GradedElement) -> GradedElement {
    let mut out = GradedElement::zero(x.domain());
    for (g, c) in x.terms() {
        for (h, d) in phi(g).terms() {
            out.add_term(*h, c * d);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ISquaredRow {
    pub zeta: RootOfUnity,
    pub zeta2: RootOfUnity,
    pub coefficient: u64,
    pub divisible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ISquaredReport {
    pub ell: u64,
    pub order_bound: u64,
    pub rows: Vec<ISquaredRow>,
    pub passed: bool,
}

/// `l | |zeta||zeta'|/|zeta zeta'|` for all nontrivial `zeta, zeta'` with `zeta^{l^K} = 1`.
pub fn i_squared_check(ell: u64, k: u32) -> Result<ISquaredReport> {
    let params = CompletionParams::new(ell, 1, k)?;
    let comps: Vec<RootOfUnity> = params.components().into_iter().filter(|z| !z.is_one()).collect();
    let mut rows = Vec::new();
    for z in &comps {
        for w in &comps {
            let coefficient = z.order() * w.order() / z.mul(w).order();
            rows.push(ISquaredRow {
                zeta: *z,
                zeta2: *w,
                coefficient,
                divisible: coefficient % ell == 0,
            });
        }
    }
    let passed = rows.iter().all(|r| r.divisible);
    Ok(ISquaredReport {
        ell,
        order_bound: params.order_bound(),
        rows,
        passed,
    })
}

/// Mandatory caveat for degree 1 of the circle report.
pub const CIRCLE_DEGREE1_CAVEAT: &str = "degree 1: not derived by this algebraic model (spectrum-level contribution)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleCompletionReport {
    pub p: u64,
    pub s_max: u32,
    pub window: u32,
    pub groups: BTreeMap<u32, AbelianGroup>,
    pub lim: LimReport,
    pub lines: Vec<String>,
    pub note: &'static str,
}

/// Stabilized `colim_k Z[C_{p^k}]/I^s` for `s = 1..=s_max`, each required to
/// be `Z/p^s`, and the limit of the resulting tower.
pub fn circle_completion_report(p: u64, s_max: u32, k_window: u32) -> Result<CircleCompletionReport> {
    if s_max == 0 {
        return Err(Error::InvalidParameter("s_max must be >= 1".into()));
    }
    let opts = ColimitOptions {
        window: k_window,
        ..ColimitOptions::default()
    };
    let mut groups = BTreeMap::new();
    for s in 1..=s_max {
        let report = ideal_power_quotient(p, 1, s, true, opts)?;
        let g = report.colimit.expect("requested").group;
        let expected = AbelianGroup::from_orders(&[BigInt::from(p).pow(s)]);
        if g != expected {
            return Err(Error::Invariant(format!("stabilized group at s={s} is {g}, expected {expected}")));
        }
        groups.insert(s, g);
    }
    let lim = if s_max >= 2 {
        lim_lim1(&Tower::reductions(p, s_max)?)?
    } else {
        LimReport {
            window: 1,
            lim: groups[&1].clone(),
            lim1: AbelianGroup::trivial(),
            mittag_leffler: true,
            note: "single level".into(),
        }
    };
    let lines = vec![
        format!("degree 0: Z_{p} to precision {s_max}"),
        CIRCLE_DEGREE1_CAVEAT.to_string(),
    ];
    Ok(CircleCompletionReport {
        p,
        s_max,
        window: k_window,
        groups,
        lim,
        lines,
        note: crate::homalg::IDEAL_MODEL_NOTE,
    })
}

/// Free `Z/l^n`-modules with `ranks[d] * l^K` generators in degree `d`, one
/// block per component of order dividing `l^K`.
pub fn completed_sum(ranks: &[usize], params: CompletionParams) -> ProGradedModule {
    let mut basis = Vec::new();
    for z in params.components() {
        for (d, &r) in ranks.iter().enumerate() {
            for index in 0..r as u32 {
                basis.push(TowerBasis {
                    zeta: z,
                    degree: d as u32,
                    index,
                });
            }
        }
    }
    ProGradedModule::new(params, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RootOfUnity {
        s.parse().unwrap()
    }

    #[test]
    fn padic_arithmetic() {
        let three = TruncatedPadic::new(2, 3, 3).unwrap();
        assert_eq!(three.inv().unwrap().value(), &BigInt::from(3));
        let two = TruncatedPadic::new(2, 3, 2).unwrap();
        assert!(matches!(two.inv(), Err(Error::NotAUnit(..))));
        assert_eq!(TruncatedPadic::new(3, 2, -1).unwrap().value(), &BigInt::from(8));
        assert_eq!(three.reduce_to(1).unwrap().value(), &BigInt::one());
        let other = TruncatedPadic::new(2, 2, 1).unwrap();
        assert!(three.add(&other).is_err());
    }

    #[test]
    fn tower_examples() {
        let t = mod_ln_tower(CompletionParams::new(2, 3, 2).unwrap()).unwrap();
        assert_eq!(t.module.ranks_by_degree(), vec![4, 8, 4, 0]);
        let orders: Vec<u64> = t.ring.components().iter().map(|z| z.order()).collect();
        assert_eq!(orders, vec![1, 2, 4, 4]);
        let report = t.verify().unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn tower_ranks_for_small_primes() {
        for ell in [2u64, 3] {
            for k in 0..=3 {
                let t = mod_ln_tower(CompletionParams::new(ell, 4, k).unwrap()).unwrap();
                let q = ell.pow(k) as usize;
                assert_eq!(t.module.ranks_by_degree(), vec![q, 2 * q, q, 0]);
            }
        }
    }

    #[test]
    fn idempotent_examples() {
        let z3 = r("1/3");
        let e = idempotent_e(&z3, 2, 3).unwrap();
        let dom = CoeffDomain::modular(2, 3).unwrap();
        let expected = GradedElement::from_terms(
            dom,
            [
                (Generator::a(z3), BigInt::one()),
                (Generator::a(r("2/3")), BigInt::one()),
                (Generator::a(RootOfUnity::ONE), BigInt::from(3)),
            ],
        );
        assert_eq!(e, expected);
        let c = verify_idempotent(&z3, 2, 3).unwrap();
        assert!(c.idempotent && c.kernel_identity);
        assert_eq!(idempotent_e(&RootOfUnity::ONE, 2, 3).unwrap(), GradedElement::one(dom));
        assert!(idempotent_e(&r("1/4"), 2, 3).is_err());
    }

    #[test]
    fn idempotents_over_ranges() {
        for order in [3u64, 5, 7, 9] {
            for n in 1..=8 {
                let c = verify_idempotent(&RootOfUnity::primitive(order), 2, n).unwrap();
                assert!(c.idempotent && c.kernel_identity, "order {order} n {n}");
            }
        }
        for ell in [3u64, 5] {
            for order in [2u64, 4] {
                for n in 1..=5 {
                    let c = verify_idempotent(&RootOfUnity::primitive(order), ell, n).unwrap();
                    assert!(c.idempotent && c.kernel_identity);
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        let rep = split_report(2, 3, 6).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
        assert_eq!(rep.typical, AbelianGroup::from_orders(&[BigInt::from(8), BigInt::from(8)]));
        let z6 = rep.basis_map.iter().find(|e| e.source == Generator::a(r("1/6"))).unwrap();
        assert_eq!(z6.image.coefficient(&Generator::a(r("1/2"))), BigInt::from(3));

        let rep = split_report(2, 3, 4).unwrap();
        assert!(rep.passed());
        assert!(rep.basis_map.iter().all(|e| e.image == GradedElement::generator(e.source, e.image.domain())));
        assert!(split_report(3, 2, 12).unwrap().passed());
    }

    #[test]
    fn i_squared_examples() {
        let rep = i_squared_check(2, 2).unwrap();
        assert!(rep.passed);
        let row = rep.rows.iter().find(|x| x.zeta == r("1/2") && x.zeta2 == r("1/2")).unwrap();
        assert_eq!(row.coefficient, 4);
        let row = rep.rows.iter().find(|x| x.zeta == r("1/4") && x.zeta2 == r("1/4")).unwrap();
        assert_eq!(row.coefficient, 8);
        assert!(rep.rows.iter().all(|x| !x.zeta.is_one() && !x.zeta2.is_one()));
        for ell in [2u64, 3] {
            for k in 0..=4 {
                assert!(i_squared_check(ell, k).unwrap().passed);
            }
        }
    }

    #[test]
    fn circle_report() {
        let rep = circle_completion_report(2, 3, 4).unwrap();
        assert_eq!(rep.groups[&3], AbelianGroup::cyclic(8));
        assert_eq!(rep.lim.lim, AbelianGroup::cyclic(8));
        assert!(rep.lim.mittag_leffler && rep.lim.lim1.is_trivial());
        assert_eq!(rep.lines[0], "degree 0: Z_2 to precision 3");
        assert_eq!(rep.lines[1], CIRCLE_DEGREE1_CAVEAT);
        let rep = circle_completion_report(3, 1, 4).unwrap();
        assert_eq!(rep.groups[&1], AbelianGroup::cyclic(3));
    }

    #[test]
    fn completed_sum_examples() {
        let m = completed_sum(&[1, 2, 1], CompletionParams::new(2, 3, 1).unwrap());
        assert_eq!(m.ranks_by_degree(), vec![2, 4, 2, 0]);
        let m = completed_sum(&[1, 2, 1], CompletionParams::new(2, 3, 0).unwrap());
        assert_eq!(m.ranks_by_degree(), vec![1, 2, 1, 0]);
        let m = completed_sum(&[3], CompletionParams::new(5, 1, 0).unwrap());
        assert_eq!(m.level(1).unwrap().structure(), AbelianGroup::from_orders(&vec![BigInt::from(5); 3]));
        assert!(m.check_transitions().unwrap().iter().all(|c| c.passed));
    }
}
