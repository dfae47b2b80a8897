//! Named exhaustive verification suites at explicit bounds.
//!
//! Cases within a check may run in parallel; results are collected in the
//! enumeration order, so summaries are deterministic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::completion::{
    circle_completion_report, i_squared_check, mod_ln_tower, split_report, verify_idempotent, CompletionParams,
    CIRCLE_DEGREE1_CAVEAT,
};
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::heisenberg::{decompose_tensor_bruteforce, oracle_level, tensor_irr, IrrTriple};
use crate::homalg::{
    bar_tor, circle_colimit, tor_cyclic, AbelianGroup, CircleChain, Coefficients, CyclicModuleComplex, FiniteAlgebra,
};
use crate::repring::{
    augment, generator_product, kunneth_tensor, transfer_product, CoeffDomain, GradedElement, Generator, Kind,
    RingDescription,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Products,
    Oracle,
    Tor,
    Completion,
    All,
}

impl Suite {
    pub const NAMED: [Suite; 4] = [Suite::Products, Suite::Oracle, Suite::Tor, Suite::Completion];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Products => "products",
            Suite::Oracle => "oracle",
            Suite::Tor => "tor",
            Suite::Completion => "completion",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "products" => Ok(Suite::Products),
            "oracle" => Ok(Suite::Oracle),
            "tor" => Ok(Suite::Tor),
            "completion" => Ok(Suite::Completion),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidParameter(format!("unknown suite {s:?}"))),
        }
    }
}

/// Preset bounds. `Desk` keeps every suite within minutes; `Full` uses the
/// larger bounds of the acceptance run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Desk,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "desk" => Ok(Profile::Desk),
            "full" => Ok(Profile::Full),
            _ => Err(Error::InvalidParameter(format!("unknown profile {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    /// Largest root order in the oracle and product sweeps.
    pub max_order: u64,
    /// Preferred group level `N` for the brute-force oracle.
    pub oracle_level: u64,
    /// Largest root order for tensor dimension multiplicativity.
    pub dim_max_order: u64,
    /// Largest level for canonical-form idempotency.
    pub canonical_level: u64,
    pub tor_max_m: u64,
    pub tor_maxdeg: usize,
    /// Precision `n_max` for completion towers.
    pub precision: u32,
    /// Largest exponent `K` of the order bound `l^K`.
    pub order_exponent: u32,
}

impl VerifyOptions {
    pub fn profile(p: Profile) -> Self {
        match p {
            Profile::Quick => Self {
                max_order: 4,
                oracle_level: 4,
                dim_max_order: 6,
                canonical_level: 12,
                tor_max_m: 6,
                tor_maxdeg: 5,
                precision: 3,
                order_exponent: 2,
            },
            Profile::Desk => Self::default(),
            Profile::Full => Self {
                max_order: 8,
                oracle_level: 6,
                dim_max_order: 12,
                canonical_level: 24,
                tor_max_m: 12,
                tor_maxdeg: 5,
                precision: 4,
                order_exponent: 3,
            },
        }
    }
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_order: 6,
            oracle_level: 6,
            dim_max_order: 12,
            canonical_level: 24,
            tor_max_m: 12,
            tor_maxdeg: 5,
            precision: 4,
            order_exponent: 3,
        }
    }
}

/// One invariant checked over `cases` instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub suite: Suite,
    pub options: VerifyOptions,
    pub version: &'static str,
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `suite,check,cases,status,witness` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,cases,status,witness\n");
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let witness = c.witness.as_deref().unwrap_or("").replace('"', "'");
            out.push_str(&format!("{},{},{},{status},\"{witness}\"\n", c.suite, c.name, c.cases));
        }
        out
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerifySummary> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::NAMED.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(match s {
            Suite::Products => products_suite(opts)?,
            Suite::Oracle => oracle_suite(opts)?,
            Suite::Tor => tor_suite(opts)?,
            Suite::Completion => completion_suite(opts)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(VerifySummary {
        suite,
        options: opts.clone(),
        version: crate::VERSION,
        checks,
    })
}

/// Runs `case` over `items` in parallel and keeps the first failure in order.
fn sweep<T, F>(suite: Suite, name: &str, items: &[T], case: F) -> Result<CheckResult>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync,
{
    let outcomes: Vec<Option<String>> = items.par_iter().map(&case).collect::<Result<_>>()?;
    let witness = outcomes.into_iter().flatten().next();
    Ok(CheckResult {
        suite,
        name: name.to_string(),
        cases: items.len(),
        passed: witness.is_none(),
        witness,
    })
}

fn single(suite: Suite, name: &str, passed: bool, witness: impl FnOnce() -> String) -> CheckResult {
    CheckResult {
        suite,
        name: name.to_string(),
        cases: 1,
        passed,
        witness: (!passed).then(witness),
    }
}

/// Every root of unity of order at most `bound`, ordered by order.
pub fn roots_up_to(bound: u64) -> Vec<RootOfUnity> {
    (1..=bound).flat_map(RootOfUnity::all_of_order).collect()
}

/// Roots whose order lies in `orders`.
pub fn roots_of_orders(orders: &[u64]) -> Vec<RootOfUnity> {
    orders.iter().flat_map(|&m| RootOfUnity::all_of_order(m)).collect()
}

fn pairs<T: Copy>(xs: &[T]) -> Vec<(T, T)> {
    xs.iter().flat_map(|&a| xs.iter().map(move |&b| (a, b))).collect()
}

fn generators_of(roots: &[RootOfUnity]) -> Vec<Generator> {
    roots.iter().flat_map(|z| Generator::of_component(*z)).collect()
}

fn table_element(g: &Generator, h: &Generator) -> GradedElement {
    match generator_product(g, h) {
        Some((k, c)) => GradedElement::from_terms(CoeffDomain::Integers, [(k, c)]),
        None => GradedElement::zero(CoeffDomain::Integers),
    }
}

/// Tensor rule against the brute-force character oracle on all `V_zeta (x) V_zeta'`.
pub fn oracle_check(roots: &[RootOfUnity], preferred_level: u64) -> Result<CheckResult> {
    let cases = pairs(roots);
    sweep(Suite::Oracle, "tensor_rule_vs_bruteforce", &cases, |(z, w)| {
        let (a, b) = (IrrTriple::v(*z), IrrTriple::v(*w));
        let n = oracle_level(&a, &b, preferred_level);
        let brute = decompose_tensor_bruteforce(&a, &b, n)?;
        let rule = tensor_irr(&a, &b);
        Ok((brute != rule).then(|| format!("{a} (x) {b} at N={n}: oracle {brute}, rule {rule}")))
    })
}

fn oracle_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let roots = roots_up_to(opts.max_order);
    let mut out = vec![oracle_check(&roots, opts.oracle_level)?];

    // one-dimensional translates are compared against the oracle too
    let unit_roots = roots_up_to(opts.max_order.min(2));
    let translated: Vec<(IrrTriple, IrrTriple)> = roots
        .iter()
        .flat_map(|z| {
            let u = unit_roots.clone();
            u.into_iter()
                .map(move |al| (IrrTriple::new(al, RootOfUnity::ONE, *z), IrrTriple::character(al, al)))
        })
        .collect();
    out.push(sweep(Suite::Oracle, "translated_tensor_vs_bruteforce", &translated, |(a, b)| {
        let n = oracle_level(a, b, opts.oracle_level);
        let brute = decompose_tensor_bruteforce(a, b, n)?;
        let rule = tensor_irr(a, b);
        Ok((brute != rule).then(|| format!("{a} (x) {b}: oracle {brute}, rule {rule}")))
    })?);

    let dim_roots = roots_up_to(opts.dim_max_order);
    let dim_cases = pairs(&dim_roots);
    out.push(sweep(Suite::Oracle, "dimension_multiplicative", &dim_cases, |(z, w)| {
        let (a, b) = (IrrTriple::v(*z), IrrTriple::v(*w));
        let s = tensor_irr(&a, &b);
        Ok((s.total_dim() != a.dim() * b.dim()).then(|| format!("dim({a} (x) {b}) = {}", s.total_dim())))
    })?);

    let level_roots = RootOfUnity::all_dividing(opts.canonical_level);
    let zetas: Vec<RootOfUnity> = level_roots.clone();
    out.push(sweep(Suite::Oracle, "canonical_form_idempotent", &zetas, |z| {
        for al in &level_roots {
            for be in &level_roots {
                let t = IrrTriple::new(*al, *be, *z);
                let c = t.canonical_form();
                let cc = c.canonical_form();
                if (cc.alpha, cc.beta, cc.zeta) != (c.alpha, c.beta, c.zeta) || c.key() != t.key() {
                    return Ok(Some(format!("{t} -> {c} -> {}", c.canonical_form())));
                }
            }
        }
        Ok(None)
    })?);
    Ok(out)
}

/// Table coefficients against the transfer oracle, including the zero products.
pub fn products_check(roots: &[RootOfUnity]) -> Result<CheckResult> {
    let gens = generators_of(roots);
    let cases: Vec<(Generator, Generator)> =
        pairs(&gens).into_iter().filter(|(g, h)| g.degree() + h.degree() <= 2).collect();
    sweep(Suite::Products, "table_vs_transfer", &cases, |(g, h)| {
        let oracle = transfer_product(g, h)?;
        let table = table_element(g, h);
        Ok((oracle != table).then(|| format!("{g} * {h}: transfer {oracle}, table {table}")))
    })
}

/// `b b = c c = 0` certified by the transfer oracle.
pub fn zero_products_check(roots: &[RootOfUnity]) -> Result<CheckResult> {
    let cases: Vec<(Generator, Generator)> = pairs(roots)
        .into_iter()
        .flat_map(|(z, w)| [(Generator::b(z), Generator::b(w)), (Generator::c(z), Generator::c(w))])
        .collect();
    sweep(Suite::Products, "derived_zero_products", &cases, |(g, h)| {
        let oracle = transfer_product(g, h)?;
        Ok((!oracle.is_zero() || generator_product(g, h).is_some()).then(|| format!("{g} * {h} = {oracle}")))
    })
}

fn products_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let roots = roots_up_to(opts.max_order);
    let gens = generators_of(&roots);
    let mut out = vec![products_check(&roots)?, zero_products_check(&roots)?];
    out.extend(structural_checks(&gens)?);
    out.push(kunneth_check());
    Ok(out)
}

/// Associativity, graded commutativity and the augmentation homomorphism on
/// all generators in `gens`.
pub fn structural_checks(gens: &[Generator]) -> Result<Vec<CheckResult>> {
    let dom = CoeffDomain::Integers;
    let elem = |g: &Generator| GradedElement::generator(*g, dom);
    let assoc = sweep(Suite::Products, "graded_associativity", gens, |g| {
        for h in gens {
            let gh = table_element(g, h);
            for k in gens {
                let lhs = gh.mul(&elem(k))?;
                let rhs = elem(g).mul(&table_element(h, k))?;
                if lhs != rhs {
                    return Ok(Some(format!("({g} {h}) {k} = {lhs}, {g} ({h} {k}) = {rhs}")));
                }
            }
        }
        Ok(None)
    })?;
    let cases = pairs(gens);
    let comm = sweep(Suite::Products, "graded_commutativity", &cases, |(g, h)| {
        let gh = table_element(g, h);
        let mut hg = table_element(h, g);
        if (g.degree() * h.degree()) % 2 == 1 {
            hg = hg.neg();
        }
        Ok((gh != hg).then(|| format!("{g} {h} = {gh}, sign * {h} {g} = {hg}")))
    })?;
    let aug = sweep(Suite::Products, "augmentation_homomorphism", &cases, |(g, h)| {
        let (x, y) = (elem(g), elem(h));
        let lhs = augment(&x.mul(&y)?, None);
        let rhs = augment(&x, None) * augment(&y, None);
        let ok = lhs == rhs
            && [2u64, 3].iter().all(|&l| {
                augment(&x.mul(&y).expect("integers"), Some(l))
                    == (augment(&x, Some(l)) * augment(&y, Some(l))) % BigInt::from(l)
            });
        Ok((!ok).then(|| format!("eps({g} {h}) = {lhs} != {rhs}")))
    })?;
    let kinds_ok = gens.iter().all(|g| g.degree() == g.kind.degree())
        && Kind::ALL.iter().map(|k| k.degree()).eq([0, 1, 1, 2]);
    Ok(vec![
        assoc,
        comm,
        aug,
        single(Suite::Products, "generator_degrees", kinds_ok, || "degree mismatch".into()),
    ])
}

/// `H_*(T^2) = H_*(S^1) (x) H_*(S^1)` has ranks `(1, 2, 1)` and is a graded ring.
pub fn kunneth_check() -> CheckResult {
    let t = kunneth_tensor(&RingDescription::circle_homology(), &RingDescription::circle_homology());
    let ranks = t.ranks_by_degree();
    let ok = ranks == [1, 2, 1] && t.check_associative().is_ok() && t.check_graded_commutative().is_ok();
    single(Suite::Products, "kunneth_ranks", ok, || format!("ranks {ranks:?}"))
}

/// `tor_cyclic(m, Z, Z) = (Z, Z/m, 0, Z/m, ...)` for all `m <= max_m`.
pub fn tor_closed_form_check(max_m: u64, maxdeg: usize) -> Result<CheckResult> {
    let ms: Vec<u64> = (1..=max_m).collect();
    sweep(Suite::Tor, "tor_closed_form", &ms, |&m| {
        let module = CyclicModuleComplex::concentrated(crate::homalg::CyclicModule::trivial(m)?);
        let tor = tor_cyclic(m, Coefficients::Integers, &module, maxdeg)?;
        let expected: Vec<AbelianGroup> = (0..=maxdeg)
            .map(|n| match n {
                0 => AbelianGroup::free(1),
                n if n % 2 == 1 => AbelianGroup::cyclic(m),
                _ => AbelianGroup::trivial(),
            })
            .collect();
        Ok((tor.degrees() != expected.as_slice()).then(|| format!("m={m}: {tor}")))
    })
}

/// Bar-complex dimensions for semisimple group algebras and the `F_2[C_2]` control.
pub fn bar_checks() -> Result<Vec<CheckResult>> {
    let f2c3 = bar_tor(&FiniteAlgebra::group_algebra(2, 3)?, 4)?;
    let f3c4 = bar_tor(&FiniteAlgebra::group_algebra(3, 4)?, 3)?;
    let f2c2 = bar_tor(&FiniteAlgebra::group_algebra(2, 2)?, 4)?;
    let module = CyclicModuleComplex::concentrated(crate::homalg::CyclicModule::trivial(2)?);
    let periodic = tor_cyclic(2, Coefficients::Field(2), &module, 4)?.summand_counts();
    Ok(vec![
        single(Suite::Tor, "bar_semisimple_f2_c3", f2c3 == [1, 0, 0, 0, 0], || format!("{f2c3:?}")),
        single(Suite::Tor, "bar_semisimple_f3_c4", f3c4 == [1, 0, 0, 0], || format!("{f3c4:?}")),
        single(
            Suite::Tor,
            "bar_control_f2_c2",
            f2c2 == [1, 1, 1, 1, 1] && periodic == f2c2,
            || format!("bar {f2c2:?}, periodic {periodic:?}"),
        ),
    ])
}

/// Chains of `l`-power transition degrees kill degree 1; coprime ones keep it.
pub fn circle_colimit_checks() -> Result<Vec<CheckResult>> {
    let powers = circle_colimit(2, &CircleChain::from_levels(&[1, 2, 4, 8])?)?;
    let coprime_chains: Vec<(u64, Vec<u64>)> = vec![
        (2, vec![1, 3, 9, 45]),
        (2, vec![1, 5, 15]),
        (3, vec![1, 2, 4, 20]),
        (5, vec![1, 7, 14, 42]),
    ];
    let coprime = sweep(Suite::Tor, "circle_colimit_coprime", &coprime_chains, |(ell, levels)| {
        let c = circle_colimit(*ell, &CircleChain::from_levels(levels)?)?;
        Ok((c.dims != [1, 1]).then(|| format!("l={ell} chain {levels:?}: {:?}", c.dims)))
    })?;
    Ok(vec![
        single(Suite::Tor, "circle_colimit_two_power", powers.dims == [1, 0], || {
            format!("{:?}", powers.dims)
        }),
        coprime,
    ])
}

fn tor_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = vec![tor_closed_form_check(opts.tor_max_m, opts.tor_maxdeg)?];
    out.extend(bar_checks()?);
    out.extend(circle_colimit_checks()?);
    Ok(out)
}

pub fn tower_check(ell: u64, k: u32, n_max: u32) -> Result<CheckResult> {
    let report = mod_ln_tower(CompletionParams::new(ell, n_max, k)?)?.verify()?;
    let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.witness)).collect();
    Ok(single(
        Suite::Completion,
        &format!("tower_l{ell}_k{k}_n{n_max}"),
        failed.is_empty(),
        || failed.join("; "),
    ))
}

pub fn idempotent_check(orders: &[u64], ell: u64, n_max: u32) -> Result<CheckResult> {
    let cases: Vec<(u64, u32)> = orders.iter().flat_map(|&o| (1..=n_max).map(move |n| (o, n))).collect();
    sweep(Suite::Completion, &format!("idempotents_l{ell}"), &cases, |&(order, n)| {
        let zeta = RootOfUnity::primitive(order);
        let c = verify_idempotent(&zeta, ell, n)?;
        Ok((!c.idempotent || !c.kernel_identity).then(|| format!("order {order}, n={n}: e = {}", c.e)))
    })
}

pub fn split_check(ell: u64, bounds: &[u64], n: u32) -> Result<CheckResult> {
    sweep(Suite::Completion, &format!("split_l{ell}"), bounds, |&m| {
        let r = split_report(ell, n, m)?;
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Ok((!failed.is_empty()).then(|| format!("bound {m}: {}", failed.join(", "))))
    })
}

fn completion_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (ell, k) in [(2u64, opts.order_exponent), (3, opts.order_exponent.min(2))] {
        out.push(tower_check(ell, k, opts.precision)?);
    }
    out.push(idempotent_check(&[3, 5, 7, 9], 2, 2 * opts.precision)?);
    out.push(idempotent_check(&[2, 4, 5], 3, opts.precision)?);
    out.push(split_check(2, &[1, 2, 3, 6, 12, 15], opts.precision)?);
    out.push(split_check(3, &[2, 6, 12], opts.precision.min(3))?);
    for ell in [2u64, 3] {
        let r = i_squared_check(ell, opts.order_exponent + 1)?;
        let bad = r.rows.iter().find(|x| !x.divisible).map(|x| format!("{} {} -> {}", x.zeta, x.zeta2, x.coefficient));
        out.push(CheckResult {
            suite: Suite::Completion,
            name: format!("i_squared_l{ell}"),
            cases: r.rows.len(),
            passed: r.passed,
            witness: bad,
        });
    }
    for p in [2u64, 3] {
        let r = circle_completion_report(p, 3, 4)?;
        let ok = r.groups.len() == 3
            && r.lim.lim == AbelianGroup::cyclic(p.pow(3))
            && r.lines.iter().any(|l| l == CIRCLE_DEGREE1_CAVEAT);
        out.push(single(Suite::Completion, &format!("circle_degree0_p{p}"), ok, || {
            format!("lim {}", r.lim.lim)
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes() {
        let s = run_suite(Suite::All, &VerifyOptions::profile(Profile::Quick)).unwrap();
        let failed: Vec<_> = s.failures().map(|c| (&c.name, &c.witness)).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(s.to_csv().starts_with("suite,check,cases,status,witness\n"));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Products, Suite::Oracle, Suite::Tor, Suite::Completion, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
        assert!("desk".parse::<Profile>().is_ok());
    }

    #[test]
    fn roots_enumeration() {
        assert_eq!(roots_up_to(4).len(), 1 + 1 + 2 + 2);
        assert_eq!(roots_of_orders(&[1, 2, 3, 4, 6]).len(), 8);
    }
}
