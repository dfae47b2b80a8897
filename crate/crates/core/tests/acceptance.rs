//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p repring-core --test acceptance -- --nocapture` to
//! see the report.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use repring_core::completion::{
    circle_completion_report, i_squared_check, mod_ln_tower, split_report, verify_idempotent, CompletionParams,
    CIRCLE_DEGREE1_CAVEAT,
};
use repring_core::cyclo::RootOfUnity;
use repring_core::heisenberg::{decompose_tensor_bruteforce, oracle_level, tensor_irr, IrrTriple};
use repring_core::homalg::{
    bar_method, bar_tor, circle_colimit, ideal_power_quotient_literal, tor_cyclic, AbelianGroup, CircleChain, Coefficients,
    CyclicModule, CyclicModuleComplex, FiniteAlgebra, TorMethod,
};
use repring_core::repring::{transfer_coefficient_oracle, transfer_product, Generator, Kind};
use repring_core::verify::{kunneth_check, roots_of_orders, roots_up_to, structural_checks, zero_products_check};

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let roots = roots_of_orders(&[1, 2, 3, 4, 6]);
    let mut cases = 0;
    let mut levels = std::collections::BTreeSet::new();
    for z in &roots {
        for w in &roots {
            let (a, b) = (IrrTriple::v(*z), IrrTriple::v(*w));
            let n = oracle_level(&a, &b, 6);
            levels.insert(n);
            let brute = match decompose_tensor_bruteforce(&a, &b, n) {
                Ok(x) => x,
                Err(e) => return fail(format!("{a} (x) {b}: {e}")),
            };
            let rule = tensor_irr(&a, &b);
            if brute != rule {
                return fail(format!("{a} (x) {b} at N={n}: oracle {brute}, rule {rule}"));
            }
            cases += 1;
        }
    }
    pass(format!("{cases} pairs, levels N in {levels:?}"))
}

/// The printed coefficients, written out independently of the library table.
fn printed_coefficient(g: &Generator, h: &Generator) -> Option<(Kind, i64)> {
    let (r, s) = (g.zeta.order() as i64, h.zeta.order() as i64);
    let t = g.zeta.mul(&h.zeta).order() as i64;
    match (g.kind, h.kind) {
        (Kind::A, Kind::A) => Some((Kind::A, r * s / t)),
        (Kind::A, Kind::B) => Some((Kind::B, r)),
        (Kind::A, Kind::C) => Some((Kind::C, r)),
        (Kind::B, Kind::A) => Some((Kind::B, s)),
        (Kind::C, Kind::A) => Some((Kind::C, s)),
        (Kind::A, Kind::D) => Some((Kind::D, r * t / s)),
        (Kind::D, Kind::A) => Some((Kind::D, s * t / r)),
        (Kind::B, Kind::C) => Some((Kind::D, t)),
        (Kind::C, Kind::B) => Some((Kind::D, -t)),
        _ => None,
    }
}

fn criterion_2() -> Outcome {
    let roots = roots_up_to(8);
    let gens: Vec<Generator> = roots.iter().flat_map(|z| Generator::of_component(*z)).collect();
    let mut cases = 0;
    for g in &gens {
        for h in &gens {
            if g.degree() + h.degree() > 2 {
                continue;
            }
            let Some((kind, coeff)) = printed_coefficient(g, h) else { continue };
            let target = Generator::new(kind, g.zeta.mul(&h.zeta));
            let oracle = match transfer_coefficient_oracle(g, h) {
                Ok(c) => c,
                Err(e) => return fail(format!("{g} * {h}: {e}")),
            };
            let full = transfer_product(g, h).expect("supported pair");
            if oracle != BigInt::from(coeff) || full.coefficient(&target) != BigInt::from(coeff) || full.len() != 1 {
                return fail(format!("{g} * {h}: transfer {full}, printed {coeff} {target}"));
            }
            cases += 1;
        }
    }
    let zeros = zero_products_check(&roots).expect("zero products");
    if !zeros.passed {
        return fail(format!("zero products: {:?}", zeros.witness));
    }
    pass(format!("{cases} printed coefficients, {} zero products b*b, c*c", zeros.cases))
}

fn criterion_3() -> Outcome {
    let tower = mod_ln_tower(CompletionParams::new(2, 4, 3).expect("params")).expect("tower");
    let report = tower.verify().expect("verify");
    let ranks = tower.module.ranks_by_degree();
    if ranks != [8, 16, 8, 0] {
        return fail(format!("ranks {ranks:?}"));
    }
    let top = tower.module.level(4).expect("level 4").structure();
    if top != AbelianGroup::from_orders(&vec![BigInt::from(16); 32]) {
        return fail(format!("level 4 is {top}"));
    }
    match report.checks.iter().find(|c| !c.passed) {
        Some(c) => fail(format!("{}: {}", c.name, c.witness)),
        None => pass(format!("ranks {ranks:?} over Z/16, {} checks", report.checks.len())),
    }
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for p in [2u64, 3] {
        let r = match circle_completion_report(p, 3, 4) {
            Ok(r) => r,
            Err(e) => return fail(format!("p={p}: {e}")),
        };
        for s in 1..=3u32 {
            let expected = AbelianGroup::cyclic(p.pow(s));
            if r.groups.get(&s) != Some(&expected) {
                return fail(format!("p={p} s={s}: {:?}", r.groups.get(&s)));
            }
        }
        // Z[C_p]/(p, t - 1) = F_p from the literal presentation
        if ideal_power_quotient_literal(p, 1, 1) != Ok(AbelianGroup::cyclic(p)) {
            return fail(format!("literal quotient at p={p}, k=1, s=1"));
        }
        if r.lim.lim != AbelianGroup::cyclic(p.pow(3)) || !r.lim.lim1.is_trivial() {
            return fail(format!("p={p}: lim {} lim1 {}", r.lim.lim, r.lim.lim1));
        }
        if r.lines.first().map(String::as_str) != Some(format!("degree 0: Z_{p} to precision 3").as_str())
            || !r.lines.iter().any(|l| l == CIRCLE_DEGREE1_CAVEAT)
        {
            return fail(format!("p={p}: lines {:?}", r.lines));
        }
        notes.push(format!("p={p}: lim {}", r.lim.lim));
    }
    pass(format!("{}; caveat present", notes.join(", ")))
}

fn criterion_5() -> Outcome {
    for m in 1..=12u64 {
        let module = CyclicModuleComplex::concentrated(CyclicModule::trivial(m).expect("module"));
        let tor = tor_cyclic(m, Coefficients::Integers, &module, 5).expect("tor");
        let expected = [
            AbelianGroup::free(1),
            AbelianGroup::cyclic(m),
            AbelianGroup::trivial(),
            AbelianGroup::cyclic(m),
            AbelianGroup::trivial(),
            AbelianGroup::cyclic(m),
        ];
        if tor.degrees() != expected {
            return fail(format!("m={m}: {tor}"));
        }
    }
    pass("m = 1..12, degrees 0..5")
}

fn criterion_6() -> Outcome {
    let f2c3 = bar_tor(&FiniteAlgebra::group_algebra(2, 3).expect("alg"), 4).expect("bar");
    let f3c4 = bar_tor(&FiniteAlgebra::group_algebra(3, 4).expect("alg"), 3).expect("bar");
    let f2c2 = bar_tor(&FiniteAlgebra::group_algebra(2, 2).expect("alg"), 4).expect("bar");
    let module = CyclicModuleComplex::concentrated(CyclicModule::trivial(2).expect("module"));
    let periodic = tor_cyclic(2, Coefficients::Field(2), &module, 4).expect("tor").summand_counts();
    let direct = [(2u64, 3usize, 4usize), (3, 4, 3), (2, 2, 4)]
        .iter()
        .all(|&(l, m, d)| bar_method(&FiniteAlgebra::group_algebra(l, m).expect("alg"), d) == TorMethod::BarComplex);
    let ok = direct
        && f2c3 == [1, 0, 0, 0, 0] && f3c4 == [1, 0, 0, 0] && f2c2 == [1, 1, 1, 1, 1] && periodic == f2c2;
    let detail = format!("F2[C3] {f2c3:?}, F3[C4] {f3c4:?}, F2[C2] {f2c2:?}, periodic mod 2 {periodic:?}");
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_7() -> Outcome {
    let two = circle_colimit(2, &CircleChain::from_levels(&[1, 2, 4, 8]).expect("chain")).expect("colimit");
    if two.dims != [1, 0] {
        return fail(format!("1|2|4|8: {:?}", two.dims));
    }
    for (ell, levels) in [(2u64, vec![1u64, 3, 9, 45]), (2, vec![1, 5, 15, 105]), (3, vec![1, 2, 10]), (5, vec![1, 3, 6])] {
        let c = circle_colimit(ell, &CircleChain::from_levels(&levels).expect("chain")).expect("colimit");
        if c.dims != [1, 1] {
            return fail(format!("l={ell} {levels:?}: {:?}", c.dims));
        }
    }
    pass("1|2|4|8 -> (1, 0); four coprime chains -> (1, 1)")
}

fn criterion_8() -> Outcome {
    let mut cases = 0;
    for order in [3u64, 5, 7, 9] {
        for n in 1..=8 {
            let c = verify_idempotent(&RootOfUnity::primitive(order), 2, n).expect("idempotent");
            if !c.idempotent || !c.kernel_identity {
                return fail(format!("order {order}, n={n}: e = {}", c.e));
            }
            cases += 1;
        }
    }
    for bound in [3u64, 6, 12, 9, 24] {
        let r = split_report(2, 4, bound).expect("split");
        if !r.passed() || r.quotient.num_summands() != r.typical.num_summands() {
            return fail(format!("bound {bound}: {:?}", r.checks));
        }
    }
    pass(format!("{cases} idempotents; splitting agrees for bounds 3, 6, 9, 12, 24"))
}

fn criterion_9() -> Outcome {
    let mut rows = 0;
    for ell in [2u64, 3] {
        let r = i_squared_check(ell, 4).expect("i squared");
        if !r.passed {
            let bad = r.rows.iter().find(|x| !x.divisible).expect("a failing row");
            return fail(format!("l={ell}: {} {} -> {}", bad.zeta, bad.zeta2, bad.coefficient));
        }
        rows += r.rows.len();
    }
    pass(format!("{rows} pairs for l = 2, 3 up to order l^4"))
}

fn criterion_10() -> Outcome {
    let gens: Vec<Generator> = roots_up_to(8).iter().flat_map(|z| Generator::of_component(*z)).collect();
    for c in structural_checks(&gens).expect("structural") {
        if !c.passed {
            return fail(format!("{}: {:?}", c.name, c.witness));
        }
    }
    let dim_roots = roots_up_to(12);
    for z in &dim_roots {
        for w in &dim_roots {
            let (a, b) = (IrrTriple::v(*z), IrrTriple::v(*w));
            if tensor_irr(&a, &b).total_dim() != a.dim() * b.dim() {
                return fail(format!("dimension of {a} (x) {b}"));
            }
        }
    }
    let level = RootOfUnity::all_dividing(24);
    for al in &level {
        for be in &level {
            for z in &level {
                let c = IrrTriple::new(*al, *be, *z).canonical_form();
                let cc = c.canonical_form();
                if (cc.alpha, cc.beta, cc.zeta) != (c.alpha, c.beta, c.zeta) {
                    return fail(format!("canonical form of {c} moves to {cc}"));
                }
            }
        }
    }
    let k = kunneth_check();
    if !k.passed {
        return fail(format!("kunneth: {:?}", k.witness));
    }
    pass("associativity, commutativity, augmentation, dimensions, canonical forms, Kunneth (1, 2, 1)")
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("tensor rule vs brute-force oracle", criterion_1, Duration::from_secs(120)),
        ("product table vs transfer oracle", criterion_2, Duration::from_secs(60)),
        ("completion tower ranks (8, 16, 8, 0)", criterion_3, Duration::from_secs(1)),
        ("circle degree 0 and caveat", criterion_4, Duration::from_secs(30)),
        ("cyclic Tor closed form", criterion_5, Duration::from_secs(10)),
        ("semisimple bar Tor vanishing", criterion_6, Duration::from_secs(60)),
        ("circle colimits along chains", criterion_7, Duration::from_secs(1)),
        ("idempotents and splitting", criterion_8, Duration::from_secs(5)),
        ("I^2 divisible by l", criterion_9, Duration::from_secs(1)),
        ("structural properties", criterion_10, Duration::from_secs(60)),
    ];
    let mut failures = Vec::new();
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {:>2}: {name} [{:.3}s, budget {}s] {}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
        if !outcome.passed {
            failures.push(i + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
