//! Finite models for the circle: the colimit of `F_l (x)_{Z[C_m]} [R --(t-1)--> R]`
//! along `m | dm`, and quotients `Z[C_{p^k}] / I^s` with `I = (p, t - 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::{quotient_group, IntMatrix, PresentedGroup};
use super::AbelianGroup;
use crate::cyclo;
use crate::error::{Error, Result};

/// Stage of the ideal-power model whose group ring exceeds this rank is
/// refused by the literal presentation.
pub const LITERAL_MAX_RANK: u64 = 256;

/// Attached to every ideal-power output.
pub const IDEAL_MODEL_NOTE: &str = "algebraic ideal-power model Z[C_p^k]/(p, t-1)^s; a stand-in for the spectrum-level tower, which it reproduces in degree 0 only";

/// A divisibility chain `m_0 | m_1 | ...` with transition degrees `d_i = m_{i+1} / m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleChain {
    stages: Vec<(u64, u64)>,
}

impl CircleChain {
    /// Pairs `(m_i, d_i)` with `m_{i+1} = d_i m_i`; the last `d` leads out of the window.
    pub fn new(stages: Vec<(u64, u64)>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidParameter("chain must be nonempty".into()));
        }
        if stages.iter().any(|&(m, d)| m == 0 || d == 0) {
            return Err(Error::InvalidParameter("chain entries must be positive".into()));
        }
        for w in stages.windows(2) {
            if w[0].0 * w[0].1 != w[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "chain is not divisible: {} * {} != {}",
                    w[0].0, w[0].1, w[1].0
                )));
            }
        }
        Ok(Self { stages })
    }

    /// Levels `m_0 | m_1 | ... | m_r`; the final stage has no outgoing transition.
    pub fn from_levels(levels: &[u64]) -> Result<Self> {
        let mut stages = Vec::with_capacity(levels.len());
        for (i, &m) in levels.iter().enumerate() {
            let d = match levels.get(i + 1) {
                Some(&next) if m != 0 && next % m == 0 => next / m,
                Some(&next) => {
                    return Err(Error::InvalidParameter(format!("chain is not divisible: {m} does not divide {next}")))
                }
                None => 1,
            };
            stages.push((m, d));
        }
        Self::new(stages)
    }

    pub fn stages(&self) -> &[(u64, u64)] {
        &self.stages
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleColimit {
    pub ell: u64,
    pub chain: CircleChain,
    /// `F_l`-dimension per stage in degrees 0 and 1.
    pub stage_dims: Vec<[usize; 2]>,
    /// Degree-1 transition scalars `d_i mod l`.
    pub degree1_maps: Vec<u64>,
    /// Dimensions of the image of the first stage at the end of the window.
    pub dims: [usize; 2],
}

/// `Z[C_m]` as `Z^m`; multiplication by `t` shifts the basis.
fn group_ring_mul(m: u64, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let m = m as usize;
    let mut out = vec![BigInt::zero(); m];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[(i + j) % m] += x * y;
        }
    }
    out
}

fn mul_matrix(m: u64, r: &[BigInt]) -> IntMatrix {
    let n = m as usize;
    let cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            group_ring_mul(m, r, &e)
        })
        .collect();
    IntMatrix::from_columns(n, &cols)
}

fn t_minus_one(m: u64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m as usize];
    v[0] -= 1;
    v[1 % m as usize] += 1;
    v
}

/// Chain map from `[R_m --(t-1)--> R_m]` to `[R_dm --(u-1)--> R_dm]`: `t -> u^d`
/// in degree 0, and `t -> u^d` followed by `sum_{i<d} u^i` in degree 1.
/// Returns both matrices after checking the chain-map identity.
fn transition(m: u64, d: u64) -> Result<(IntMatrix, IntMatrix)> {
    let big = m * d;
    let mut iota = IntMatrix::zeros(big as usize, m as usize);
    for j in 0..m {
        iota[((d * j) as usize, j as usize)] = BigInt::one();
    }
    let mut sum = vec![BigInt::zero(); big as usize];
    for i in 0..d {
        sum[i as usize] = BigInt::one();
    }
    let f1 = mul_matrix(big, &sum).mul(&iota);
    let lhs = mul_matrix(big, &t_minus_one(big)).mul(&f1);
    let rhs = iota.mul(&mul_matrix(m, &t_minus_one(m)));
    if lhs != rhs {
        return Err(Error::Invariant(format!("transition {m} -> {big} is not a chain map")));
    }
    Ok((iota, f1))
}

/// Augmentation `t -> 1` reduced mod `ell` of the image of `1`.
fn augmented_scalar(f: &IntMatrix, ell: u64) -> u64 {
    let s: BigInt = f.column(0).iter().sum();
    s.mod_floor(&BigInt::from(ell)).to_u64().expect("reduced")
}

/// The colimit along a divisibility chain of `F_l (x)_{Z[C_m]} [Z[C_m] --(t-1)--> Z[C_m]]`.
///
/// Each stage is `F_l` in degrees 0 and 1 with zero differential. Transitions
/// are built at the chain level and tensored down; over a finite window the
/// reported dimensions are those of the image of the first stage in the last.
pub fn circle_colimit(ell: u64, chain: &CircleChain) -> Result<CircleColimit> {
    if !cyclo::is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let mut stage_dims = Vec::new();
    let mut degree1_maps = Vec::new();
    let mut composite = [1u64, 1u64];
    for &(m, d) in &chain.stages {
        // differential t - 1 augments to 0
        let dt = augmented_scalar(&mul_matrix(m, &t_minus_one(m)), ell);
        stage_dims.push(if dt == 0 { [1, 1] } else { [0, 0] });
        let (f0, f1) = transition(m, d)?;
        let (s0, s1) = (augmented_scalar(&f0, ell), augmented_scalar(&f1, ell));
        if s0 != 1 {
            return Err(Error::Invariant("degree-0 transition is not the identity".into()));
        }
        degree1_maps.push(s1);
        composite = [composite[0] * s0 % ell, composite[1] * s1 % ell];
    }
    Ok(CircleColimit {
        ell,
        chain: chain.clone(),
        stage_dims,
        degree1_maps,
        dims: [usize::from(composite[0] != 0), usize::from(composite[1] != 0)],
    })
}

fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Polynomial product truncated below degree `len`.
fn poly_mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Z[C_{p^k}] / I^s` as `Z^{p^k}` modulo the products `t^j p^a (t-1)^b`, `a + b = s`.
pub fn ideal_power_quotient_literal(p: u64, k: u32, s: u32) -> Result<AbelianGroup> {
    check_ideal_params(p, k, s)?;
    let n = p
        .checked_pow(k)
        .filter(|&n| n <= LITERAL_MAX_RANK)
        .ok_or_else(|| Error::ResourceGuard(format!("literal presentation needs rank p^k <= {LITERAL_MAX_RANK}")))?;
    let m = n as usize;
    let x = t_minus_one(n);
    let mut relations = Vec::new();
    for b in 0..=s {
        let mut g = vec![BigInt::zero(); m];
        g[0] = BigInt::from(p).pow(s - b);
        for _ in 0..b {
            g = group_ring_mul(n, &g, &x);
        }
        for j in 0..m {
            let mut shift = vec![BigInt::zero(); m];
            shift[j] = BigInt::one();
            relations.push(group_ring_mul(n, &g, &shift));
        }
    }
    Ok(quotient_group(&IntMatrix::identity(m), &IntMatrix::from_columns(m, &relations)))
}

fn check_ideal_params(p: u64, k: u32, s: u32) -> Result<()> {
    if !cyclo::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || s == 0 {
        return Err(Error::InvalidParameter("k and s must be >= 1".into()));
    }
    Ok(())
}

/// `Z[x] / ((1+x)^{p^k} - 1, (p, x)^s)` on the basis `1, x, ..., x^{s-1}`,
/// equal to `Z[C_{p^k}] / I^s` with `x = t - 1`.
#[derive(Clone, Debug)]
pub struct TruncatedIdealQuotient {
    pub p: u64,
    pub k: u32,
    pub s: u32,
    group: PresentedGroup,
}

impl TruncatedIdealQuotient {
    pub fn new(p: u64, k: u32, s: u32) -> Result<Self> {
        check_ideal_params(p, k, s)?;
        let len = s as usize;
        let modulus = BigInt::from(p).pow(s);
        let mut relations: Vec<Vec<BigInt>> = (0..len)
            .map(|b| {
                let mut v = vec![BigInt::zero(); len];
                v[b] = BigInt::from(p).pow(s - b as u32);
                v
            })
            .collect();
        let pk = BigInt::from(p).pow(k);
        let f: Vec<BigInt> = (0..len)
            .map(|j| if j == 0 { BigInt::zero() } else { binomial(&pk, j).mod_floor(&modulus) })
            .collect();
        for i in 0..len {
            let mut xi = vec![BigInt::zero(); len];
            xi[i] = BigInt::one();
            relations.push(poly_mul_trunc(&xi, &f, len));
        }
        let rel = IntMatrix::from_columns(len, &relations);
        Ok(Self {
            p,
            k,
            s,
            group: PresentedGroup::new(len, rel),
        })
    }

    pub fn structure(&self) -> AbelianGroup {
        self.group.structure()
    }

    /// Matrix of `x -> (1+y)^p - 1`, the map induced by `t -> u^p`, modulo `p^s`.
    pub fn transition_matrix(p: u64, s: u32) -> IntMatrix {
        let len = s as usize;
        let modulus = BigInt::from(p).pow(s);
        let phi: Vec<BigInt> = (0..len)
            .map(|j| if j == 0 { BigInt::zero() } else { binomial(&BigInt::from(p), j) })
            .collect();
        let mut cols = Vec::with_capacity(len);
        let mut power = vec![BigInt::zero(); len];
        power[0] = BigInt::one();
        for _ in 0..len {
            cols.push(power.iter().map(|c| c.mod_floor(&modulus)).collect());
            power = poly_mul_trunc(&power, &phi, len);
        }
        IntMatrix::from_columns(len, &cols)
    }

    /// Order of the class of `1`.
    pub fn order_of_one(&self) -> BigInt {
        let len = self.s as usize;
        let mut e = vec![BigInt::zero(); len];
        e[0] = BigInt::one();
        let f = IntMatrix::from_columns(len, &[e]);
        PresentedGroup::free(1)
            .image(&f, &self.group)
            .order()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Stabilization window and level budget for colimits over `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColimitOptions {
    /// Consecutive equal answers required.
    pub window: u32,
    /// Levels beyond the starting `k` that may be examined.
    pub max_levels: u32,
}

impl Default for ColimitOptions {
    fn default() -> Self {
        Self {
            window: 4,
            max_levels: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableColimit {
    pub group: AbelianGroup,
    /// First level `j` whose stable image already has the final structure.
    pub stable_from: u32,
    /// Highest level examined.
    pub levels_examined: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPowerReport {
    pub p: u64,
    pub k: u32,
    pub s: u32,
    pub group: AbelianGroup,
    pub colimit: Option<StableColimit>,
    pub note: &'static str,
}

/// Image of `G_j` in `G_{j+h}`.
fn image_between(p: u64, s: u32, j: u32, h: u32) -> Result<AbelianGroup> {
    let source = TruncatedIdealQuotient::new(p, j, s)?;
    let target = TruncatedIdealQuotient::new(p, j + h, s)?;
    let step = TruncatedIdealQuotient::transition_matrix(p, s);
    let modulus = BigInt::from(p).pow(s);
    let mut f = IntMatrix::identity(s as usize);
    for _ in 0..h {
        f = step.mul(&f).reduce_mod(&modulus);
    }
    debug_assert!(source.group.is_hom(&f, &target.group));
    Ok(source.group.image(&f, &target.group))
}

fn stabilize<F: FnMut(u32) -> Result<AbelianGroup>>(
    start: u32,
    limit: u32,
    window: u32,
    levels: u32,
    mut f: F,
) -> Result<(AbelianGroup, u32, u32)> {
    let mut run: Option<(AbelianGroup, u32, u32)> = None;
    for i in start..=limit {
        let g = f(i)?;
        run = match run {
            Some((prev, first, count)) if prev == g => Some((prev, first, count + 1)),
            _ => Some((g, i, 1)),
        };
        if let Some((g, first, count)) = &run {
            if *count >= window {
                return Ok((g.clone(), *first, i));
            }
        }
    }
    Err(Error::NoStabilization { levels, window })
}

/// `Z[C_{p^k}] / I^s` by the literal presentation, and optionally the colimit
/// over `k' >= k` along `t -> u^p`, computed on the truncated model.
pub fn ideal_power_quotient(p: u64, k: u32, s: u32, with_colimit: bool, opts: ColimitOptions) -> Result<IdealPowerReport> {
    let literal = ideal_power_quotient_literal(p, k, s)?;
    let truncated = TruncatedIdealQuotient::new(p, k, s)?.structure();
    if literal != truncated {
        return Err(Error::Invariant(format!(
            "literal quotient {literal} differs from truncated model {truncated}"
        )));
    }
    let colimit = if with_colimit {
        if opts.window == 0 {
            return Err(Error::InvalidParameter("stabilization window must be >= 1".into()));
        }
        let limit = k + opts.max_levels;
        let mut examined = k;
        let (group, stable_from, _) = stabilize(k, limit, opts.window, opts.max_levels, |j| {
            let (g, _, top) = stabilize(1, limit.saturating_sub(j).max(1), opts.window, opts.max_levels, |h| {
                image_between(p, s, j, h)
            })?;
            examined = examined.max(j + top);
            Ok(g)
        })?;
        Some(StableColimit {
            group,
            stable_from,
            levels_examined: examined,
        })
    } else {
        None
    };
    Ok(IdealPowerReport {
        p,
        k,
        s,
        group: literal,
        colimit,
        note: IDEAL_MODEL_NOTE,
    })
}
