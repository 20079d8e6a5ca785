//! Arm reward laws, sampling, and ground-truth oracles.
//!
//! An arm is a weighted mixture of unnormalized kernels on a bounded support:
//! `f(u) ∝ Σ_c w_c · g_c(u)` for `u ∈ [lo, hi]`, where `g_c` is either
//! `exp(-b (u - mean)^2)` or the constant `1`. The normalization constant is
//! computed from closed-form kernel masses.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::{erf, erfc};

use crate::error::{Error, Result};
use crate::estimators::{EstimateMethod, WinProbabilities};
use crate::quadrature;

/// Rejection attempts allowed for a single draw.
pub const MAX_REJECTION_ATTEMPTS: u64 = 1_000_000;

/// Draws used by [`win_probability_oracle`] when `m >= 2`.
pub const ORACLE_MONTE_CARLO_DRAWS: u64 = 10_000_000;

const ORACLE_SEED: u64 = 0x0ac1_e5ee_d000_0001;

/// `exp(-TAIL_EXPONENT)` is far below the resolution of a uniform `f64` draw.
const TAIL_EXPONENT: f64 = 75.0;

/// One mixture component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Component {
    /// `weight · exp(-scale · (u - mean)^2)` restricted to the arm support.
    TruncatedGaussian { weight: f64, mean: f64, scale: f64 },
    /// `weight · 1` over the arm support.
    Uniform { weight: f64 },
}

impl Component {
    pub fn weight(&self) -> f64 {
        match *self {
            Component::TruncatedGaussian { weight, .. } | Component::Uniform { weight } => weight,
        }
    }

    fn kernel(&self, u: f64) -> f64 {
        match *self {
            Component::TruncatedGaussian { mean, scale, .. } => (-scale * (u - mean).powi(2)).exp(),
            Component::Uniform { .. } => 1.0,
        }
    }

    /// `∫_a^b kernel(u) du`.
    fn kernel_mass(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        match *self {
            Component::TruncatedGaussian { mean, scale, .. } => {
                let s = scale.sqrt();
                0.5 * (std::f64::consts::PI / scale).sqrt() * erf_diff(s * (a - mean), s * (b - mean))
            }
            Component::Uniform { .. } => b - a,
        }
    }
}

/// `erf(y) - erf(x)` for `x <= y`, using complementary functions in the tails.
fn erf_diff(x: f64, y: f64) -> f64 {
    if x >= 0.0 {
        erfc(x) - erfc(y)
    } else if y <= 0.0 {
        erfc(-y) - erfc(-x)
    } else {
        erf(y) - erf(x)
    }
}

#[derive(Clone, Debug)]
enum ComponentSampler {
    Uniform,
    /// Normal proposal, rejected outside the support.
    NormalProposal(Normal<f64>),
    /// Uniform envelope over `[lo, hi]` at height `peak`.
    Envelope { lo: f64, hi: f64, peak: f64 },
}

/// Serialized form of an arm: `{"components": [...], "support": [lo, hi]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmSpec {
    pub components: Vec<Component>,
    pub support: [f64; 2],
}

/// A single arm's reward law.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ArmSpec", into = "ArmSpec")]
pub struct ArmDistribution {
    components: Vec<Component>,
    support_lo: f64,
    support_hi: f64,
    /// `Σ_c w_c · mass_c`.
    normalizer: f64,
    /// Cumulative component selection probabilities.
    selection: Vec<f64>,
    samplers: Vec<ComponentSampler>,
}

impl PartialEq for ArmDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
            && self.support_lo == other.support_lo
            && self.support_hi == other.support_hi
    }
}

impl TryFrom<ArmSpec> for ArmDistribution {
    type Error = Error;

    fn try_from(spec: ArmSpec) -> Result<Self> {
        ArmDistribution::new(spec.components, spec.support[0], spec.support[1])
    }
}

impl From<ArmDistribution> for ArmSpec {
    fn from(arm: ArmDistribution) -> Self {
        ArmSpec {
            components: arm.components,
            support: [arm.support_lo, arm.support_hi],
        }
    }
}

impl ArmDistribution {
    pub fn new(components: Vec<Component>, support_lo: f64, support_hi: f64) -> Result<Self> {
        if !(support_lo.is_finite() && support_hi.is_finite() && support_hi > support_lo) {
            return Err(Error::invalid(format!(
                "support must satisfy lo < hi with finite ends, got [{support_lo}, {support_hi}]"
            )));
        }
        if components.is_empty() {
            return Err(Error::invalid("an arm needs at least one component"));
        }
        let mut masses = Vec::with_capacity(components.len());
        let mut samplers = Vec::with_capacity(components.len());
        for (i, c) in components.iter().enumerate() {
            let w = c.weight();
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::invalid(format!("component {i}: weight must be positive, got {w}")));
            }
            if let Component::TruncatedGaussian { mean, scale, .. } = *c {
                if !mean.is_finite() {
                    return Err(Error::invalid(format!("component {i}: mean must be finite")));
                }
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(Error::invalid(format!("component {i}: scale must be positive, got {scale}")));
                }
            }
            let mass = c.kernel_mass(support_lo, support_hi);
            if !(mass > 0.0 && mass.is_finite()) {
                return Err(Error::invalid(format!(
                    "component {i} has no probability mass on [{support_lo}, {support_hi}]"
                )));
            }
            masses.push(w * mass);
            samplers.push(Self::component_sampler(c, mass, support_lo, support_hi)?);
        }
        let normalizer: f64 = masses.iter().sum();
        let mut acc = 0.0;
        let mut selection: Vec<f64> = masses
            .iter()
            .map(|m| {
                acc += m;
                acc / normalizer
            })
            .collect();
        if let Some(last) = selection.last_mut() {
            *last = 1.0;
        }
        Ok(ArmDistribution {
            components,
            support_lo,
            support_hi,
            normalizer,
            selection,
            samplers,
        })
    }

    fn component_sampler(c: &Component, mass: f64, lo: f64, hi: f64) -> Result<ComponentSampler> {
        match *c {
            Component::Uniform { .. } => Ok(ComponentSampler::Uniform),
            Component::TruncatedGaussian { mean, scale, .. } => {
                let full_mass = (std::f64::consts::PI / scale).sqrt();
                if mass / full_mass >= 0.25 {
                    let sigma = (0.5 / scale).sqrt();
                    let normal = Normal::new(mean, sigma)
                        .map_err(|e| Error::Numeric(format!("normal proposal: {e}")))?;
                    Ok(ComponentSampler::NormalProposal(normal))
                } else {
                    let reach = (TAIL_EXPONENT / scale).sqrt();
                    let env_lo = lo.max(mean - reach);
                    let env_hi = hi.min(mean + reach);
                    let (env_lo, env_hi) = if env_hi > env_lo { (env_lo, env_hi) } else { (lo, hi) };
                    let peak = c.kernel(mean.clamp(env_lo, env_hi));
                    Ok(ComponentSampler::Envelope {
                        lo: env_lo,
                        hi: env_hi,
                        peak,
                    })
                }
            }
        }
    }

    /// Single truncated Gaussian `exp(-scale (u - mean)^2)` on `[lo, hi]`.
    pub fn truncated_gaussian(mean: f64, scale: f64, lo: f64, hi: f64) -> Result<Self> {
        Self::new(
            vec![Component::TruncatedGaussian {
                weight: 1.0,
                mean,
                scale,
            }],
            lo,
            hi,
        )
    }

    /// Truncated Gaussian whose parent normal has the given mean and variance.
    pub fn truncated_normal(mean: f64, variance: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(variance > 0.0) {
            return Err(Error::invalid(format!("variance must be positive, got {variance}")));
        }
        Self::truncated_gaussian(mean, 0.5 / variance, lo, hi)
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![Component::Uniform { weight: 1.0 }], lo, hi)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn support(&self) -> (f64, f64) {
        (self.support_lo, self.support_hi)
    }

    /// Normalized density.
    pub fn density(&self, u: f64) -> f64 {
        if u < self.support_lo || u > self.support_hi {
            return 0.0;
        }
        self.components
            .iter()
            .map(|c| c.weight() * c.kernel(u))
            .sum::<f64>()
            / self.normalizer
    }

    /// Cumulative distribution function.
    pub fn cdf(&self, u: f64) -> f64 {
        if u <= self.support_lo {
            return 0.0;
        }
        if u >= self.support_hi {
            return 1.0;
        }
        let partial: f64 = self
            .components
            .iter()
            .map(|c| c.weight() * c.kernel_mass(self.support_lo, u))
            .sum();
        (partial / self.normalizer).clamp(0.0, 1.0)
    }

    /// Draws one reward. `arm` only labels the error on failure.
    pub fn sample<R: Rng + ?Sized>(&self, arm: usize, rng: &mut R) -> Result<f64> {
        let pick = if self.selection.len() == 1 {
            0
        } else {
            let u: f64 = rng.random();
            self.selection
                .iter()
                .position(|&c| u < c)
                .unwrap_or(self.selection.len() - 1)
        };
        let (lo, hi) = (self.support_lo, self.support_hi);
        match &self.samplers[pick] {
            ComponentSampler::Uniform => Ok(lo + (hi - lo) * rng.random::<f64>()),
            ComponentSampler::NormalProposal(normal) => {
                for _ in 0..MAX_REJECTION_ATTEMPTS {
                    let x = normal.sample(rng);
                    if (lo..=hi).contains(&x) {
                        return Ok(x);
                    }
                }
                Err(Error::Sampling {
                    arm,
                    attempts: MAX_REJECTION_ATTEMPTS,
                })
            }
            ComponentSampler::Envelope { lo, hi, peak } => {
                let c = &self.components[pick];
                for _ in 0..MAX_REJECTION_ATTEMPTS {
                    let x = lo + (hi - lo) * rng.random::<f64>();
                    if rng.random::<f64>() * peak <= c.kernel(x) {
                        return Ok(x);
                    }
                }
                Err(Error::Sampling {
                    arm,
                    attempts: MAX_REJECTION_ATTEMPTS,
                })
            }
        }
    }

    /// Integration breakpoints: support ends plus in-support kernel centres.
    fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![self.support_lo, self.support_hi];
        for c in &self.components {
            if let Component::TruncatedGaussian { mean, .. } = *c {
                if mean > self.support_lo && mean < self.support_hi {
                    pts.push(mean);
                }
            }
        }
        sort_dedup(&mut pts);
        pts
    }
}

fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(f64::total_cmp);
    v.dedup();
}

/// Anything that can hand out rewards arm by arm.
pub trait ArmSampler {
    fn num_arms(&self) -> usize;
    fn pull<R: Rng + ?Sized>(&self, arm: usize, rng: &mut R) -> Result<f64>;
}

/// K independent arms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BanditModelSpec", into = "BanditModelSpec")]
pub struct BanditModel {
    arms: Vec<ArmDistribution>,
    label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BanditModelSpec {
    #[serde(default)]
    pub label: String,
    pub arms: Vec<ArmSpec>,
}

impl TryFrom<BanditModelSpec> for BanditModel {
    type Error = Error;
    fn try_from(spec: BanditModelSpec) -> Result<Self> {
        let arms = spec
            .arms
            .into_iter()
            .enumerate()
            .map(|(k, arm)| {
                ArmDistribution::try_from(arm).map_err(|e| Error::invalid(format!("arm {k}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        BanditModel::new(arms, spec.label)
    }
}

impl From<BanditModel> for BanditModelSpec {
    fn from(model: BanditModel) -> Self {
        BanditModelSpec {
            label: model.label,
            arms: model.arms.into_iter().map(ArmSpec::from).collect(),
        }
    }
}

impl BanditModel {
    pub fn new(arms: Vec<ArmDistribution>, label: impl Into<String>) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::invalid(format!("a bandit needs at least 2 arms, got {}", arms.len())));
        }
        Ok(BanditModel {
            arms,
            label: label.into(),
        })
    }

    pub fn arms(&self) -> &[ArmDistribution] {
        &self.arms
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// One simultaneous draw of every arm.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.arms.len()];
        self.sample_into(rng, &mut out)?;
        Ok(out)
    }

    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) -> Result<()> {
        debug_assert_eq!(out.len(), self.arms.len());
        for (k, (arm, slot)) in self.arms.iter().zip(out.iter_mut()).enumerate() {
            *slot = arm.sample(k, rng)?;
        }
        Ok(())
    }

    /// Per-arm sums of `m` independent draws.
    pub fn sample_m_sums<R: Rng + ?Sized>(&self, m: usize, rng: &mut R, out: &mut [f64]) -> Result<()> {
        out.iter_mut().for_each(|x| *x = 0.0);
        for (k, arm) in self.arms.iter().enumerate() {
            for _ in 0..m {
                out[k] += arm.sample(k, rng)?;
            }
        }
        Ok(())
    }
}

impl ArmSampler for BanditModel {
    fn num_arms(&self) -> usize {
        self.arms.len()
    }

    fn pull<R: Rng + ?Sized>(&self, arm: usize, rng: &mut R) -> Result<f64> {
        self.arms
            .get(arm)
            .ok_or_else(|| Error::invalid(format!("arm index {arm} out of range")))?
            .sample(arm, rng)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Mean and variance by adaptive quadrature of the normalized density.
pub fn moments_oracle(arm: &ArmDistribution) -> Result<Moments> {
    let pts = arm.breakpoints();
    let mean = quadrature::integrate_piecewise(|u| u * arm.density(u), &pts)?;
    let variance = quadrature::integrate_piecewise(|u| (u - mean).powi(2) * arm.density(u), &pts)?;
    Ok(Moments { mean, variance })
}

/// `∫ f(u) du` over the support by quadrature; 1 for a well-formed arm.
pub fn total_mass_oracle(arm: &ArmDistribution) -> Result<f64> {
    quadrature::integrate_piecewise(|u| arm.density(u), &arm.breakpoints())
}

/// Ground-truth win probabilities `P(R_k^M >= R_j^M for all j != k)`.
///
/// `m == 1` integrates `f_k · Π_{j≠k} F_j`; larger `m` falls back to
/// [`win_probability_monte_carlo`] with [`ORACLE_MONTE_CARLO_DRAWS`] draws.
pub fn win_probability_oracle(model: &BanditModel, m: usize) -> Result<WinProbabilities> {
    match m {
        0 => Err(Error::invalid("m must be at least 1")),
        1 => win_probability_quadrature(model),
        _ => win_probability_monte_carlo(model, m, ORACLE_MONTE_CARLO_DRAWS, ORACLE_SEED),
    }
}

fn win_probability_quadrature(model: &BanditModel) -> Result<WinProbabilities> {
    let arms = model.arms();
    let mut all_pts: Vec<f64> = arms.iter().flat_map(|a| a.breakpoints()).collect();
    sort_dedup(&mut all_pts);
    let values = arms
        .iter()
        .enumerate()
        .map(|(k, arm)| {
            let (lo, hi) = arm.support();
            let pts: Vec<f64> = all_pts.iter().copied().filter(|&x| x >= lo && x <= hi).collect();
            quadrature::integrate_piecewise(
                |u| {
                    let f = arm.density(u);
                    if f == 0.0 {
                        return 0.0;
                    }
                    arms.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .fold(f, |acc, (_, other)| acc * other.cdf(u))
                },
                &pts,
            )
            .map(|p| p.clamp(0.0, 1.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WinProbabilities {
        values,
        m: 1,
        method: EstimateMethod::Quadrature,
        samples_used: 0,
        counts: None,
        standard_errors: None,
    })
}

/// Monte Carlo win probabilities from `draws` independent M-sum vectors.
///
/// Work is cut into fixed chunks, each with its own ChaCha stream, so the
/// result depends only on `(draws, seed)`.
pub fn win_probability_monte_carlo(
    model: &BanditModel,
    m: usize,
    draws: u64,
    seed: u64,
) -> Result<WinProbabilities> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    if draws == 0 {
        return Err(Error::invalid("draws must be positive"));
    }
    const CHUNK: u64 = 20_000;
    let k = model.num_arms();
    let chunks = draws.div_ceil(CHUNK);
    let wins = (0..chunks)
        .into_par_iter()
        .map(|chunk| -> Result<Vec<u64>> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let n = CHUNK.min(draws - chunk * CHUNK);
            let mut wins = vec![0u64; k];
            let mut sums = vec![0.0; k];
            for _ in 0..n {
                model.sample_m_sums(m, &mut rng, &mut sums)?;
                let best = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                for (w, &s) in wins.iter_mut().zip(&sums) {
                    if s >= best {
                        *w += 1;
                    }
                }
            }
            Ok(wins)
        })
        .try_reduce(
            || vec![0u64; k],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let total = draws as f64;
    let values: Vec<f64> = wins.iter().map(|&w| w as f64 / total).collect();
    let standard_errors = values.iter().map(|&p| (p * (1.0 - p) / total).sqrt()).collect();
    Ok(WinProbabilities {
        values,
        m,
        method: EstimateMethod::MonteCarlo,
        samples_used: draws as u128,
        counts: Some(wins.iter().map(|&w| w as u128).collect()),
        standard_errors: Some(standard_errors),
    })
}

/// `E[R | R < v_α]` with `P(R < v_α) = α`.
pub fn cvar_oracle(arm: &ArmDistribution, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let v = quantile(arm, alpha);
    let mass = arm.cdf(v);
    if !(mass > 0.0) {
        return Err(Error::Numeric(format!("quantile {v} carries no mass")));
    }
    let mut pts: Vec<f64> = arm.breakpoints().into_iter().filter(|&x| x < v).collect();
    pts.push(v);
    let partial = quadrature::integrate_piecewise(|u| u * arm.density(u), &pts)?;
    Ok(partial / mass)
}

/// Solves `F(v) = alpha` by bisection.
pub fn quantile(arm: &ArmDistribution, alpha: f64) -> f64 {
    let (mut lo, mut hi) = arm.support();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if arm.cdf(mid) < alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Models used throughout the experiments.
pub mod builtin {
    use super::{ArmDistribution, BanditModel, Component};
    use crate::error::Result;

    /// Names accepted by [`by_name`].
    pub const NAMES: &[&str] = &[
        "example1",
        "example2",
        "variance-favoring",
        "cvar-contrast",
        "mean-variance-toy",
    ];

    /// The bimodal arm of [`example1`]: `3 e^{-8(u-1)^2} + 2 e^{-8(u-8)^2}` on `[0, 10]`.
    pub fn bimodal_arm() -> Result<ArmDistribution> {
        ArmDistribution::new(
            vec![
                Component::TruncatedGaussian {
                    weight: 3.0,
                    mean: 1.0,
                    scale: 8.0,
                },
                Component::TruncatedGaussian {
                    weight: 2.0,
                    mean: 8.0,
                    scale: 8.0,
                },
            ],
            0.0,
            10.0,
        )
    }

    /// Arm 1 `e^{-2(u-3)^2}`, arm 2 the bimodal arm. Arm 2 has the larger
    /// mean, arm 1 the larger win probability.
    pub fn example1() -> Result<BanditModel> {
        BanditModel::new(
            vec![ArmDistribution::truncated_gaussian(3.0, 2.0, 0.0, 10.0)?, bimodal_arm()?],
            "example1",
        )
    }

    /// Mean ordering and win-probability ordering agree.
    pub fn example2() -> Result<BanditModel> {
        BanditModel::new(
            vec![
                ArmDistribution::truncated_gaussian(2.0, 0.5, 0.0, 10.0)?,
                ArmDistribution::truncated_gaussian(1.0, 0.5, 0.0, 10.0)?,
            ],
            "example2",
        )
    }

    /// The better arm also has the larger variance (parent normals N(6, 4)
    /// and N(3, 0.5) on `[0, 10]`). Stand-in construction: the exact
    /// parameters of this experiment were never published.
    pub fn variance_favoring() -> Result<BanditModel> {
        BanditModel::new(
            vec![
                ArmDistribution::truncated_normal(6.0, 4.0, 0.0, 10.0)?,
                ArmDistribution::truncated_normal(3.0, 0.5, 0.0, 10.0)?,
            ],
            "variance-favoring",
        )
    }

    /// Parent normal N(3, 2) on `[0, 10]` against the bimodal arm.
    pub fn cvar_contrast() -> Result<BanditModel> {
        BanditModel::new(
            vec![ArmDistribution::truncated_normal(3.0, 2.0, 0.0, 10.0)?, bimodal_arm()?],
            "cvar-contrast",
        )
    }

    /// Disjoint uniform arms with (mean, variance) = (10, 10) and (1, 1):
    /// arm 1 always wins.
    pub fn mean_variance_toy() -> Result<BanditModel> {
        let h1 = 30f64.sqrt();
        let h2 = 3f64.sqrt();
        BanditModel::new(
            vec![
                ArmDistribution::uniform(10.0 - h1, 10.0 + h1)?,
                ArmDistribution::uniform(1.0 - h2, 1.0 + h2)?,
            ],
            "mean-variance-toy",
        )
    }

    pub fn by_name(name: &str) -> Option<Result<BanditModel>> {
        Some(match name {
            "example1" => example1(),
            "example2" => example2(),
            "variance-favoring" => variance_favoring(),
            "cvar-contrast" => cvar_contrast(),
            "mean-variance-toy" => mean_variance_toy(),
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn rejects_malformed_arms() {
        assert!(ArmDistribution::uniform(1.0, 1.0).is_err());
        assert!(ArmDistribution::new(vec![], 0.0, 1.0).is_err());
        assert!(ArmDistribution::new(vec![Component::Uniform { weight: 0.0 }], 0.0, 1.0).is_err());
        assert!(ArmDistribution::truncated_gaussian(0.0, -1.0, 0.0, 1.0).is_err());
        // all mass underflows
        assert!(ArmDistribution::truncated_gaussian(1e6, 10.0, 0.0, 1.0).is_err());
        let one = ArmDistribution::uniform(0.0, 1.0).unwrap();
        assert!(BanditModel::new(vec![one], "solo").is_err());
    }

    #[test]
    fn uniform_draws_stay_in_support() {
        let arm = ArmDistribution::uniform(0.0, 1.0).unwrap();
        let mut r = rng(1);
        for _ in 0..10_000 {
            let x = arm.sample(0, &mut r).unwrap();
            assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn envelope_sampler_handles_off_support_mean() {
        // mean far right of the support: only the left tail is visible
        let arm = ArmDistribution::truncated_gaussian(4.0, 2.0, 0.0, 1.0).unwrap();
        assert!(matches!(arm.samplers[0], ComponentSampler::Envelope { .. }));
        let mut r = rng(3);
        let n = 200_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let x = arm.sample(0, &mut r).unwrap();
            assert!((0.0..=1.0).contains(&x));
            sum += x;
        }
        let exact = moments_oracle(&arm).unwrap();
        let se = (exact.variance / n as f64).sqrt();
        assert!((sum / n as f64 - exact.mean).abs() < 4.0 * se);
    }

    #[test]
    fn uniform_closed_forms() {
        let arm = ArmDistribution::uniform(0.0, 1.0).unwrap();
        let m = moments_oracle(&arm).unwrap();
        assert!((m.mean - 0.5).abs() < 1e-10);
        assert!((m.variance - 1.0 / 12.0).abs() < 1e-10);
        assert!((cvar_oracle(&arm, 0.5).unwrap() - 0.25).abs() < 1e-9);
        assert!((cvar_oracle(&arm, 0.2).unwrap() - 0.1).abs() < 1e-9);
        assert!(cvar_oracle(&arm, 0.0).is_err());
        assert!(cvar_oracle(&arm, 1.0).is_err());
    }

    #[test]
    fn narrow_gaussian_is_centered() {
        let arm = ArmDistribution::truncated_gaussian(5.0, 50.0, 0.0, 10.0).unwrap();
        let m = moments_oracle(&arm).unwrap();
        assert!((m.mean - 5.0).abs() < 1e-3);
        // untruncated variance 1 / (2 b)
        assert!((m.variance - 0.01).abs() < 1e-6);
    }

    #[test]
    fn closed_form_cdf_agrees_with_quadrature() {
        let arm = builtin::bimodal_arm().unwrap();
        for &u in &[0.5, 1.0, 2.7, 5.0, 8.1, 9.9] {
            let q = quadrature::integrate_piecewise(|x| arm.density(x), &[0.0, 1.0_f64.min(u), u]).unwrap();
            assert!((q - arm.cdf(u)).abs() < 1e-7, "u={u}: {q} vs {}", arm.cdf(u));
        }
        assert_eq!(arm.cdf(-1.0), 0.0);
        assert_eq!(arm.cdf(11.0), 1.0);
    }

    #[test]
    fn identical_arms_split_evenly() {
        let a = ArmDistribution::truncated_gaussian(4.0, 1.0, 0.0, 10.0).unwrap();
        let model = BanditModel::new(vec![a.clone(), a], "twins").unwrap();
        let p = win_probability_oracle(&model, 1).unwrap();
        assert!((p.values[0] - 0.5).abs() < 1e-6);
        assert!((p.values[1] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn shifted_uniforms() {
        // P(U[0,2] >= U[0,1]) = ∫_0^1 u/2 du + 1/2 = 3/4
        let model = BanditModel::new(
            vec![
                ArmDistribution::uniform(0.0, 2.0).unwrap(),
                ArmDistribution::uniform(0.0, 1.0).unwrap(),
            ],
            "shifted",
        )
        .unwrap();
        let p = win_probability_oracle(&model, 1).unwrap();
        assert!((p.values[0] - 0.75).abs() < 1e-6);
        assert!((p.values[1] - 0.25).abs() < 1e-6);
    }

    #[test]
    fn disjoint_toy_is_deterministic_in_order() {
        let model = builtin::mean_variance_toy().unwrap();
        let p = win_probability_oracle(&model, 1).unwrap();
        assert!((p.values[0] - 1.0).abs() < 1e-9);
        assert!(p.values[1].abs() < 1e-9);
        let m1 = moments_oracle(&model.arms()[0]).unwrap();
        let m2 = moments_oracle(&model.arms()[1]).unwrap();
        assert!((m1.mean - 10.0).abs() < 1e-9 && (m1.variance - 10.0).abs() < 1e-8);
        assert!((m2.mean - 1.0).abs() < 1e-9 && (m2.variance - 1.0).abs() < 1e-8);
    }

    #[test]
    fn monte_carlo_matches_quadrature_at_m1() {
        let model = builtin::example1().unwrap();
        let exact = win_probability_oracle(&model, 1).unwrap();
        let mc = win_probability_monte_carlo(&model, 1, 200_000, 11).unwrap();
        let se = mc.standard_errors.as_ref().unwrap();
        for k in 0..2 {
            assert!((mc.values[k] - exact.values[k]).abs() < 4.0 * se[k]);
        }
        // same seed, same answer
        let again = win_probability_monte_carlo(&model, 1, 200_000, 11).unwrap();
        assert_eq!(mc.values, again.values);
    }

    #[test]
    fn model_serde_round_trip() {
        let model = builtin::example1().unwrap();
        let json = serde_json::to_string(&model).unwrap();
        assert!(json.contains("truncated-gaussian"));
        let back: BanditModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model);
        let bad = r#"{"arms":[{"components":[{"kind":"uniform","weight":1.0}],"support":[1.0,0.0]},
                              {"components":[{"kind":"uniform","weight":1.0}],"support":[0.0,1.0]}]}"#;
        assert!(serde_json::from_str::<BanditModel>(bad).is_err());
    }
}
