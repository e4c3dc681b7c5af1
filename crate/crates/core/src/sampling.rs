//! Direction samples on S^{d-1}: global grids and spirals, seeded Gaussian
//! samples, and caps around a chosen center.

use crate::error::{Error, Result};
use crate::geom::UnitDirection;
use crate::linalg::{self, axpy, dot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    UniformGrid2d,
    Fibonacci3d,
    GaussianRandom,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::UniformGrid2d => "uniform_grid_2d",
            Strategy::Fibonacci3d => "fibonacci_3d",
            Strategy::GaussianRandom => "gaussian_random",
        }
    }

    /// Deterministic strategy suited to `dim`.
    pub fn default_for(dim: usize) -> Self {
        match dim {
            2 => Strategy::UniformGrid2d,
            3 => Strategy::Fibonacci3d,
            _ => Strategy::GaussianRandom,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform_grid_2d" | "grid" => Ok(Strategy::UniformGrid2d),
            "fibonacci_3d" | "fibonacci" => Ok(Strategy::Fibonacci3d),
            "gaussian_random" | "gaussian" => Ok(Strategy::GaussianRandom),
            other => Err(Error::InvalidPlan(format!("unknown strategy `{other}`"))),
        }
    }
}

/// Optional targeting of a plan at a face's normal region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Focus {
    pub face: Option<usize>,
    /// Angular radius in radians.
    pub cap_radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub dim: usize,
    pub strategy: Strategy,
    pub count: usize,
    pub seed: u64,
    pub focus: Option<Focus>,
}

impl SamplePlan {
    pub fn new(dim: usize, strategy: Strategy, count: usize, seed: u64) -> Self {
        Self {
            dim,
            strategy,
            count,
            seed,
            focus: None,
        }
    }

    pub fn with_cap(mut self, face: Option<usize>, cap_radius: f64) -> Self {
        self.focus = Some(Focus { face, cap_radius });
        self
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidPlan("count must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::InvalidPlan("dimension must be at least 1".into()));
        }
        let ok = match self.strategy {
            Strategy::UniformGrid2d => self.dim == 2,
            Strategy::Fibonacci3d => self.dim == 3,
            Strategy::GaussianRandom => true,
        };
        if !ok {
            return Err(Error::StrategyDimensionMismatch {
                strategy: self.strategy.name(),
                dim: self.dim,
            });
        }
        if let Some(f) = &self.focus {
            if !(f.cap_radius > 0.0 && f.cap_radius <= PI) {
                return Err(Error::InvalidPlan(format!(
                    "cap radius {} outside (0, π]",
                    f.cap_radius
                )));
            }
        }
        Ok(())
    }
}

const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653; // π (3 - √5)

fn random_unit(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if let Some(u) = linalg::normalized(&v) {
            return u;
        }
    }
}

/// Global sample of the sphere according to `plan.strategy`.
pub fn sample(plan: &SamplePlan) -> Result<Vec<UnitDirection>> {
    plan.validate()?;
    let n = plan.count;
    let out = match plan.strategy {
        Strategy::UniformGrid2d => (0..n)
            .map(|k| UnitDirection::from_angle(2.0 * PI * k as f64 / n as f64))
            .collect(),
        Strategy::Fibonacci3d => (0..n)
            .map(|k| {
                let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = GOLDEN_ANGLE * k as f64;
                UnitDirection::new(vec![r * phi.cos(), r * phi.sin(), z])
            })
            .collect::<Result<Vec<_>>>()?,
        Strategy::GaussianRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
            (0..n)
                .map(|_| UnitDirection::new(random_unit(plan.dim, &mut rng)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(out)
}

/// Point at angle `theta` from `center` along the unit tangent `t`.
fn along(center: &[f64], t: &[f64], theta: f64) -> Result<UnitDirection> {
    let mut v = linalg::scale(center, theta.cos());
    axpy(theta.sin(), t, &mut v);
    UnitDirection::new(v)
}

/// `plan.count` directions within angular distance `plan.focus.cap_radius`
/// of `center`. A count of one yields `center` itself.
pub fn sample_near(plan: &SamplePlan, center: &UnitDirection) -> Result<Vec<UnitDirection>> {
    plan.validate()?;
    let radius = plan
        .focus
        .as_ref()
        .map(|f| f.cap_radius)
        .ok_or_else(|| Error::InvalidPlan("sample_near requires a cap radius".into()))?;
    if center.dim() != plan.dim {
        return Err(Error::DimensionMismatch {
            expected: plan.dim,
            found: center.dim(),
        });
    }
    let n = plan.count;
    if n == 1 {
        return Ok(vec![center.clone()]);
    }
    let c = center.as_slice();
    let frame = linalg::complement_basis(&[c.to_vec()], plan.dim);
    match plan.strategy {
        Strategy::UniformGrid2d => {
            let t = &frame[0];
            (0..n)
                .map(|k| along(c, t, -radius + 2.0 * radius * (k as f64 + 0.5) / n as f64))
                .collect()
        }
        Strategy::Fibonacci3d => {
            let (t1, t2) = (&frame[0], &frame[1]);
            let h = 1.0 - radius.cos();
            (0..n)
                .map(|k| {
                    let z = 1.0 - h * (k as f64 + 0.5) / n as f64;
                    let theta = z.clamp(-1.0, 1.0).acos();
                    let phi = GOLDEN_ANGLE * k as f64;
                    let mut t = linalg::scale(t1, phi.cos());
                    axpy(phi.sin(), t2, &mut t);
                    along(c, &t, theta)
                })
                .collect()
        }
        Strategy::GaussianRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
            if plan.dim == 1 {
                // S^0 has only the center and its antipode
                return Ok((0..n)
                    .map(|k| if radius >= PI && k % 2 == 1 { center.neg() } else { center.clone() })
                    .collect());
            }
            let power = (plan.dim - 2) as i32;
            let peak = radius.min(PI / 2.0).sin();
            (0..n)
                .map(|_| {
                    // polar angle density ∝ sin^{d-2} θ on [0, radius]
                    let theta = loop {
                        let th = radius * rng.random::<f64>();
                        if power == 0 || rng.random::<f64>() * peak.powi(power) <= th.sin().powi(power) {
                            break th;
                        }
                    };
                    let mut t = random_unit(plan.dim, &mut rng);
                    let along_c = dot(&t, c);
                    axpy(-along_c, c, &mut t);
                    let t = linalg::normalized(&t).unwrap_or_else(|| frame[0].clone());
                    along(c, &t, theta)
                })
                .collect()
        }
    }
}

/// Nested caps of radius `r, r/10, r/100, …` down to `min_radius`, each
/// with `plan.count` samples. Resolves structure that only shows up within
/// a tiny angular window of `center`.
pub fn sample_near_multiscale(
    plan: &SamplePlan,
    center: &UnitDirection,
    min_radius: f64,
) -> Result<Vec<UnitDirection>> {
    let radius = plan
        .focus
        .as_ref()
        .map(|f| f.cap_radius)
        .ok_or_else(|| Error::InvalidPlan("multiscale sampling requires a cap radius".into()))?;
    let mut out = Vec::new();
    let mut r = radius;
    let mut level = 0u64;
    loop {
        let mut p = plan.clone();
        p.seed = plan.seed.wrapping_add(level);
        if let Some(f) = p.focus.as_mut() {
            f.cap_radius = r;
        }
        out.extend(sample_near(&p, center)?);
        r /= 10.0;
        level += 1;
        if r < min_radius {
            break;
        }
    }
    Ok(out)
}

/// Directions around `center` with polar radius log-spaced from the plan's
/// cap radius down to `min_radius`: about `plan.count` points per decade,
/// split into rings and spokes. In the plane the spokes are the two
/// tangent directions; in higher dimensions they rotate from ring to ring
/// (golden angle in d = 3, seeded random tangents beyond).
pub fn sample_log_polar(plan: &SamplePlan, center: &UnitDirection, min_radius: f64) -> Result<Vec<UnitDirection>> {
    plan.validate()?;
    let radius = plan
        .focus
        .as_ref()
        .map(|f| f.cap_radius)
        .ok_or_else(|| Error::InvalidPlan("log-polar sampling requires a cap radius".into()))?;
    if center.dim() != plan.dim {
        return Err(Error::DimensionMismatch {
            expected: plan.dim,
            found: center.dim(),
        });
    }
    if !(min_radius > 0.0 && min_radius <= radius) {
        return Err(Error::InvalidPlan(format!("minimum radius {min_radius} outside (0, {radius}]")));
    }
    let c = center.as_slice();
    let frame = linalg::complement_basis(&[c.to_vec()], plan.dim);
    let (rings, spokes) = match plan.dim {
        1 => return Ok(vec![center.clone()]),
        2 => (plan.count.div_ceil(2), 2),
        _ => {
            let r = (plan.count as f64).sqrt().ceil() as usize;
            (r, plan.count.div_ceil(r))
        }
    };
    let decades = (radius / min_radius).log10();
    let total = (decades * rings as f64).ceil() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut out = vec![center.clone()];
    for k in 0..=total {
        let theta = radius * 10f64.powf(-(k as f64) / rings as f64);
        for s in 0..spokes {
            let t = match plan.dim {
                2 => linalg::scale(&frame[0], if s == 0 { 1.0 } else { -1.0 }),
                3 => {
                    let phi = 2.0 * PI * s as f64 / spokes as f64 + GOLDEN_ANGLE * k as f64;
                    let mut t = linalg::scale(&frame[0], phi.cos());
                    axpy(phi.sin(), &frame[1], &mut t);
                    t
                }
                _ => {
                    let mut t = vec![0.0; plan.dim];
                    for b in &frame {
                        axpy(rng.sample(StandardNormal), b, &mut t);
                    }
                    linalg::normalized(&t).unwrap_or_else(|| frame[0].clone())
                }
            };
            out.push(along(c, &t, theta)?);
        }
    }
    Ok(out)
}
