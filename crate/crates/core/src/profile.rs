//! Exact piecewise-linear profiles on `[0, 1]` with the slope constraints
//! of an admissible annular filtration profile: every segment slope lies
//! in `{-n, -n+2, ..., n-2, n}`. All arithmetic is exact rational; this
//! module contains no floating point and no tolerances.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A continuous piecewise-linear function on `[0, 1]` with admissible
/// integer slopes of the parity of `strands`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileJson", into = "ProfileJson")]
pub struct PLProfile {
    strands: usize,
    points: Vec<(Rational64, Rational64)>,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    strands: usize,
    points: Vec<[i64; 4]>,
}

impl From<PLProfile> for ProfileJson {
    fn from(p: PLProfile) -> Self {
        ProfileJson {
            strands: p.strands,
            points: p
                .points
                .iter()
                .map(|(t, v)| [*t.numer(), *t.denom(), *v.numer(), *v.denom()])
                .collect(),
        }
    }
}

impl TryFrom<ProfileJson> for PLProfile {
    type Error = Error;

    fn try_from(j: ProfileJson) -> Result<Self> {
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        for [tn, td, vn, vd] in j.points {
            if td == 0 || vd == 0 {
                return Err(Error::InvalidProfile("zero denominator".into()));
            }
            breakpoints.push(Rational64::new(tn, td));
            values.push(Rational64::new(vn, vd));
        }
        PLProfile::new(j.strands, breakpoints, values)
    }
}

impl PLProfile {
    /// Validate and build a profile from breakpoints and values.
    pub fn new(
        strands: usize,
        breakpoints: Vec<Rational64>,
        values: Vec<Rational64>,
    ) -> Result<Self> {
        if strands < 1 {
            return Err(Error::InvalidProfile("strand count must be positive".into()));
        }
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidProfile("breakpoint and value counts differ".into()));
        }
        if breakpoints.len() < 2 {
            return Err(Error::InvalidProfile("need at least the two endpoints".into()));
        }
        if breakpoints[0] != Rational64::zero() {
            return Err(Error::InvalidProfile("first breakpoint must be 0".into()));
        }
        if *breakpoints.last().unwrap() != Rational64::from_integer(1) {
            return Err(Error::InvalidProfile("last breakpoint must be 1".into()));
        }
        for pair in breakpoints.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidProfile("breakpoints must strictly increase".into()));
            }
        }
        let n = strands as i64;
        for k in 0..breakpoints.len() - 1 {
            let slope = (values[k + 1] - values[k]) / (breakpoints[k + 1] - breakpoints[k]);
            if !slope.is_integer() {
                return Err(Error::InvalidProfile(format!("slope {slope} is not an integer")));
            }
            let s = slope.to_integer();
            if s.abs() > n {
                return Err(Error::InvalidProfile(format!(
                    "slope {s} outside [-{n}, {n}]"
                )));
            }
            if (s - n) % 2 != 0 {
                return Err(Error::InvalidProfile(format!(
                    "slope {s} has wrong parity for {strands} strands"
                )));
            }
        }
        let points = breakpoints.into_iter().zip(values).collect();
        Ok(PLProfile { strands, points })
    }

    /// The line `n(t - 1)`, the profile of the trivial braid closure.
    pub fn trivial(strands: usize) -> Self {
        let n = Rational64::from_integer(strands as i64);
        PLProfile {
            strands,
            points: vec![
                (Rational64::zero(), -n),
                (Rational64::from_integer(1), Rational64::zero()),
            ],
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = Rational64> + '_ {
        self.points.iter().map(|(t, _)| *t)
    }

    /// Linear interpolation at `t` in `[0, 1]`.
    pub fn eval(&self, t: Rational64) -> Result<Rational64> {
        if t < Rational64::zero() || t > Rational64::from_integer(1) {
            return Err(Error::Precondition(format!("t = {t} outside [0, 1]")));
        }
        for k in 0..self.points.len() - 1 {
            let (t0, v0) = self.points[k];
            let (t1, v1) = self.points[k + 1];
            if t <= t1 {
                return Ok(v0 + (v1 - v0) * (t - t0) / (t1 - t0));
            }
        }
        unreachable!("t is within [0, 1] and the last breakpoint is 1")
    }

    fn trivial_value(&self, t: Rational64) -> Rational64 {
        Rational64::from_integer(self.strands as i64) * (t - Rational64::from_integer(1))
    }

    /// Exact maximum of `|f - n(t-1)|` over `[0, 1]` and the smallest
    /// location where it is attained. The gap is piecewise linear with
    /// the same breakpoints as `f`, so the maximum sits at a breakpoint.
    pub fn max_gap(&self) -> (Rational64, Rational64) {
        let mut best = (Rational64::zero() - Rational64::from_integer(1), Rational64::zero());
        for (t, v) in &self.points {
            let gap = (*v - self.trivial_value(*t)).abs();
            if gap > best.0 {
                best = (gap, *t);
            }
        }
        best
    }

    /// Lower bound for the band rank of a braid realizing this profile.
    pub fn band_rank_bound(&self) -> Rational64 {
        self.max_gap().0
    }

    /// Test, not assume, that the maximal gap is attained at an endpoint.
    /// Requires `f(0) = -1` (the finite-concordance-order hypothesis).
    pub fn endpoint_max_holds(&self) -> Result<bool> {
        let minus_one = Rational64::from_integer(-1);
        if self.points[0].1 != minus_one {
            return Err(Error::Precondition(format!(
                "endpoint theorem needs f(0) = -1, got {}",
                self.points[0].1
            )));
        }
        let (max, _) = self.max_gap();
        let gap0 = (self.points[0].1 - self.trivial_value(Rational64::zero())).abs();
        let gap1 = (self.points.last().unwrap().1
            - self.trivial_value(Rational64::from_integer(1)))
        .abs();
        Ok(max == gap0.max(gap1))
    }
}

/// Deterministic admissible profile generator. `segments` is the number
/// of linear pieces; `fixed_start` pins `f(0)` when given.
pub fn random_admissible(
    strands: usize,
    segments: usize,
    seed: u64,
    fixed_start: Option<Rational64>,
) -> PLProfile {
    const DENOM: i64 = 840;
    let segments = segments.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut numerators: Vec<i64> = Vec::new();
    while numerators.len() < segments - 1 {
        let cand = rng.gen_range(1..DENOM);
        if !numerators.contains(&cand) {
            numerators.push(cand);
        }
    }
    numerators.sort_unstable();
    let mut breakpoints = vec![Rational64::zero()];
    breakpoints.extend(numerators.into_iter().map(|k| Rational64::new(k, DENOM)));
    breakpoints.push(Rational64::from_integer(1));

    let n = strands as i64;
    let start = fixed_start.unwrap_or_else(|| {
        Rational64::new(rng.gen_range(-3 * n..=3 * n), rng.gen_range(1..=4))
    });
    let mut values = vec![start];
    for k in 0..segments {
        let slope = Rational64::from_integer(n - 2 * rng.gen_range(0..=n));
        let dt = breakpoints[k + 1] - breakpoints[k];
        let last = *values.last().unwrap();
        values.push(last + slope * dt);
    }
    PLProfile::new(strands, breakpoints, values).expect("generated slopes are admissible")
}

/// Run the endpoint-maximum property over `count` random admissible
/// profiles with `f(0) = -1`; returns the number of failures (profiles
/// whose gap maximum is interior, or whose gap at 0 is not `n - 1`).
pub fn endpoint_sweep(strands: usize, count: usize, base_seed: u64) -> usize {
    let check = |i: u64| -> usize {
        let segments = 1 + (i % 6) as usize;
        let f = random_admissible(
            strands,
            segments,
            base_seed.wrapping_add(i),
            Some(Rational64::from_integer(-1)),
        );
        let holds = f.endpoint_max_holds().expect("f(0) = -1 by construction");
        let gap0 = (f.eval(Rational64::zero()).unwrap()
            + Rational64::from_integer(strands as i64))
        .abs();
        let lemma7 = gap0 == Rational64::from_integer(strands as i64 - 1);
        usize::from(!(holds && lemma7))
    };
    #[cfg(feature = "parallel")]
    {
        (0..count as u64).into_par_iter().map(check).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count as u64).map(check).sum()
    }
}

/// Sequential variant of [`endpoint_sweep`] for benchmarking.
pub fn endpoint_sweep_seq(strands: usize, count: usize, base_seed: u64) -> usize {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        pool.install(|| endpoint_sweep(strands, count, base_seed))
    }
    #[cfg(not(feature = "parallel"))]
    {
        endpoint_sweep(strands, count, base_seed)
    }
}
