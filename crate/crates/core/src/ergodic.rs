//! The infinite-support extreme correlated equilibrium built from an
//! interval rotation.
//!
//! With `0 < a < b < 1` and rotation `f(t) = ((t - a + alpha) mod (b - a)) + a`
//! on `[a, b)`, the support consists of the curves
//! `(t, f(t))`, `(-t, t)`, `(-t, -t)` and `(t, -t)` for `t` in `[a, b)`, one
//! per quadrant, carrying Lebesgue measure in `t` times the density
//! `1/|x y|`. Everything here is double precision; the exact finite shadows
//! live in [`orbit`].

pub mod orbit;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Which way the quadrant map cycles through the quadrants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    #[default]
    CounterClockwise,
    Clockwise,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    /// Set when `alpha / (b - a)` is irrational by construction (e.g. a
    /// rational multiple of `1/sqrt(5)`); floats cannot decide it.
    pub irrational: bool,
    pub orientation: Orientation,
}

impl RotationParams {
    /// `alpha = 0` and `alpha = b - a` (identity rotations) are accepted for
    /// testing degenerate cases.
    pub fn new(a: f64, b: f64, alpha: f64, irrational: bool) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && alpha.is_finite()) {
            return Err(Error::InvalidRotation("parameters must be finite".into()));
        }
        if !(0.0 < a && a < b && b < 1.0) {
            return Err(Error::InvalidRotation(format!(
                "need 0 < a < b < 1, got a = {a}, b = {b}"
            )));
        }
        if !(0.0..=b - a).contains(&alpha) {
            return Err(Error::InvalidRotation(format!(
                "need 0 <= alpha <= b - a, got alpha = {alpha}"
            )));
        }
        Ok(Self {
            a,
            b,
            alpha,
            irrational,
            orientation: Orientation::CounterClockwise,
        })
    }

    /// `alpha = c / sqrt(5)`.
    pub fn sqrt5(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a, b, c / 5f64.sqrt(), c != 0.0)
    }

    /// `a = 0.2`, `b = 0.8`, `alpha = 1/sqrt(5)`.
    pub fn standard() -> Self {
        Self::sqrt5(0.2, 0.8, 1.0).expect("valid parameters")
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Rotation number `alpha / (b - a)`.
    pub fn rotation_number(&self) -> f64 {
        self.alpha / self.width()
    }

    /// Parameter where the first-quadrant curve wraps from `y = b` to `y = a`.
    pub fn wrap_point(&self) -> f64 {
        self.b - self.alpha
    }
}

fn wrap(params: &RotationParams, shifted: f64) -> f64 {
    let y = shifted.rem_euclid(params.width()) + params.a;
    // Rounding can land exactly on b; that point is a.
    if y >= params.b {
        params.a
    } else {
        y
    }
}

pub fn rotation_map(params: &RotationParams, x: f64) -> Result<f64> {
    if !(params.a..params.b).contains(&x) {
        return Err(Error::OutsideRotationInterval(format!("{x}")));
    }
    Ok(wrap(params, x - params.a + params.alpha))
}

/// Inverse rotation, used by the clockwise quadrant map.
pub fn inverse_rotation_map(params: &RotationParams, x: f64) -> Result<f64> {
    if !(params.a..params.b).contains(&x) {
        return Err(Error::OutsideRotationInterval(format!("{x}")));
    }
    Ok(wrap(params, x - params.a - params.alpha))
}

/// The quadrant map: fourth quadrant to first, first to second, and so on
/// (reversed for [`Orientation::Clockwise`]). Points off the support curves
/// or with a zero coordinate are rejected.
pub fn quadrant_map(params: &RotationParams, (x, y): (f64, f64)) -> Result<(f64, f64)> {
    let off = || Error::OutsideRotationInterval(format!("({x}, {y})"));
    match params.orientation {
        Orientation::CounterClockwise => match (x > 0.0, y > 0.0) {
            (true, false) if y < 0.0 => Ok((x, rotation_map(params, x)?)),
            (true, true) => Ok((-y, y)),
            (false, true) if x < 0.0 => Ok((x, x)),
            (false, false) if x < 0.0 && y < 0.0 => Ok((-y, y)),
            _ => Err(off()),
        },
        Orientation::Clockwise => match (x > 0.0, y > 0.0) {
            (true, true) => Ok((x, -x)),
            (false, true) if x < 0.0 => Ok((inverse_rotation_map(params, y)?, y)),
            (false, false) if x < 0.0 && y < 0.0 => Ok((x, -x)),
            (true, false) if y < 0.0 => Ok((-x, -x)),
            _ => Err(off()),
        },
    }
}

/// An affine piece of the support: `t -> start + (t - t0) * (end - start) / (t1 - t0)`
/// for `t` in `[t0, t1)`, carrying Lebesgue measure in `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub quadrant: u8,
    pub t0: f64,
    pub t1: f64,
    pub start: (f64, f64),
    pub end: (f64, f64),
}

impl Segment {
    pub fn point(&self, t: f64) -> (f64, f64) {
        let s = if self.t1 > self.t0 {
            (t - self.t0) / (self.t1 - self.t0)
        } else {
            0.0
        };
        (
            self.start.0 + s * (self.end.0 - self.start.0),
            self.start.1 + s * (self.end.1 - self.start.1),
        )
    }

    pub fn length(&self) -> f64 {
        self.t1 - self.t0
    }

    /// Sub-interval of `[t0, t1)` on which coordinate `axis` lies in `[lo, hi)`.
    fn preimage(&self, axis: usize, lo: f64, hi: f64) -> Option<(f64, f64)> {
        let (c0, c1) = if axis == 0 {
            (self.start.0, self.end.0)
        } else {
            (self.start.1, self.end.1)
        };
        let len = self.length();
        if len <= 0.0 {
            return None;
        }
        let slope = (c1 - c0) / len;
        let (mut ta, mut tb) = if slope == 0.0 {
            if (lo..hi).contains(&c0) {
                (self.t0, self.t1)
            } else {
                return None;
            }
        } else {
            let u = self.t0 + (lo - c0) / slope;
            let v = self.t0 + (hi - c0) / slope;
            (u.min(v), u.max(v))
        };
        ta = ta.max(self.t0);
        tb = tb.min(self.t1);
        (tb > ta).then_some((ta, tb))
    }
}

/// The five support pieces: fourth, third and second quadrant, then the
/// first-quadrant curve before and after its wrap point.
pub fn support_segments(params: &RotationParams) -> Vec<Segment> {
    let (a, b, al) = (params.a, params.b, params.alpha);
    let w = params.wrap_point();
    vec![
        Segment {
            quadrant: 4,
            t0: a,
            t1: b,
            start: (a, -a),
            end: (b, -b),
        },
        Segment {
            quadrant: 3,
            t0: a,
            t1: b,
            start: (-a, -a),
            end: (-b, -b),
        },
        Segment {
            quadrant: 2,
            t0: a,
            t1: b,
            start: (-a, a),
            end: (-b, b),
        },
        Segment {
            quadrant: 1,
            t0: a,
            t1: w,
            start: (a, a + al),
            end: (w, b),
        },
        Segment {
            quadrant: 1,
            t0: w,
            t1: b,
            start: (w, a),
            end: (b, a + al),
        },
    ]
}

/// Pairwise summation, so results do not depend on accumulation order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

/// Composite midpoint rule with `n` nodes.
pub fn midpoint(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let terms: Vec<f64> = (0..n).map(|i| f(lo + (i as f64 + 0.5) * h) * h).collect();
    pairwise_sum(&terms)
}

fn density(x: f64, y: f64) -> f64 {
    1.0 / (x * y).abs()
}

/// Maximum over bins of `|lambda_x(A)|` and `|lambda_y(A)|`, where the
/// bins split `[-1, 1]` evenly and
/// `lambda_x(A) = integral over {x in A} of y dmu`,
/// `lambda_y(A) = integral over {y in A} of x dmu`.
/// Both vanish for a correlated equilibrium.
pub fn conditional_mean_residuals(
    params: &RotationParams,
    bins: usize,
    quad_points: usize,
) -> Result<(f64, f64)> {
    if bins == 0 || quad_points < 10 {
        return Err(Error::InvalidRotation(
            "need bins >= 1 and quad_points >= 10".into(),
        ));
    }
    let segs = support_segments(params);
    let edges: Vec<f64> = (0..=bins)
        .map(|i| -1.0 + 2.0 * i as f64 / bins as f64)
        .collect();
    let lambda = |axis: usize, lo: f64, hi: f64| -> f64 {
        let parts: Vec<f64> = segs
            .iter()
            .filter_map(|s| {
                let (ta, tb) = s.preimage(axis, lo, hi)?;
                Some(midpoint(
                    |t| {
                        let (x, y) = s.point(t);
                        let other = if axis == 0 { y } else { x };
                        other * density(x, y)
                    },
                    ta,
                    tb,
                    quad_points,
                ))
            })
            .collect();
        pairwise_sum(&parts)
    };
    let (mut rx, mut ry) = (0f64, 0f64);
    for w in edges.windows(2) {
        // The last bin is closed so that x = 1 is covered.
        let hi = if w[1] >= 1.0 { f64::INFINITY } else { w[1] };
        rx = rx.max(lambda(0, w[0], hi).abs());
        ry = ry.max(lambda(1, w[0], hi).abs());
    }
    Ok((rx, ry))
}

/// `integral_{t0}^{t1} dt / (t (t + c))` in closed form.
fn inverse_quadratic_integral(t0: f64, t1: f64, c: f64) -> f64 {
    if t1 <= t0 {
        return 0.0;
    }
    if c.abs() < 1e-14 {
        1.0 / t0 - 1.0 / t1
    } else {
        ((t1 / (t1 + c)).ln() - (t0 / (t0 + c)).ln()) / c
    }
}

/// Mass of `mu` in quadrants 1 through 4.
pub fn quadrant_masses(params: &RotationParams) -> [f64; 4] {
    let (a, b, al) = (params.a, params.b, params.alpha);
    let w = params.wrap_point();
    let q1 = inverse_quadratic_integral(a, w, al)
        + inverse_quadratic_integral(w, b, al - params.width());
    let other = 1.0 / a - 1.0 / b;
    [q1, other, other, other]
}

const SAMPLE_CHUNK: usize = 4096;

/// `n` independent draws from the normalized equilibrium. Quadrants are
/// chosen in proportion to their mass, then `t` is drawn uniformly on
/// `[a, b)` and accepted with probability `a^2 / |x y|`. Output depends only
/// on `seed` (chunks use separate ChaCha streams).
pub fn sample(params: &RotationParams, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let masses = quadrant_masses(params);
    let total: f64 = masses.iter().sum();
    let mut cumulative = [0.0; 4];
    let mut acc = 0.0;
    for (i, m) in masses.iter().enumerate() {
        acc += m / total;
        cumulative[i] = acc;
    }
    let a2 = params.a * params.a;
    let chunks = n.div_ceil(SAMPLE_CHUNK);
    let out: Vec<Vec<(f64, f64)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = SAMPLE_CHUNK.min(n - c * SAMPLE_CHUNK);
            (0..count)
                .map(|_| {
                    let u: f64 = rng.gen();
                    let q = cumulative.iter().position(|&c| u < c).unwrap_or(3) + 1;
                    loop {
                        let t = rng.gen_range(params.a..params.b);
                        let p = match q {
                            1 => (t, wrap(params, t - params.a + params.alpha)),
                            2 => (-t, t),
                            3 => (-t, -t),
                            _ => (t, -t),
                        };
                        if rng.gen::<f64>() * (p.0 * p.1).abs() < a2 {
                            break p;
                        }
                    }
                })
                .collect()
        })
        .collect();
    out.into_iter().flatten().collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Discrepancy {
    /// `max_S |empirical(S) - uniform(S)|` over unions of bins, i.e. the
    /// total-variation distance `(1/2) sum |empirical - uniform|`.
    pub total_variation: f64,
    /// Largest single-bin deviation `|empirical - 1/bins|`.
    pub max_bin: f64,
    pub empty_bins: usize,
}

/// Bins the orbit `a, f(a), f(f(a)), ...` of length `n_orbit` over `[a, b)`
/// and compares the bin frequencies with the uniform distribution.
pub fn equidistribution_check(
    params: &RotationParams,
    n_orbit: usize,
    bins: usize,
) -> Result<Discrepancy> {
    if bins == 0 || n_orbit < bins * bins {
        return Err(Error::InvalidRotation(
            "need bins >= 1 and n_orbit >= bins^2".into(),
        ));
    }
    let mut counts = vec![0usize; bins];
    let mut x = params.a;
    for _ in 0..n_orbit {
        let k = (((x - params.a) / params.width()) * bins as f64) as usize;
        counts[k.min(bins - 1)] += 1;
        x = rotation_map(params, x)?;
    }
    let u = 1.0 / bins as f64;
    let devs: Vec<f64> = counts
        .iter()
        .map(|&c| (c as f64 / n_orbit as f64 - u).abs())
        .collect();
    Ok(Discrepancy {
        total_variation: 0.5 * pairwise_sum(&devs),
        max_bin: devs.iter().cloned().fold(0.0, f64::max),
        empty_bins: counts.iter().filter(|&&c| c == 0).count(),
    })
}

/// First `n` points of the orbit of `x0`.
pub fn orbit(params: &RotationParams, x0: f64, n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n);
    let mut x = x0;
    for _ in 0..n {
        out.push(x);
        x = rotation_map(params, x)?;
    }
    Ok(out)
}

/// Perpendicular distance from `p` to the closed segment `s`.
pub fn distance_to_segment(s: &Segment, p: (f64, f64)) -> f64 {
    let (dx, dy) = (s.end.0 - s.start.0, s.end.1 - s.start.1);
    let len2 = dx * dx + dy * dy;
    let u = if len2 > 0.0 {
        (((p.0 - s.start.0) * dx + (p.1 - s.start.1) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (cx, cy) = (s.start.0 + u * dx, s.start.1 + u * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}
