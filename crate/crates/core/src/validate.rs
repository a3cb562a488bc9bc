//! The cross-validation suite behind `ceptool report`: every check pairs an
//! exact computation with an independent route to the same answer.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use crate::ce::{is_ce_definition, is_ce_projection};
use crate::counting::{count_extreme_ce, f_ratio, f_term};
use crate::cycle::{enumerate_cycle_patterns, enumerate_extreme_ce};
use crate::ergodic::orbit::{rational_orbit_to_cycle, RationalRotation};
use crate::ergodic::{
    conditional_mean_residuals, equidistribution_check, support_segments, RotationParams,
};
use crate::error::Result;
use crate::game::example_game;
use crate::moments::{caratheodory_split, verify_split, MomentBasis, SplitOutcome};
use crate::nash::enumerate_extreme_nash;
use crate::polytope::{ce_hrep, classify_vertices, enumerate_vertices, normalized_cycle_vertices};
use crate::rational::{rat, Rational};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let t = Instant::now();
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
            seconds: t.elapsed().as_secs_f64(),
        });
    }
}

impl fmt::Display for Report {
    /// Timings are left out so the table is reproducible.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(
                f,
                "{:<4}  {:<width$}  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Rotation support endpoints for `a = 0.2`, `b = 0.8`, `alpha = 1/sqrt(5)`,
/// written out by hand.
pub fn standard_segment_endpoints() -> [((f64, f64), (f64, f64)); 5] {
    let s = 1.0 / 5f64.sqrt();
    [
        ((0.2, -0.2), (0.8, -0.8)),
        ((-0.2, -0.2), (-0.8, -0.8)),
        ((-0.2, 0.2), (-0.8, 0.8)),
        ((0.2, 0.2 + s), (0.8 - s, 0.8)),
        ((0.8 - s, 0.2), (0.8, 0.2 + s)),
    ]
}

/// Runs every check; `big` adds the `n = 3` vertex enumeration.
pub fn run_report(big: bool) -> Report {
    let mut r = Report::default();
    let polytope_sizes: Vec<usize> = if big { vec![1, 2, 3] } else { vec![1, 2] };

    r.run("extreme Nash count n^4 (n = 1..4)", || {
        let counts: Vec<usize> = (1..=4)
            .map(|n| example_game(n).map(|g| enumerate_extreme_nash(&g).len()))
            .collect::<Result<_>>()?;
        let ok = counts.iter().enumerate().all(|(i, &c)| c == (i + 1).pow(4));
        Ok((ok, format!("{counts:?}")))
    });

    r.run("extreme CE count e(n) (n = 1..3, integral to 100)", || {
        let small: Vec<BigInt> = (1..=3).map(count_extreme_ce).collect::<Result<_>>()?;
        for n in 4..=100 {
            count_extreme_ce(n)?;
        }
        let ok = small == [1, 24, 1161].map(BigInt::from);
        Ok((ok, format!("{small:?}")))
    });

    for &n in &polytope_sizes {
        r.run(
            &format!("polytope vertices = cycle measures (n = {n})"),
            || {
                let g = example_game(n)?;
                let vs = enumerate_vertices(&ce_hrep(&g))?;
                let equal = vs.as_set() == normalized_cycle_vertices(&g)?;
                let noun = if vs.len() == 1 { "vertex" } else { "vertices" };
                Ok((
                    equal,
                    format!(
                        "{} {noun}; sets {}",
                        vs.len(),
                        if equal { "EQUAL" } else { "DIFFER" }
                    ),
                ))
            },
        );
    }

    r.run("vertex classification (n = 2)", || {
        let g = example_game(2)?;
        let c = classify_vertices(&g, &enumerate_vertices(&ce_hrep(&g))?)?;
        let counts = (
            c.product_nash.len(),
            c.cycle_non_product.len(),
            c.other.len(),
        );
        let ok = counts == (16, 8, 0);
        Ok((
            ok,
            format!(
                "{} Nash products, {} other cycles, {} unexplained",
                counts.0, counts.1, counts.2
            ),
        ))
    });

    r.run("1 <= f(n) <= 23/7 and term ratio <= 1/8 (n <= 100)", || {
        let (lo, hi, eighth) = (Rational::one(), rat(23, 7), rat(1, 8));
        for n in 1..=100u64 {
            let f = f_ratio(n)?;
            if f < lo || f > hi {
                return Ok((false, format!("f({n}) out of range")));
            }
            for s in 1..n.saturating_sub(1) {
                if f_term(n, s + 1) / f_term(n, s) > eighth {
                    return Ok((false, format!("ratio bound fails at n = {n}, s = {s}")));
                }
            }
        }
        Ok((true, "n = 1..100".into()))
    });

    r.run(
        "cycle measures are CE by both tests, witness dimension 1 (n <= 3)",
        || {
            let mut total = 0;
            for n in 1..=3 {
                let g = example_game(n)?;
                for p in enumerate_cycle_patterns(&g)? {
                    let mu = p.measure();
                    if !is_ce_definition(&g, &mu)?
                        || !is_ce_projection(&g, &mu)?
                        || p.witness_dimension() != 1
                    {
                        return Ok((false, format!("fails for n = {n}")));
                    }
                    total += 1;
                }
            }
            Ok((total == 1 + 24 + 1161, format!("{total} measures")))
        },
    );

    r.run("rotation CE residuals (16 bins, 10^4 points)", || {
        let (rx, ry) = conditional_mean_residuals(&RotationParams::standard(), 16, 10_000)?;
        Ok((
            rx <= 1e-6 && ry <= 1e-6,
            format!("lambda_x {rx:.2e}, lambda_y {ry:.2e}"),
        ))
    });

    r.run(
        "orbit equidistribution contrast (10^5 steps, 20 bins)",
        || {
            let irr = equidistribution_check(&RotationParams::standard(), 100_000, 20)?;
            let quarter =
                equidistribution_check(&RotationParams::new(0.2, 0.8, 0.15, false)?, 100_000, 20)?;
            Ok((
                irr.total_variation <= 0.01 && quarter.total_variation >= 0.5,
                format!(
                    "irrational {:.2e}, rotation 1/4 {:.3}",
                    irr.total_variation, quarter.total_variation
                ),
            ))
        },
    );

    r.run(
        "rational orbits give extreme cycles (1/1, 1/2, 1/3)",
        || {
            let mut ks = Vec::new();
            for q in 1..=3i64 {
                let rot = RationalRotation::with_rotation_number(rat(1, 5), rat(4, 5), rat(1, q))?;
                let p = rational_orbit_to_cycle(&rot, &rat(1, 5))?;
                if p.k() != 2 * q as usize || p.witness_dimension() != 1 {
                    return Ok((false, format!("rotation 1/{q}")));
                }
                ks.push(p.k());
            }
            Ok((true, format!("k = {ks:?}")))
        },
    );

    r.run("moment-preserving splits (d < 4r, d <= 8, r <= 3)", || {
        let mut splits = 0;
        for r in 1..=3usize {
            let g = example_game(r)?;
            for mu in enumerate_extreme_ce(&g)? {
                for d in 1..=8.min(mu.len() - 1) {
                    let basis = MomentBasis::by_degree(d)?;
                    match caratheodory_split(&mu, &basis) {
                        SplitOutcome::Split { mu1, mu2 }
                            if verify_split(&mu, &basis, &mu1, &mu2) =>
                        {
                            splits += 1
                        }
                        _ => {
                            return Ok((false, format!("no split for {} atoms, d = {d}", mu.len())))
                        }
                    }
                }
            }
        }
        Ok((true, format!("{splits} splits")))
    });

    r.run("rotation support endpoints", || {
        let segs = support_segments(&RotationParams::standard());
        let err = segs
            .iter()
            .zip(standard_segment_endpoints())
            .map(|(s, (a, b))| {
                [
                    s.start.0 - a.0,
                    s.start.1 - a.1,
                    s.end.0 - b.0,
                    s.end.1 - b.1,
                ]
                .into_iter()
                .fold(0f64, |m, v| m.max(v.abs()))
            })
            .fold(0f64, f64::max);
        Ok((
            segs.len() == 5 && err <= 1e-9,
            format!("max endpoint error {err:.1e}"),
        ))
    });

    r
}
