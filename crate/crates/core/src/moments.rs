//! Moment-preserving splits of finitely supported measures.
//!
//! A set of measures fixed by finitely many moments `int g_j dmu` has
//! extreme points with at most `d` atoms. Any measure with more atoms than
//! moments splits as `mu = (mu1 + mu2) / 2` with `mu1`, `mu2` sharing its
//! moments, so no such description can single out the extreme correlated
//! equilibria, whose supports are unbounded.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ce::is_ce_projection;
use crate::cycle::CyclePattern;
use crate::error::{Error, Result};
use crate::game::{example_game, FiniteGame};
use crate::linalg;
use crate::measure::FiniteMeasure;
use crate::rational::{format_rational, rat, Rational};

/// `x^p y^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub p: u32,
    pub q: u32,
}

impl Monomial {
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        num_traits::pow(x.clone(), self.p as usize) * num_traits::pow(y.clone(), self.q as usize)
    }

    pub fn degree(&self) -> u32 {
        self.p + self.q
    }

    fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad monomial {text:?}"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "1" {
            return Ok(Self { p: 0, q: 0 });
        }
        let (mut p, mut q) = (0u32, 0u32);
        let chars: Vec<char> = t.chars().filter(|&c| c != '*').collect();
        let mut i = 0;
        if chars.is_empty() {
            return Err(bad());
        }
        while i < chars.len() {
            let var = chars[i];
            i += 1;
            let mut exp = 1u32;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                exp = digits.parse().map_err(|_| bad())?;
            }
            match var {
                'x' => p += exp,
                'y' => q += exp,
                _ => return Err(bad()),
            }
        }
        Ok(Self { p, q })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, v: char, e: u32| match e {
            0 => Ok(()),
            1 => write!(f, "{v}"),
            _ => write!(f, "{v}^{e}"),
        };
        if self.p == 0 && self.q == 0 {
            return write!(f, "1");
        }
        part(f, 'x', self.p)?;
        part(f, 'y', self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentBasis {
    maps: Vec<Monomial>,
}

impl MomentBasis {
    pub fn new(maps: Vec<Monomial>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Parse(
                "moment basis must have at least one map".into(),
            ));
        }
        Ok(Self { maps })
    }

    /// Comma-separated monomials, e.g. `"1,x,y,xy,x^2y"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(
            text.split(',')
                .map(Monomial::parse)
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// The first `d` monomials ordered by total degree, then by decreasing
    /// power of `x`: `1, x, y, x^2, xy, y^2, ...`.
    pub fn by_degree(d: usize) -> Result<Self> {
        let mut maps = Vec::with_capacity(d);
        let mut deg = 0u32;
        while maps.len() < d {
            for p in (0..=deg).rev() {
                if maps.len() < d {
                    maps.push(Monomial { p, q: deg - p });
                }
            }
            deg += 1;
        }
        Self::new(maps)
    }

    pub fn d(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Monomial] {
        &self.maps
    }
}

impl fmt::Display for MomentBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.maps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentVector {
    pub values: Vec<Rational>,
}

impl fmt::Display for MomentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn moments_of(mu: &FiniteMeasure, basis: &MomentBasis) -> MomentVector {
    MomentVector {
        values: basis
            .maps
            .iter()
            .map(|g| mu.iter().map(|(x, y, w)| g.eval(x, y) * w).sum())
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    /// `mu = (mu1 + mu2) / 2`, all three with equal moments.
    Split {
        mu1: FiniteMeasure,
        mu2: FiniteMeasure,
    },
    ExtremeForBasis,
}

impl SplitOutcome {
    pub fn is_split(&self) -> bool {
        matches!(self, Self::Split { .. })
    }
}

/// Perturbs the weights of `mu` along a null vector `v` of
/// `G[j][i] = g_j(p_i) mu(p_i)`: `mu1, mu2 = mu * (1 +- t v)` with `t` the
/// largest step keeping both nonnegative, so one atom drops out of one half.
///
/// When every null vector is a multiple of the all-ones vector (all moments
/// of `mu` vanish) the only splits rescale `mu`; `(mu/2, 3mu/2)` is returned.
pub fn caratheodory_split(mu: &FiniteMeasure, basis: &MomentBasis) -> SplitOutcome {
    let atoms: Vec<(&Rational, &Rational, &Rational)> = mu.iter().collect();
    let m = atoms.len();
    if m == 0 {
        return SplitOutcome::ExtremeForBasis;
    }
    let g: Vec<Vec<Rational>> = basis
        .maps
        .iter()
        .map(|gj| atoms.iter().map(|(x, y, w)| gj.eval(x, y) * *w).collect())
        .collect();
    let null = linalg::null_space(&g, m);
    if null.is_empty() {
        return SplitOutcome::ExtremeForBasis;
    }
    let build = |factor: &dyn Fn(usize) -> Rational| {
        FiniteMeasure::new(
            atoms
                .iter()
                .enumerate()
                .map(|(i, (x, y, w))| ((*x).clone(), (*y).clone(), factor(i) * *w)),
        )
        .expect("nonnegative weights")
    };
    let constant = |v: &Vec<Rational>| v.iter().all(|c| c == &v[0]);
    match null.iter().find(|v| !constant(v)) {
        Some(v) => {
            let peak = v.iter().map(|c| c.abs()).max().expect("nonempty");
            let t = peak.recip();
            let mu1 = build(&|i| Rational::one() + &t * &v[i]);
            let mu2 = build(&|i| Rational::one() - &t * &v[i]);
            SplitOutcome::Split { mu1, mu2 }
        }
        None => SplitOutcome::Split {
            mu1: mu.scaled(&rat(1, 2)),
            mu2: mu.scaled(&rat(3, 2)),
        },
    }
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub n_moments: usize,
    pub r: usize,
    pub game: FiniteGame,
    pub pattern: CyclePattern,
    pub basis: MomentBasis,
    pub outcome: SplitOutcome,
    pub moments_preserved: bool,
    pub witness_dimension: usize,
    /// Whether `mu1` and `mu2` are themselves correlated equilibria.
    pub halves_ce: Option<(bool, bool)>,
}

impl DemoReport {
    pub fn atoms(&self) -> usize {
        2 * self.pattern.k()
    }

    pub fn succeeded(&self) -> bool {
        self.outcome.is_split() && self.moments_preserved && self.witness_dimension == 1
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "moments: {} ({})", self.n_moments, self.basis)?;
        writeln!(
            f,
            "extreme CE: cycle with {} atoms in the n = {} example game",
            self.atoms(),
            self.r
        )?;
        writeln!(
            f,
            "extremality witness dimension: {}",
            self.witness_dimension
        )?;
        match &self.outcome {
            SplitOutcome::Split { mu1, mu2 } => {
                writeln!(
                    f,
                    "split: mu1 has {} atoms, mu2 has {} atoms, moments preserved: {}",
                    mu1.len(),
                    mu2.len(),
                    self.moments_preserved
                )?;
                if let Some((a, b)) = self.halves_ce {
                    writeln!(f, "halves are correlated equilibria: {a}, {b}")?;
                }
            }
            SplitOutcome::ExtremeForBasis => writeln!(f, "split: none (extreme for this basis)")?,
        }
        Ok(())
    }
}

/// Builds an extreme CE with more atoms than `n_moments` (a cycle on
/// `4r > n_moments` points of the `n = r` example game), splits it under the
/// first `n_moments` monomials, and reports the split next to the
/// extremality witness.
pub fn non_describability_demo(n_moments: usize) -> Result<DemoReport> {
    if n_moments == 0 {
        return Err(Error::Parse("need at least one moment".into()));
    }
    let r = n_moments / 4 + 1;
    let game = example_game(r)?;
    let odd: Vec<Rational> = (1..=r as i64)
        .flat_map(|i| [rat(i, r as i64), rat(-i, r as i64)])
        .collect();
    let pattern = CyclePattern::from_odd(&odd, &odd)?;
    let mu = pattern.measure();
    let basis = MomentBasis::by_degree(n_moments)?;
    let outcome = caratheodory_split(&mu, &basis);
    let target = moments_of(&mu, &basis);
    let (moments_preserved, halves_ce) = match &outcome {
        SplitOutcome::Split { mu1, mu2 } => (
            moments_of(mu1, &basis) == target && moments_of(mu2, &basis) == target,
            Some((is_ce_projection(&game, mu1)?, is_ce_projection(&game, mu2)?)),
        ),
        SplitOutcome::ExtremeForBasis => (false, None),
    };
    Ok(DemoReport {
        n_moments,
        r,
        witness_dimension: pattern.witness_dimension(),
        game,
        pattern,
        basis,
        outcome,
        moments_preserved,
        halves_ce,
    })
}

/// Checks the split identities exactly: halves average to `mu`, share its
/// moments, differ, and are nonzero.
pub fn verify_split(
    mu: &FiniteMeasure,
    basis: &MomentBasis,
    mu1: &FiniteMeasure,
    mu2: &FiniteMeasure,
) -> bool {
    let target = moments_of(mu, basis);
    mu1.add(mu2) == mu.scaled(&Rational::from_integer(2.into()))
        && moments_of(mu1, basis) == target
        && moments_of(mu2, basis) == target
        && mu1 != mu2
        && !mu1.mass().is_zero()
        && !mu2.mass().is_zero()
}
