//! Alternating-sign cycle patterns and their `1/|x y|`-weighted measures.
//!
//! A pattern of length `2k` visits points `(x_i, y_i)`; consecutive points
//! `2i-1, 2i` share a column and `2i, 2i+1` share a row (indices mod `2k`).
//! Column values `x_1, x_3, ...` and row values `y_1, y_3, ...` are distinct
//! and alternate in sign, and `k` is even. The weighted measure is an
//! extreme ray of the correlated-equilibrium cone.
//!
//! Sequences are stored 0-based: `xs[2j] == xs[2j + 1]` and
//! `ys[2j + 1] == ys[(2j + 2) % 2k]`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::FiniteGame;
use crate::linalg;
use crate::measure::FiniteMeasure;
use crate::rational::{format_rational, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclePattern {
    k: usize,
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

fn condition(condition: u8, detail: impl Into<String>) -> Error {
    Error::CycleCondition {
        condition,
        detail: detail.into(),
    }
}

impl CyclePattern {
    /// Validates full `2k`-length sequences.
    pub fn new(xs: Vec<Rational>, ys: Vec<Rational>) -> Result<Self> {
        if xs.len() != ys.len() || !xs.len().is_multiple_of(4) || xs.is_empty() {
            return Err(condition(
                0,
                format!(
                    "sequence lengths {} and {} must be equal to 2k with k even and positive",
                    xs.len(),
                    ys.len()
                ),
            ));
        }
        let p = Self {
            k: xs.len() / 2,
            xs,
            ys,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds a pattern from its column values `x_1, x_3, ...` and row values
    /// `y_1, y_3, ...` (each of length `k`).
    pub fn from_odd(x_odd: &[Rational], y_odd: &[Rational]) -> Result<Self> {
        if x_odd.len() != y_odd.len() {
            return Err(condition(
                0,
                "column and row value lists must have the same length k",
            ));
        }
        let k = x_odd.len();
        let mut xs = Vec::with_capacity(2 * k);
        let mut ys = Vec::with_capacity(2 * k);
        for j in 0..k {
            xs.push(x_odd[j].clone());
            xs.push(x_odd[j].clone());
            ys.push(y_odd[j].clone());
            ys.push(y_odd[(j + 1) % k.max(1)].clone());
        }
        Self::new(xs, ys)
    }

    fn validate(&self) -> Result<()> {
        let len = 2 * self.k;
        if self.k == 0 || !self.k.is_multiple_of(2) {
            return Err(condition(
                0,
                format!("k = {} must be even and positive", self.k),
            ));
        }
        if let Some(i) = (0..len).find(|&i| self.xs[i].is_zero() || self.ys[i].is_zero()) {
            return Err(condition(
                1,
                format!("entry {} is zero, all x_i and y_i must be nonzero", i + 1),
            ));
        }
        for (cond, name, odd) in [(2u8, "x", self.x_odd()), (3u8, "y", self.y_odd())] {
            let distinct: BTreeSet<&Rational> = odd.iter().collect();
            if distinct.len() != odd.len() {
                return Err(condition(cond, format!("odd-indexed {name} values repeat")));
            }
            for j in 0..odd.len() {
                let (a, b) = (&odd[j], &odd[(j + 1) % odd.len()]);
                if a.is_positive() == b.is_positive() {
                    return Err(condition(
                        cond,
                        format!(
                            "odd-indexed {name} values {} and {} do not alternate in sign",
                            format_rational(a),
                            format_rational(b)
                        ),
                    ));
                }
            }
        }
        for j in 0..self.k {
            if self.xs[2 * j] != self.xs[2 * j + 1] {
                return Err(condition(4, format!("x_{} != x_{}", 2 * j + 2, 2 * j + 1)));
            }
            if self.ys[2 * j + 1] != self.ys[(2 * j + 2) % len] {
                return Err(condition(
                    4,
                    format!("y_{} != y_{}", 2 * j + 2, (2 * j + 2) % len + 1),
                ));
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn xs(&self) -> &[Rational] {
        &self.xs
    }

    pub fn ys(&self) -> &[Rational] {
        &self.ys
    }

    /// Column values `x_1, x_3, ..., x_{2k-1}`.
    pub fn x_odd(&self) -> Vec<Rational> {
        self.xs.iter().step_by(2).cloned().collect()
    }

    /// Row values `y_1, y_3, ..., y_{2k-1}`.
    pub fn y_odd(&self) -> Vec<Rational> {
        self.ys.iter().step_by(2).cloned().collect()
    }

    pub fn points(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.xs.iter().zip(&self.ys)
    }

    /// Checks that every value is a strategy of `game`.
    pub fn fits(&self, game: &FiniteGame) -> bool {
        self.xs.iter().all(|x| game.contains_x(x)) && self.ys.iter().all(|y| game.contains_y(y))
    }

    fn shifted(&self, by: usize) -> Self {
        let len = 2 * self.k;
        Self {
            k: self.k,
            xs: (0..len).map(|i| self.xs[(i + by) % len].clone()).collect(),
            ys: (0..len).map(|i| self.ys[(i + by) % len].clone()).collect(),
        }
    }

    fn reversed(&self) -> Self {
        Self {
            k: self.k,
            xs: self.xs.iter().rev().cloned().collect(),
            ys: self.ys.iter().rev().cloned().collect(),
        }
    }

    /// All `2k` labelings of the same cycle: shifts by two positions, with and
    /// without reversal. Each yields the same measure.
    pub fn relabelings(&self) -> Vec<Self> {
        let rev = self.reversed();
        (0..self.k)
            .flat_map(|s| [self.shifted(2 * s), rev.shifted(2 * s)])
            .collect()
    }

    /// Lexicographically least relabeling with `x_1 > 0` and `y_1 > 0`.
    pub fn canonical_form(&self) -> Self {
        self.relabelings()
            .into_iter()
            .filter(|p| p.xs[0].is_positive() && p.ys[0].is_positive())
            .min_by(|a, b| (&a.xs, &a.ys).cmp(&(&b.xs, &b.ys)))
            .expect("every cycle has a first-quadrant point")
    }

    /// The homogeneous measure with weight `1/|x_i y_i|` at each point.
    pub fn measure(&self) -> FiniteMeasure {
        FiniteMeasure::new(
            self.points()
                .map(|(x, y)| (x.clone(), y.clone(), (x * y).abs().recip())),
        )
        .expect("positive weights")
    }

    /// Rows of the linear system whose solutions are the CE measures with
    /// weights `alpha_i` on the pattern's support:
    /// `alpha_{2i-1} y_{2i-1} + alpha_{2i} y_{2i} = 0` and
    /// `alpha_{2i+1} x_{2i+1} + alpha_{2i} x_{2i} = 0`.
    pub fn witness_system(&self) -> Vec<Vec<Rational>> {
        let len = 2 * self.k;
        let mut rows = Vec::with_capacity(len);
        for j in 0..self.k {
            let mut a = vec![Rational::zero(); len];
            a[2 * j] = self.ys[2 * j].clone();
            a[2 * j + 1] = self.ys[2 * j + 1].clone();
            rows.push(a);
            let mut b = vec![Rational::zero(); len];
            b[(2 * j + 2) % len] = self.xs[(2 * j + 2) % len].clone();
            b[2 * j + 1] = self.xs[2 * j + 1].clone();
            rows.push(b);
        }
        rows
    }

    /// Dimension of the solution space of [`Self::witness_system`]. A value
    /// of one means the measure is an extreme ray.
    pub fn witness_dimension(&self) -> usize {
        2 * self.k - linalg::rank(&self.witness_system(), 2 * self.k)
    }
}

pub fn cycle_measure(p: &CyclePattern) -> FiniteMeasure {
    p.measure()
}

pub fn canonical_form(p: &CyclePattern) -> CyclePattern {
    p.canonical_form()
}

/// Four-atom cycle on `x = 0.4, -0.6` and `y = 0.2, -0.8`.
pub fn square_example() -> CyclePattern {
    CyclePattern::from_odd(&[rat(2, 5), rat(-3, 5)], &[rat(1, 5), rat(-4, 5)])
        .expect("valid pattern")
}

/// Eight-atom staircase on `x, y = +-0.4, +-0.6`.
pub fn staircase_example() -> CyclePattern {
    CyclePattern::from_odd(
        &[rat(2, 5), rat(-2, 5), rat(3, 5), rat(-3, 5)],
        &[rat(3, 5), rat(-2, 5), rat(2, 5), rat(-3, 5)],
    )
    .expect("valid pattern")
}

/// Dimension of the space of weight vectors on `support(mu)` whose `x*y`
/// projections vanish. Works for any measure avoiding the axes; equals the
/// pattern witness dimension for cycle measures.
pub fn support_kernel_dimension(mu: &FiniteMeasure) -> usize {
    let pts: Vec<&(Rational, Rational)> = mu.support().collect();
    let m = pts.len();
    let mut by_x: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    let mut by_y: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        by_x.entry(x).or_default().push(i);
        by_y.entry(y).or_default().push(i);
    }
    let rows: Vec<Vec<Rational>> = by_x
        .values()
        .chain(by_y.values())
        .map(|idx| {
            let mut row = vec![Rational::zero(); m];
            for &i in idx {
                row[i] = &pts[i].0 * &pts[i].1;
            }
            row
        })
        .collect();
    m - linalg::rank(&rows, m)
}

/// Recovers the canonical pattern of a cycle-form measure: each support
/// column and row holds exactly two points, the points form one cycle, and
/// the weights are proportional to `1/|x y|`. `None` otherwise.
pub fn pattern_from_measure(mu: &FiniteMeasure) -> Option<CyclePattern> {
    let pts: Vec<(Rational, Rational)> = mu.support().cloned().collect();
    if pts.len() < 4 {
        return None;
    }
    let mut by_x: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    let mut by_y: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        by_x.entry(x).or_default().push(i);
        by_y.entry(y).or_default().push(i);
    }
    if by_x.values().chain(by_y.values()).any(|v| v.len() != 2) {
        return None;
    }
    let start = pts
        .iter()
        .position(|(x, y)| x.is_positive() && y.is_positive())?;
    let other = |group: &Vec<usize>, i: usize| if group[0] == i { group[1] } else { group[0] };
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut cur = start;
    loop {
        let next = other(&by_x[&pts[cur].0], cur);
        xs.extend([pts[cur].0.clone(), pts[next].0.clone()]);
        ys.extend([pts[cur].1.clone(), pts[next].1.clone()]);
        cur = other(&by_y[&pts[next].1], next);
        if cur == start {
            break;
        }
        if xs.len() > pts.len() {
            return None;
        }
    }
    if xs.len() != pts.len() {
        return None;
    }
    let pattern = CyclePattern::new(xs, ys).ok()?;
    (pattern.measure().normalized() == mu.normalized()).then(|| pattern.canonical_form())
}

/// Every cycle pattern supported on `game`, canonicalized and deduplicated.
///
/// Patterns are generated from ordered choices of `r` distinct positive and
/// `r` distinct negative values per axis (`k = 2r`), so each cycle appears
/// `r` times before deduplication.
pub fn enumerate_cycle_patterns(game: &FiniteGame) -> Result<Vec<CyclePattern>> {
    if game.cx().iter().chain(game.cy()).any(|v| v.is_zero()) {
        return Err(Error::InvalidGame(
            "cycle enumeration needs games without a zero strategy".into(),
        ));
    }
    let px = FiniteGame::positives(game.cx());
    let nx = FiniteGame::negatives(game.cx());
    let py = FiniteGame::positives(game.cy());
    let ny = FiniteGame::negatives(game.cy());
    let rmax = [px.len(), nx.len(), py.len(), ny.len()]
        .into_iter()
        .min()
        .unwrap_or(0);

    let per_r: Vec<BTreeSet<CyclePattern>> = (1..=rmax)
        .into_par_iter()
        .map(|r| {
            let mut set = BTreeSet::new();
            let pxs: Vec<Vec<&Rational>> = px.iter().permutations(r).collect();
            let nxs: Vec<Vec<&Rational>> = nx.iter().permutations(r).collect();
            let pys: Vec<Vec<&Rational>> = py.iter().permutations(r).collect();
            let nys: Vec<Vec<&Rational>> = ny.iter().permutations(r).collect();
            for a in &pxs {
                for b in &nxs {
                    let x_odd = interleave(a, b);
                    for c in &pys {
                        for d in &nys {
                            let y_odd = interleave(c, d);
                            let p = CyclePattern::from_odd(&x_odd, &y_odd)
                                .expect("interleaved choices satisfy the cycle conditions");
                            set.insert(p.canonical_form());
                        }
                    }
                }
            }
            set
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in per_r {
        all.extend(s);
    }
    Ok(all.into_iter().collect())
}

fn interleave(pos: &[&Rational], neg: &[&Rational]) -> Vec<Rational> {
    pos.iter()
        .zip(neg)
        .flat_map(|(p, n)| [(*p).clone(), (*n).clone()])
        .collect()
}

/// Extreme correlated equilibria (as homogeneous cycle measures) in
/// canonical-pattern order.
pub fn enumerate_extreme_ce(game: &FiniteGame) -> Result<Vec<FiniteMeasure>> {
    Ok(enumerate_cycle_patterns(game)?
        .iter()
        .map(CyclePattern::measure)
        .collect())
}
