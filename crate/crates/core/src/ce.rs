//! Correlated-equilibrium tests for finitely supported joint measures.
//!
//! Two independent routes: the literal deviation inequalities, and the
//! projection test (both projections of `x*y*mu` vanish), which is
//! equivalent whenever no support point has `x*y = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::FiniteGame;
use crate::measure::{FiniteMeasure, SignedFiniteMeasure};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    X,
    Y,
}

/// A violated deviation constraint: following `recommended` and switching to
/// `deviation` changes the player's conditional payoff sum by `gain > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub player: Player,
    pub recommended: Rational,
    pub deviation: Rational,
    pub gain: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "player {:?} told {} gains {} by deviating to {}",
            self.player,
            format_rational(&self.recommended),
            format_rational(&self.gain),
            format_rational(&self.deviation)
        )
    }
}

fn check_grid(game: &FiniteGame, mu: &FiniteMeasure) -> Result<()> {
    for (x, y, _) in mu.iter() {
        if !game.contains_x(x) || !game.contains_y(y) {
            return Err(Error::OutsideGrid {
                point: format!("({}, {})", format_rational(x), format_rational(y)),
            });
        }
    }
    Ok(())
}

/// First violated deviation inequality in `(player, x, x')` order, if any.
pub fn ce_violation(game: &FiniteGame, mu: &FiniteMeasure) -> Result<Option<Violation>> {
    check_grid(game, mu)?;
    // Cells outside the support contribute nothing to the sums.
    let mut rows: BTreeMap<&Rational, Vec<(&Rational, &Rational)>> = BTreeMap::new();
    let mut cols: BTreeMap<&Rational, Vec<(&Rational, &Rational)>> = BTreeMap::new();
    for (x, y, w) in mu.iter() {
        rows.entry(x).or_default().push((y, w));
        cols.entry(y).or_default().push((x, w));
    }
    for (x, row) in &rows {
        for xd in game.cx() {
            if *x == xd {
                continue;
            }
            // sum_y mu(x,y) [x y - x' y] >= 0
            let s: Rational = row.iter().map(|(y, w)| *w * (*x * *y - xd * *y)).sum();
            if s.is_negative() {
                return Ok(Some(Violation {
                    player: Player::X,
                    recommended: (*x).clone(),
                    deviation: xd.clone(),
                    gain: -s,
                }));
            }
        }
    }
    for (y, col) in &cols {
        for yd in game.cy() {
            if *y == yd {
                continue;
            }
            // sum_x mu(x,y) [x y' - x y] >= 0
            let s: Rational = col.iter().map(|(x, w)| *w * (*x * yd - *x * *y)).sum();
            if s.is_negative() {
                return Ok(Some(Violation {
                    player: Player::Y,
                    recommended: (*y).clone(),
                    deviation: yd.clone(),
                    gain: -s,
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_ce_definition(game: &FiniteGame, mu: &FiniteMeasure) -> Result<bool> {
    Ok(ce_violation(game, mu)?.is_none())
}

/// Which integrand the projections use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrand {
    /// `x*y`, giving `kappa_x` and `kappa_y`.
    Xy,
    /// The opponent's coordinate: `y` for the X projection, `x` for the Y
    /// projection, giving `lambda_x` and `lambda_y`.
    Opponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionPair {
    pub kx: SignedFiniteMeasure,
    pub ky: SignedFiniteMeasure,
}

impl ProjectionPair {
    pub fn is_zero(&self) -> bool {
        self.kx.is_zero_measure() && self.ky.is_zero_measure()
    }
}

type PointFn = fn(&Rational, &Rational) -> Rational;

pub fn projections(mu: &FiniteMeasure, integrand: Integrand) -> ProjectionPair {
    let (fx, fy): (PointFn, PointFn) = match integrand {
        Integrand::Xy => (|x, y| x * y, |x, y| x * y),
        Integrand::Opponent => (|_, y| y.clone(), |x, _| x.clone()),
    };
    ProjectionPair {
        kx: SignedFiniteMeasure::new(mu.iter().map(|(x, y, w)| (x.clone(), fx(x, y) * w))),
        ky: SignedFiniteMeasure::new(mu.iter().map(|(x, y, w)| (y.clone(), fy(x, y) * w))),
    }
}

/// Projection test. Requires `x*y != 0` on the support; callers fall back to
/// [`is_ce_definition`] for measures touching the axes.
pub fn is_ce_projection(game: &FiniteGame, mu: &FiniteMeasure) -> Result<bool> {
    check_grid(game, mu)?;
    if let Some((x, y, _)) = mu.iter().find(|(x, y, _)| x.is_zero() || y.is_zero()) {
        return Err(Error::ZeroCoordinateAtom {
            x: format_rational(x),
            y: format_rational(y),
        });
    }
    Ok(projections(mu, Integrand::Xy).is_zero())
}
