//! Nash equilibria of the game model. A strategy pair is an equilibrium
//! exactly when both mixed strategies have mean zero; the extreme ones put
//! each side on `0` or on a zero-mean pair `u < 0 < v`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{has_zero, FiniteGame};
use crate::measure::{measure_mean, product_measure, FiniteMeasure, MixedStrategy};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NashPair {
    pub sigma: MixedStrategy,
    pub tau: MixedStrategy,
}

impl NashPair {
    pub fn product(&self) -> FiniteMeasure {
        product_measure(&self.sigma, &self.tau)
    }
}

fn check_support(axis: &[Rational], m: &MixedStrategy, player: &str) -> Result<()> {
    for v in m.support() {
        if axis.binary_search(v).is_err() {
            return Err(Error::OutsideGrid {
                point: format!("{} (player {player})", format_rational(v)),
            });
        }
    }
    if !m.is_proper() {
        return Err(Error::InvalidStrategy(format!(
            "strategy of player {player} has mass {}, expected 1",
            format_rational(&m.mass())
        )));
    }
    Ok(())
}

pub fn is_nash(game: &FiniteGame, sigma: &MixedStrategy, tau: &MixedStrategy) -> Result<bool> {
    check_support(game.cx(), sigma, "X")?;
    check_support(game.cy(), tau, "Y")?;
    Ok(measure_mean(sigma).is_zero() && measure_mean(tau).is_zero())
}

/// The unique probability measure on `{u, v}` with mean zero:
/// weight `v/(v-u)` on `u` and `-u/(v-u)` on `v`.
pub fn zero_mean_pair(u: &Rational, v: &Rational) -> MixedStrategy {
    debug_assert!(u.is_negative() && v.is_positive());
    let span = v - u;
    MixedStrategy::new([(u.clone(), v / &span), (v.clone(), -u / &span)])
        .expect("weights are positive")
}

/// Extreme points of the zero-mean simplex on one axis: `δ0` first (when `0`
/// is a strategy), then the pairs in lexicographic `(u, v)` order.
pub fn extreme_zero_mean_strategies(axis: &[Rational]) -> Vec<MixedStrategy> {
    let mut out = Vec::new();
    if has_zero(axis) {
        out.push(MixedStrategy::point_mass(Rational::zero()));
    }
    let negatives: Vec<&Rational> = axis.iter().filter(|v| v.is_negative()).collect();
    let positives: Vec<&Rational> = axis.iter().filter(|v| v.is_positive()).collect();
    for u in &negatives {
        for v in &positives {
            out.push(zero_mean_pair(u, v));
        }
    }
    out
}

pub fn enumerate_extreme_nash(game: &FiniteGame) -> Vec<NashPair> {
    let sigmas = extreme_zero_mean_strategies(game.cx());
    let taus = extreme_zero_mean_strategies(game.cy());
    sigmas
        .iter()
        .flat_map(|s| {
            taus.iter().map(move |t| NashPair {
                sigma: s.clone(),
                tau: t.clone(),
            })
        })
        .collect()
}

/// `n^4`, the number of extreme Nash equilibria of an example game of size `n`.
pub fn count_extreme_nash(n: u64) -> BigInt {
    num_traits::pow(BigInt::from(n), 4)
}
