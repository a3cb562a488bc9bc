//! The zero-sum game model: strategy sets inside [-1, 1], payoff `x*y` to X
//! and `-x*y` to Y.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, rat, Rational};

/// A finite game with utilities `u_X(x, y) = x*y = -u_Y(x, y)`.
///
/// Both strategy lists are sorted ascending, duplicate-free, inside [-1, 1],
/// and each holds at least one positive and one negative value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGame {
    cx: Vec<Rational>,
    cy: Vec<Rational>,
}

impl FiniteGame {
    pub fn new(cx: Vec<Rational>, cy: Vec<Rational>) -> Result<Self> {
        Ok(Self {
            cx: validate_axis("X", cx)?,
            cy: validate_axis("Y", cy)?,
        })
    }

    pub fn cx(&self) -> &[Rational] {
        &self.cx
    }

    pub fn cy(&self) -> &[Rational] {
        &self.cy
    }

    pub fn contains_x(&self, x: &Rational) -> bool {
        self.cx.binary_search(x).is_ok()
    }

    pub fn contains_y(&self, y: &Rational) -> bool {
        self.cy.binary_search(y).is_ok()
    }

    pub fn index_x(&self, x: &Rational) -> Option<usize> {
        self.cx.binary_search(x).ok()
    }

    pub fn index_y(&self, y: &Rational) -> Option<usize> {
        self.cy.binary_search(y).ok()
    }

    /// Payoff to player X. Player Y receives the negation.
    pub fn utility_x(x: &Rational, y: &Rational) -> Rational {
        x * y
    }

    /// Number of cells `|cx| * |cy|` of the joint strategy grid.
    pub fn grid_size(&self) -> usize {
        self.cx.len() * self.cy.len()
    }

    /// Row-major position of `(x, y)` in the joint grid.
    pub fn cell_index(&self, x: &Rational, y: &Rational) -> Option<usize> {
        Some(self.index_x(x)? * self.cy.len() + self.index_y(y)?)
    }

    /// Positive part of each axis, ascending. Used by the example-game machinery.
    pub fn positives(axis: &[Rational]) -> Vec<Rational> {
        axis.iter().filter(|v| v.is_positive()).cloned().collect()
    }

    pub fn negatives(axis: &[Rational]) -> Vec<Rational> {
        axis.iter().filter(|v| v.is_negative()).cloned().collect()
    }

    /// The example-game size `n` when the game has `n` positive and `n`
    /// negative strategies on both axes and no zero strategy.
    pub fn example_size(&self) -> Option<usize> {
        let n = Self::positives(&self.cx).len();
        let ok = [&self.cx, &self.cy].iter().all(|axis| {
            Self::positives(axis).len() == n
                && Self::negatives(axis).len() == n
                && axis.len() == 2 * n
        });
        ok.then_some(n)
    }
}

fn validate_axis(name: &str, mut values: Vec<Rational>) -> Result<Vec<Rational>> {
    let one = Rational::one();
    for v in &values {
        if v.abs() > one {
            return Err(Error::InvalidGame(format!(
                "strategy {} of player {name} lies outside [-1, 1]",
                format_rational(v)
            )));
        }
    }
    values.sort();
    if values.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidGame(format!(
            "duplicate strategy for player {name}"
        )));
    }
    if !values.iter().any(|v| v.is_positive()) {
        return Err(Error::InvalidGame(format!(
            "player {name} has no positive strategy (game model requires one)"
        )));
    }
    if !values.iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidGame(format!(
            "player {name} has no negative strategy (game model requires one)"
        )));
    }
    Ok(values)
}

/// Builds an example-style game from its negative and positive parts.
///
/// Negative values must lie in `[-1, 0)` and positive values in `(0, 1]`;
/// zero is rejected because these games have no zero strategy.
pub fn make_example_game(
    neg_x: &[Rational],
    pos_x: &[Rational],
    neg_y: &[Rational],
    pos_y: &[Rational],
) -> Result<FiniteGame> {
    let axis = |name: &str, neg: &[Rational], pos: &[Rational]| -> Result<Vec<Rational>> {
        for v in neg {
            if !v.is_negative() {
                return Err(Error::InvalidGame(format!(
                    "negative strategy {} of player {name} is not in [-1, 0)",
                    format_rational(v)
                )));
            }
        }
        for v in pos {
            if !v.is_positive() {
                return Err(Error::InvalidGame(format!(
                    "positive strategy {} of player {name} is not in (0, 1]",
                    format_rational(v)
                )));
            }
        }
        Ok(neg.iter().chain(pos).cloned().collect())
    };
    FiniteGame::new(axis("X", neg_x, pos_x)?, axis("Y", neg_y, pos_y)?)
}

/// The example game of size `n`: both players use `{±i/n : 1 <= i <= n}`.
/// For `n = 1` this is matching pennies.
pub fn example_game(n: usize) -> Result<FiniteGame> {
    if n == 0 {
        return Err(Error::InvalidGame("example size must be at least 1".into()));
    }
    let pos: Vec<Rational> = (1..=n as i64).map(|i| rat(i, n as i64)).collect();
    let neg: Vec<Rational> = pos.iter().map(|v| -v).collect();
    make_example_game(&neg, &pos, &neg, &pos)
}

pub fn matching_pennies() -> FiniteGame {
    FiniteGame::new(vec![int(-1), int(1)], vec![int(-1), int(1)])
        .expect("matching pennies is a valid game")
}

/// Checks the `0` strategy used by the extreme-Nash case split.
pub fn has_zero(axis: &[Rational]) -> bool {
    axis.iter().any(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_pennies_from_parts() {
        let g = make_example_game(&[int(-1)], &[int(1)], &[int(-1)], &[int(1)]).unwrap();
        assert_eq!(g, matching_pennies());
        assert_eq!(g.cx(), &[int(-1), int(1)]);
        assert_eq!(g.example_size(), Some(1));
    }

    #[test]
    fn square_cycle_game_is_sorted() {
        let g =
            make_example_game(&[rat(-3, 5)], &[rat(2, 5)], &[rat(-4, 5)], &[rat(1, 5)]).unwrap();
        assert_eq!(g.cx(), &[rat(-3, 5), rat(2, 5)]);
        assert_eq!(g.cy(), &[rat(-4, 5), rat(1, 5)]);
    }

    #[test]
    fn rejects_missing_positive_part() {
        let err = make_example_game(&[int(-1)], &[int(1)], &[int(-1)], &[]).unwrap_err();
        assert!(matches!(err, Error::InvalidGame(ref m) if m.contains("no positive")));
    }

    #[test]
    fn rejects_out_of_range_and_zero() {
        assert!(make_example_game(&[rat(-3, 2)], &[int(1)], &[int(-1)], &[int(1)]).is_err());
        assert!(make_example_game(&[int(0)], &[int(1)], &[int(-1)], &[int(1)]).is_err());
        assert!(make_example_game(&[int(-1)], &[int(0)], &[int(-1)], &[int(1)]).is_err());
        assert!(make_example_game(&[int(-1), int(-1)], &[int(1)], &[int(-1)], &[int(1)]).is_err());
    }

    #[test]
    fn general_games_may_contain_zero() {
        let g = FiniteGame::new(vec![int(-1), int(0), int(1)], vec![int(-1), int(1)]).unwrap();
        assert!(has_zero(g.cx()));
        assert_eq!(g.example_size(), None);
        assert_eq!(g.cell_index(&int(0), &int(1)), Some(3));
    }

    #[test]
    fn example_game_sizes() {
        for n in 1..=4 {
            let g = example_game(n).unwrap();
            assert_eq!(g.example_size(), Some(n));
            assert_eq!(g.grid_size(), 4 * n * n);
        }
        assert!(example_game(0).is_err());
    }
}
