//! Finitely supported measures with exact rational weights.
//!
//! Atom maps are `BTreeMap`s so iteration order is the sorted key order, and
//! zero-weight atoms are dropped on construction so the key set is the
//! support.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A nonnegative measure on one strategy axis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedStrategy {
    atoms: BTreeMap<Rational, Rational>,
}

impl MixedStrategy {
    /// Collects `(value, weight)` pairs, summing repeated values. Negative
    /// weights are rejected.
    pub fn new(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut atoms: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (value, weight) in pairs {
            if weight.is_negative() {
                return Err(Error::InvalidStrategy(format!(
                    "negative weight {} at {}",
                    format_rational(&weight),
                    format_rational(&value)
                )));
            }
            *atoms.entry(value).or_insert_with(Rational::zero) += weight;
        }
        atoms.retain(|_, w| !w.is_zero());
        Ok(Self { atoms })
    }

    pub fn point_mass(value: Rational) -> Self {
        Self {
            atoms: BTreeMap::from([(value, Rational::one())]),
        }
    }

    pub fn atoms(&self) -> &BTreeMap<Rational, Rational> {
        &self.atoms
    }

    pub fn weight(&self, value: &Rational) -> Rational {
        self.atoms
            .get(value)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn mass(&self) -> Rational {
        self.atoms.values().sum()
    }

    pub fn is_proper(&self) -> bool {
        self.mass().is_one()
    }

    pub fn support(&self) -> impl Iterator<Item = &Rational> {
        self.atoms.keys()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `a*self + b*other` for nonnegative `a`, `b`.
    pub fn combine(&self, a: &Rational, other: &Self, b: &Rational) -> Result<Self> {
        let scaled = |m: &Self, c: &Rational| {
            m.atoms
                .iter()
                .map(|(v, w)| (v.clone(), w * c))
                .collect::<Vec<_>>()
        };
        Self::new(scaled(self, a).into_iter().chain(scaled(other, b)))
    }
}

/// A nonnegative measure on the joint grid `C_X x C_Y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMeasure {
    atoms: BTreeMap<(Rational, Rational), Rational>,
}

impl FiniteMeasure {
    pub fn new(triples: impl IntoIterator<Item = (Rational, Rational, Rational)>) -> Result<Self> {
        let mut atoms: BTreeMap<(Rational, Rational), Rational> = BTreeMap::new();
        for (x, y, w) in triples {
            if w.is_negative() {
                return Err(Error::InvalidStrategy(format!(
                    "negative weight {} at ({}, {})",
                    format_rational(&w),
                    format_rational(&x),
                    format_rational(&y)
                )));
            }
            *atoms.entry((x, y)).or_insert_with(Rational::zero) += w;
        }
        atoms.retain(|_, w| !w.is_zero());
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &BTreeMap<(Rational, Rational), Rational> {
        &self.atoms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational)> {
        self.atoms.iter().map(|((x, y), w)| (x, y, w))
    }

    pub fn weight(&self, x: &Rational, y: &Rational) -> Rational {
        self.atoms
            .get(&(x.clone(), y.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn mass(&self) -> Rational {
        self.atoms.values().sum()
    }

    pub fn is_proper(&self) -> bool {
        self.mass().is_one()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &(Rational, Rational)> {
        self.atoms.keys()
    }

    /// `c * self`; a zero factor yields the zero measure.
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(
            !factor.is_negative(),
            "measures scale by nonnegative factors"
        );
        let mut atoms = BTreeMap::new();
        if !factor.is_zero() {
            for (k, w) in &self.atoms {
                atoms.insert(k.clone(), w * factor);
            }
        }
        Self { atoms }
    }

    /// The proper (mass one) measure on the same ray. `None` for the zero measure.
    pub fn normalized(&self) -> Option<Self> {
        let mass = self.mass();
        (!mass.is_zero()).then(|| self.scaled(&mass.recip()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        for (k, w) in &other.atoms {
            *atoms.entry(k.clone()).or_insert_with(Rational::zero) += w;
        }
        atoms.retain(|_, w| !w.is_zero());
        Self { atoms }
    }

    pub fn marginal_x(&self) -> MixedStrategy {
        MixedStrategy::new(self.iter().map(|(x, _, w)| (x.clone(), w.clone())))
            .expect("marginal of a nonnegative measure")
    }

    pub fn marginal_y(&self) -> MixedStrategy {
        MixedStrategy::new(self.iter().map(|(_, y, w)| (y.clone(), w.clone())))
            .expect("marginal of a nonnegative measure")
    }

    /// Dense weight vector in the row-major grid order of `game`.
    pub fn to_grid_vector(&self, game: &crate::game::FiniteGame) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); game.grid_size()];
        for (x, y, w) in self.iter() {
            let idx = game.cell_index(x, y).ok_or_else(|| Error::OutsideGrid {
                point: format!("({}, {})", format_rational(x), format_rational(y)),
            })?;
            v[idx] = w.clone();
        }
        Ok(v)
    }

    pub fn from_grid_vector(game: &crate::game::FiniteGame, v: &[Rational]) -> Result<Self> {
        let ny = game.cy().len();
        Self::new(v.iter().enumerate().map(|(i, w)| {
            (
                game.cx()[i / ny].clone(),
                game.cy()[i % ny].clone(),
                w.clone(),
            )
        }))
    }
}

/// A signed measure on one axis, used for the projections of a joint measure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedFiniteMeasure {
    atoms: BTreeMap<Rational, Rational>,
}

impl SignedFiniteMeasure {
    pub fn new(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut atoms: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (p, w) in pairs {
            *atoms.entry(p).or_insert_with(Rational::zero) += w;
        }
        atoms.retain(|_, w| !w.is_zero());
        Self { atoms }
    }

    pub fn atoms(&self) -> &BTreeMap<Rational, Rational> {
        &self.atoms
    }

    pub fn weight(&self, p: &Rational) -> Rational {
        self.atoms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero_measure(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Independent joint distribution: weight `sigma[x] * tau[y]` at `(x, y)`.
pub fn product_measure(sigma: &MixedStrategy, tau: &MixedStrategy) -> FiniteMeasure {
    let triples = sigma.atoms().iter().flat_map(|(x, wx)| {
        tau.atoms()
            .iter()
            .map(move |(y, wy)| (x.clone(), y.clone(), wx * wy))
    });
    FiniteMeasure::new(triples).expect("product of nonnegative weights")
}

/// First moment `sum value * weight`.
pub fn measure_mean(m: &MixedStrategy) -> Rational {
    m.atoms().iter().map(|(v, w)| v * w).sum()
}
