//! The proper correlated-equilibrium polytope in H-representation and its
//! exact vertex enumeration, used as an independent check on the cycle
//! construction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cycle::{enumerate_extreme_ce, pattern_from_measure};
use crate::dd::{self, DdStats};
use crate::error::{Error, Result};
use crate::game::FiniteGame;
use crate::linalg;
use crate::measure::FiniteMeasure;
use crate::nash::enumerate_extreme_nash;
use crate::rational::{primitive_integer_vector, Rational};

/// `coeffs . z >= rhs` (or `=` for equality rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn value(&self, z: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(z)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn slack(&self, z: &[Rational]) -> Rational {
        self.value(z) - &self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub inequalities: Vec<Constraint>,
    pub equalities: Vec<Constraint>,
}

impl HPolytope {
    pub fn contains(&self, z: &[Rational]) -> bool {
        self.inequalities.iter().all(|c| !c.slack(z).is_negative())
            && self.equalities.iter().all(|c| c.slack(z).is_zero())
    }

    /// Rows tight at `z`: the tight inequalities plus every equality.
    pub fn tight_rows(&self, z: &[Rational]) -> Vec<Vec<Rational>> {
        self.inequalities
            .iter()
            .filter(|c| c.slack(z).is_zero())
            .chain(&self.equalities)
            .map(|c| c.coeffs.clone())
            .collect()
    }

    fn tight_set(&self, z: &[Rational]) -> BTreeSet<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, c)| c.slack(z).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// A feasible point is a vertex iff its tight rows have full rank.
    pub fn is_basic_feasible(&self, z: &[Rational]) -> bool {
        self.contains(z) && linalg::rank(&self.tight_rows(z), self.dim) == self.dim
    }

    /// `{z >= 0, sum z = 1}`.
    pub fn standard_simplex(dim: usize) -> Self {
        Self {
            dim,
            inequalities: nonnegativity(dim),
            equalities: vec![normalization(dim)],
        }
    }

    /// `[0, 1]^dim`.
    pub fn hypercube(dim: usize) -> Self {
        let mut inequalities = nonnegativity(dim);
        for i in 0..dim {
            let mut coeffs = vec![Rational::zero(); dim];
            coeffs[i] = -Rational::one();
            inequalities.push(Constraint {
                coeffs,
                rhs: -Rational::one(),
            });
        }
        Self {
            dim,
            inequalities,
            equalities: Vec::new(),
        }
    }
}

fn nonnegativity(dim: usize) -> Vec<Constraint> {
    (0..dim)
        .map(|i| {
            let mut coeffs = vec![Rational::zero(); dim];
            coeffs[i] = Rational::one();
            Constraint {
                coeffs,
                rhs: Rational::zero(),
            }
        })
        .collect()
}

fn normalization(dim: usize) -> Constraint {
    Constraint {
        coeffs: vec![Rational::one(); dim],
        rhs: Rational::one(),
    }
}

/// Deviation rows for both players, then nonnegativity, then `sum mu = 1`.
/// Coordinates follow the row-major grid order of `game`.
pub fn ce_hrep(game: &FiniteGame) -> HPolytope {
    let dim = game.grid_size();
    let mut inequalities = Vec::new();
    for x in game.cx() {
        for xd in game.cx() {
            if x == xd {
                continue;
            }
            // sum_y mu(x, y) (x - x') y >= 0
            let mut coeffs = vec![Rational::zero(); dim];
            for y in game.cy() {
                let idx = game.cell_index(x, y).expect("grid point");
                coeffs[idx] = (x - xd) * y;
            }
            inequalities.push(Constraint {
                coeffs,
                rhs: Rational::zero(),
            });
        }
    }
    for y in game.cy() {
        for yd in game.cy() {
            if y == yd {
                continue;
            }
            // sum_x mu(x, y) x (y' - y) >= 0
            let mut coeffs = vec![Rational::zero(); dim];
            for x in game.cx() {
                let idx = game.cell_index(x, y).expect("grid point");
                coeffs[idx] = x * (yd - y);
            }
            inequalities.push(Constraint {
                coeffs,
                rhs: Rational::zero(),
            });
        }
    }
    inequalities.extend(nonnegativity(dim));
    HPolytope {
        dim,
        inequalities,
        equalities: vec![normalization(dim)],
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    pub vertices: Vec<Vec<Rational>>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn as_set(&self) -> BTreeSet<Vec<Rational>> {
        self.vertices.iter().cloned().collect()
    }
}

fn homogenize(c: &Constraint) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(c.coeffs.len() + 1);
    row.push(-c.rhs.clone());
    row.extend(c.coeffs.iter().cloned());
    primitive_integer_vector(&row)
}

/// Exact vertex list of a bounded polytope, sorted lexicographically.
pub fn enumerate_vertices(p: &HPolytope) -> Result<VertexSet> {
    enumerate_vertices_with_stats(p).map(|(v, _)| v)
}

pub fn enumerate_vertices_with_stats(p: &HPolytope) -> Result<(VertexSet, DdStats)> {
    // Cone over (t, z): t >= 0, a.z - b t >= 0, e.z - c t = 0.
    let mut ineq = Vec::with_capacity(p.inequalities.len() + 1);
    let mut t_row = vec![BigInt::zero(); p.dim + 1];
    t_row[0] = BigInt::one();
    ineq.push(t_row);
    ineq.extend(p.inequalities.iter().map(homogenize));
    let eq: Vec<Vec<BigInt>> = p.equalities.iter().map(homogenize).collect();

    let (rays, stats) = dd::extreme_rays(p.dim + 1, &ineq, &eq)?;
    let mut vertices = BTreeSet::new();
    for r in &rays {
        let t = &r.coords[0];
        if !t.is_positive() {
            return Err(Error::Internal(
                "polytope has a recession direction, expected a bounded system".into(),
            ));
        }
        let t = Rational::from_integer(t.clone());
        vertices.insert(
            r.coords[1..]
                .iter()
                .map(|c| Rational::from_integer(c.clone()) / &t)
                .collect::<Vec<_>>(),
        );
    }
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    Ok((
        VertexSet {
            vertices: vertices.into_iter().collect(),
        },
        stats,
    ))
}

/// Edges of the vertex graph by the rank test: two vertices are adjacent iff
/// their common tight rows have rank `dim - 1`.
pub fn adjacency_by_rank(p: &HPolytope, vs: &VertexSet) -> Vec<(usize, usize)> {
    let tight: Vec<BTreeSet<usize>> = vs.vertices.iter().map(|v| p.tight_set(v)).collect();
    let mut edges = Vec::new();
    for i in 0..vs.len() {
        for j in (i + 1)..vs.len() {
            let rows: Vec<Vec<Rational>> = tight[i]
                .intersection(&tight[j])
                .map(|&k| p.inequalities[k].coeffs.clone())
                .chain(p.equalities.iter().map(|c| c.coeffs.clone()))
                .collect();
            if linalg::rank(&rows, p.dim) == p.dim - 1 {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Edges by the combinatorial test: no third vertex is tight on every row
/// the pair shares.
pub fn adjacency_by_inclusion(p: &HPolytope, vs: &VertexSet) -> Vec<(usize, usize)> {
    let tight: Vec<BTreeSet<usize>> = vs.vertices.iter().map(|v| p.tight_set(v)).collect();
    let mut edges = Vec::new();
    for i in 0..vs.len() {
        for j in (i + 1)..vs.len() {
            let common: BTreeSet<usize> = tight[i].intersection(&tight[j]).cloned().collect();
            let blocked = (0..vs.len()).any(|k| k != i && k != j && common.is_subset(&tight[k]));
            if !blocked {
                edges.push((i, j));
            }
        }
    }
    edges
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    /// Indices of vertices equal to a product of an extreme Nash pair.
    pub product_nash: Vec<usize>,
    /// Indices of non-product vertices that are normalized cycle measures.
    pub cycle_non_product: Vec<usize>,
    pub other: Vec<usize>,
}

pub fn classify_vertices(game: &FiniteGame, vs: &VertexSet) -> Result<Classification> {
    let products: BTreeSet<FiniteMeasure> = enumerate_extreme_nash(game)
        .iter()
        .map(|p| p.product())
        .collect();
    let mut out = Classification::default();
    for (i, v) in vs.vertices.iter().enumerate() {
        let mu = FiniteMeasure::from_grid_vector(game, v)?;
        if products.contains(&mu) {
            out.product_nash.push(i);
        } else if pattern_from_measure(&mu).is_some() {
            out.cycle_non_product.push(i);
        } else {
            out.other.push(i);
        }
    }
    Ok(out)
}

/// The cycle-enumerated extreme CEs, normalized to mass one, as grid vectors.
pub fn normalized_cycle_vertices(game: &FiniteGame) -> Result<BTreeSet<Vec<Rational>>> {
    enumerate_extreme_ce(game)?
        .into_iter()
        .map(|mu| {
            mu.normalized()
                .expect("cycle measures are nonzero")
                .to_grid_vector(game)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::is_ce_definition;
    use crate::game::{example_game, matching_pennies};
    use crate::rational::{int, rat};

    #[test]
    fn matching_pennies_rows() {
        let p = ce_hrep(&matching_pennies());
        assert_eq!(p.dim, 4);
        assert_eq!(p.inequalities.len(), 4 + 4);
        assert_eq!(p.equalities.len(), 1);
    }

    #[test]
    fn n2_rows() {
        let p = ce_hrep(&example_game(2).unwrap());
        assert_eq!(p.dim, 16);
        assert_eq!(p.inequalities.len(), 24 + 16);
        assert_eq!(p.equalities.len(), 1);
    }

    #[test]
    fn simplex_vertices() {
        let vs = enumerate_vertices(&HPolytope::standard_simplex(3)).unwrap();
        assert_eq!(
            vs.vertices,
            vec![
                vec![int(0), int(0), int(1)],
                vec![int(0), int(1), int(0)],
                vec![int(1), int(0), int(0)],
            ]
        );
    }

    #[test]
    fn hypercube_vertices() {
        for d in 1..=4 {
            let p = HPolytope::hypercube(d);
            let vs = enumerate_vertices(&p).unwrap();
            assert_eq!(vs.len(), 1 << d);
            assert!(vs.vertices.iter().all(|v| p.is_basic_feasible(v)));
            // Each cube vertex has d neighbours.
            let edges = adjacency_by_rank(&p, &vs);
            assert_eq!(edges.len(), d * (1 << d) / 2);
            assert_eq!(edges, adjacency_by_inclusion(&p, &vs));
        }
    }

    #[test]
    fn infeasible_system() {
        let mut p = HPolytope::standard_simplex(2);
        p.equalities[0].rhs = int(-1);
        assert_eq!(enumerate_vertices(&p), Err(Error::Infeasible));
    }

    #[test]
    fn matching_pennies_has_unique_vertex() {
        let g = matching_pennies();
        let vs = enumerate_vertices(&ce_hrep(&g)).unwrap();
        assert_eq!(vs.vertices, vec![vec![rat(1, 4); 4]]);
        let c = classify_vertices(&g, &vs).unwrap();
        assert_eq!(
            (
                c.product_nash.len(),
                c.cycle_non_product.len(),
                c.other.len()
            ),
            (1, 0, 0)
        );
    }

    #[test]
    fn n2_matches_cycles() {
        let g = example_game(2).unwrap();
        let p = ce_hrep(&g);
        let vs = enumerate_vertices(&p).unwrap();
        assert_eq!(vs.len(), 24);
        assert_eq!(vs.as_set(), normalized_cycle_vertices(&g).unwrap());
        for v in &vs.vertices {
            assert!(p.is_basic_feasible(v));
            let mu = FiniteMeasure::from_grid_vector(&g, v).unwrap();
            assert!(is_ce_definition(&g, &mu).unwrap());
        }
        let c = classify_vertices(&g, &vs).unwrap();
        assert_eq!(
            (
                c.product_nash.len(),
                c.cycle_non_product.len(),
                c.other.len()
            ),
            (16, 8, 0)
        );
        assert_eq!(adjacency_by_rank(&p, &vs), adjacency_by_inclusion(&p, &vs));
    }
}
