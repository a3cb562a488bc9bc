//! Double description method for pointed polyhedral cones
//! `{w : A w >= 0, E w = 0}` with integer rows.
//!
//! Rays are primitive integer vectors. Each ray carries the set of processed
//! rows it lies on; two rays are adjacent when they share at least `dim - 2`
//! tight rows and no third ray is tight on all of those rows.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{make_primitive, primitive_integer_vector, Rational};

#[derive(Clone, Debug)]
pub struct Ray {
    pub coords: Vec<BigInt>,
    pub tight: FixedBitSet,
}

#[derive(Clone, Debug, Default)]
pub struct DdStats {
    /// Ray count after each processed row.
    pub ray_counts: Vec<usize>,
    pub adjacency_tests: u64,
}

fn dot(row: &[BigInt], v: &[BigInt]) -> BigInt {
    row.iter()
        .zip(v)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

/// Extreme rays of `{w : ineq_i . w >= 0, eq_j . w = 0}`.
///
/// Row indices in the returned tight sets are `0..ineq.len()` for the
/// inequalities followed by the equalities.
pub fn extreme_rays(
    dim: usize,
    ineq: &[Vec<BigInt>],
    eq: &[Vec<BigInt>],
) -> Result<(Vec<Ray>, DdStats)> {
    let nrows = ineq.len() + eq.len();
    let mut stats = DdStats::default();

    // Initial simplicial cone from `dim` independent inequality rows, sparsest first.
    let mut order: Vec<usize> = (0..ineq.len()).collect();
    order.sort_by_key(|&i| (ineq[i].iter().filter(|v| !v.is_zero()).count(), i));
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    for &i in &order {
        let mut trial: Vec<Vec<BigInt>> = basis.iter().map(|&b| ineq[b].clone()).collect();
        trial.push(ineq[i].clone());
        if linalg::rank_int(&trial, dim) == trial.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return Err(Error::NotPointed {
            rank: basis.len(),
            dim,
        });
    }
    let to_rat = |row: &Vec<BigInt>| -> Vec<Rational> {
        row.iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect()
    };
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for (j, &bj) in basis.iter().enumerate() {
        let others: Vec<Vec<Rational>> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &b)| to_rat(&ineq[b]))
            .collect();
        let ns = linalg::null_space(&others, dim);
        debug_assert_eq!(ns.len(), 1);
        let mut coords = primitive_integer_vector(&ns[0]);
        if dot(&ineq[bj], &coords).is_negative() {
            coords.iter_mut().for_each(|c| *c = -&*c);
        }
        let mut tight = FixedBitSet::with_capacity(nrows);
        for (i, &b) in basis.iter().enumerate() {
            if i != j {
                tight.insert(b);
            }
        }
        rays.push(Ray { coords, tight });
    }
    stats.ray_counts.push(rays.len());

    let mut processed = vec![false; ineq.len()];
    for &b in &basis {
        processed[b] = true;
    }
    let schedule = (0..eq.len())
        .map(|j| (ineq.len() + j, &eq[j], true))
        .chain(
            (0..ineq.len())
                .filter(|&i| !processed[i])
                .map(|i| (i, &ineq[i], false)),
        )
        .collect::<Vec<_>>();

    for (index, row, is_eq) in schedule {
        rays = insert_row(rays, index, row, is_eq, dim, &mut stats);
        stats.ray_counts.push(rays.len());
        if rays.is_empty() {
            break;
        }
    }
    Ok((rays, stats))
}

fn insert_row(
    rays: Vec<Ray>,
    index: usize,
    row: &[BigInt],
    is_eq: bool,
    dim: usize,
    stats: &mut DdStats,
) -> Vec<Ray> {
    let values: Vec<BigInt> = rays.par_iter().map(|r| dot(row, &r.coords)).collect();
    let pos: Vec<usize> = (0..rays.len())
        .filter(|&i| values[i].is_positive())
        .collect();
    let neg: Vec<usize> = (0..rays.len())
        .filter(|&i| values[i].is_negative())
        .collect();
    let need = dim.saturating_sub(2);

    let pairs: Vec<(usize, usize)> = pos
        .iter()
        .flat_map(|&p| neg.iter().map(move |&n| (p, n)))
        .collect();
    stats.adjacency_tests += pairs.len() as u64;
    let created: Vec<Ray> = pairs
        .par_iter()
        .filter_map(|&(p, n)| {
            let mut common = rays[p].tight.clone();
            common.intersect_with(&rays[n].tight);
            if common.count_ones(..) < need {
                return None;
            }
            let blocked = rays
                .iter()
                .enumerate()
                .any(|(i, r)| i != p && i != n && common.is_subset(&r.tight));
            if blocked {
                return None;
            }
            let (sp, sn) = (&values[p], &values[n]);
            let coords: Vec<BigInt> = rays[n]
                .coords
                .iter()
                .zip(&rays[p].coords)
                .map(|(cn, cp)| sp * cn - sn * cp)
                .collect();
            let mut tight = common;
            tight.insert(index);
            Some(Ray {
                coords: make_primitive(coords),
                tight,
            })
        })
        .collect();

    let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
    for (i, mut r) in rays.into_iter().enumerate() {
        if values[i].is_zero() {
            r.tight.insert(index);
            next.push(r);
        } else if values[i].is_positive() && !is_eq {
            next.push(r);
        }
    }
    next.extend(created);
    next
}
