//! Batch evaluation over integer parameter grids. Every grid point is
//! independent, so rows are evaluated in parallel when the `parallel`
//! feature is enabled; output order is lexicographic in (g, N, k) either
//! way.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::classes::{quantum_line_class, ModuliParams};
use crate::error::{Error, Result};
use crate::hrr::{closed_form_dimension, euler_characteristic};

pub const DEFAULT_GRID_CAP: usize = 100_000;

/// One grid point with the values of both computation routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub genus: u32,
    pub vortices: u32,
    pub area_quanta: u64,
    /// Ring-route value of the Euler characteristic.
    pub euler_characteristic: BigRational,
    /// Closed-form binomial C(k, N).
    pub closed_form: BigInt,
    pub agree: bool,
    pub vanishing_guaranteed: bool,
    pub dimension: Option<BigInt>,
}

/// Expands inclusive ranges into the lexicographic point list, enforcing
/// the grid cap.
pub fn grid_points(
    genus: RangeInclusive<u32>,
    vortices: RangeInclusive<u32>,
    area_quanta: RangeInclusive<u64>,
    cap: usize,
) -> Result<Vec<(u32, u32, u64)>> {
    let len = |lo: u128, hi: u128| hi.checked_sub(lo).map_or(0, |d| d + 1);
    let size = len(u128::from(*genus.start()), u128::from(*genus.end()))
        * len(u128::from(*vortices.start()), u128::from(*vortices.end()))
        * len(u128::from(*area_quanta.start()), u128::from(*area_quanta.end()));
    if size > cap as u128 {
        return Err(Error::GridCapExceeded {
            size: size.min(u128::from(u64::MAX)) as usize,
            cap,
        });
    }
    let mut points = Vec::with_capacity(size as usize);
    for g in genus {
        for n in vortices.clone() {
            for k in area_quanta.clone() {
                points.push((g, n, k));
            }
        }
    }
    Ok(points)
}

fn evaluate(genus: u32, vortices: u32, area_quanta: u64) -> Result<TableRow> {
    let p = ModuliParams::from_integers(genus, vortices, area_quanta)?;
    let ring_value = euler_characteristic(&quantum_line_class(&p), &p)?;
    let closed = closed_form_dimension(&p)?;
    let agree = ring_value == BigRational::from(closed.clone());
    let vanishing_guaranteed = p.vanishing_guaranteed();
    Ok(TableRow {
        genus,
        vortices,
        area_quanta,
        euler_characteristic: ring_value,
        dimension: (agree && vanishing_guaranteed).then(|| closed.clone()),
        closed_form: closed,
        agree,
        vanishing_guaranteed,
    })
}

/// Evaluates every point, in parallel when the feature allows it.
pub fn table_rows(points: &[(u32, u32, u64)]) -> Result<Vec<TableRow>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points
            .par_iter()
            .map(|&(g, n, k)| evaluate(g, n, k))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        table_rows_seq(points)
    }
}

/// Single-threaded variant of [`table_rows`] for the benchmark comparison.
pub fn table_rows_seq(points: &[(u32, u32, u64)]) -> Result<Vec<TableRow>> {
    points.iter().map(|&(g, n, k)| evaluate(g, n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_lexicographic() {
        let points = grid_points(0..=1, 1..=2, 4..=5, 100).unwrap();
        assert_eq!(points.len(), 8);
        assert_eq!(points[0], (0, 1, 4));
        assert_eq!(points[1], (0, 1, 5));
        assert_eq!(points[7], (1, 2, 5));
        let mut sorted = points.clone();
        sorted.sort();
        assert_eq!(points, sorted);
    }

    #[test]
    fn grid_cap_is_enforced() {
        assert!(matches!(
            grid_points(0..=9, 1..=10, 1..=10, 999),
            Err(Error::GridCapExceeded { .. })
        ));
    }

    #[test]
    fn empty_range_gives_no_points() {
        #[allow(clippy::reversed_empty_ranges)]
        let points = grid_points(2..=1, 1..=2, 4..=5, 100).unwrap();
        assert!(points.is_empty());
        assert!(table_rows(&points).unwrap().is_empty());
    }

    #[test]
    fn rows_agree_on_a_small_grid() {
        let points = grid_points(0..=2, 1..=3, 4..=6, 100).unwrap();
        assert_eq!(points.len(), 27);
        let rows = table_rows(&points).unwrap();
        for row in &rows {
            assert!(row.agree, "g={} N={} k={}", row.genus, row.vortices, row.area_quanta);
        }
    }

    #[test]
    fn parallel_and_sequential_rows_match() {
        let points = grid_points(0..=2, 1..=2, 3..=5, 100).unwrap();
        assert_eq!(table_rows(&points).unwrap(), table_rows_seq(&points).unwrap());
    }

    #[test]
    fn unguaranteed_rows_omit_the_dimension() {
        let rows = table_rows(&[(2, 3, 3)]).unwrap();
        assert!(!rows[0].vanishing_guaranteed);
        assert_eq!(rows[0].dimension, None);
        assert_eq!(rows[0].closed_form, BigInt::from(1));
    }
}
