//! Row-parallel helpers. Every row is written by exactly one task, so results
//! do not depend on the number of threads.

use crate::grid::Field;
use std::ops::Range;

/// Calls `f(j, row)` for each storage row `j` in `rows`; `row` spans the full
/// x extent including halos.
pub(crate) fn for_each_row<F>(field: &mut Field, rows: Range<isize>, f: F)
where
    F: Fn(isize, &mut [f64]) + Sync + Send,
{
    let stride = field.stride();
    let h = field.halo() as isize;
    let body = |(r, row): (usize, &mut [f64])| {
        let j = r as isize - h;
        if rows.contains(&j) {
            f(j, row);
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        field
            .data_mut()
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(body);
    }
    #[cfg(not(feature = "parallel"))]
    {
        field
            .data_mut()
            .chunks_mut(stride)
            .enumerate()
            .for_each(body);
    }
}
