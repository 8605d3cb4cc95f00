//! ENO point interpolation to the midpoint between two nodes.
//!
//! The stencil starts from the bracketing pair `{b, b+1}` and grows one node at
//! a time toward the side with the smaller undivided difference, so every
//! selected stencil straddles the target.

const MAX_POINTS: usize = 7;
const MAX_WINDOW: usize = 2 * MAX_POINTS - 2;

/// Index (into `window`) of the leftmost node of the ENO stencil with `npts`
/// points around the target between `window[bracket]` and `window[bracket + 1]`.
///
/// Ties in difference magnitude extend the side holding fewer nodes relative
/// to the target; if both sides hold equally many, the left side is extended.
pub fn eno_select_stencil(window: &[f64], bracket: usize, npts: usize) -> usize {
    assert!((2..=MAX_POINTS).contains(&npts), "ENO stencil size {npts}");
    assert!(bracket + 1 < window.len(), "bracket outside window");
    let len = window.len();
    // Undivided differences of order q, overwritten in place level by level.
    let mut dd = [0.0_f64; MAX_WINDOW];
    dd[..len].copy_from_slice(window);
    let mut lo = bracket;
    let mut hi = bracket + 1;
    // Only differences that can touch a stencil straddling the bracket matter.
    let first = (bracket + 2).saturating_sub(npts);
    for q in 1..npts {
        let last = (len - q).min(bracket + npts - q);
        for i in first..last {
            dd[i] = dd[i + 1] - dd[i];
        }
        if q < 2 {
            continue;
        }
        let can_left = lo >= 1;
        let can_right = hi + 1 < len;
        let go_left = match (can_left, can_right) {
            (true, true) => {
                let l = dd[lo - 1].abs();
                let r = dd[lo].abs();
                if l < r {
                    true
                } else if r < l {
                    false
                } else {
                    bracket + 1 - lo <= hi - bracket
                }
            }
            (true, false) => true,
            (false, true) => false,
            (false, false) => panic!("window too narrow for {npts}-point ENO stencil"),
        };
        if go_left {
            lo -= 1;
        } else {
            hi += 1;
        }
    }
    debug_assert!(
        lo <= bracket && hi > bracket,
        "ENO stencil must straddle the target"
    );
    lo
}

/// Lagrange weights at `x = theta` for nodes `x_m = m - offset`, `m = 0..npts`.
pub fn lagrange_weights(npts: usize, offset: f64, theta: f64) -> Vec<f64> {
    let xs: Vec<f64> = (0..npts).map(|m| m as f64 - offset).collect();
    (0..npts)
        .map(|m| {
            xs.iter()
                .enumerate()
                .filter(|&(l, _)| l != m)
                .map(|(_, &xl)| (theta - xl) / (xs[m] - xl))
                .product()
        })
        .collect()
}

/// ENO interpolation at `bracket + theta` (unit node spacing, `0 <= theta <= 1`).
pub fn eno_interpolate(window: &[f64], bracket: usize, npts: usize, theta: f64) -> f64 {
    let lo = eno_select_stencil(window, bracket, npts);
    let w = lagrange_weights(npts, (bracket - lo) as f64, theta);
    w.iter()
        .zip(&window[lo..lo + npts])
        .map(|(a, b)| a * b)
        .sum()
}

/// Midpoint ENO interpolator with precomputed weights for each admissible stencil.
#[derive(Clone, Debug)]
pub struct EnoMidpoint {
    npts: usize,
    /// `weights[a]` for the stencil whose left end lies `a` nodes left of the bracket.
    weights: Vec<[f64; MAX_POINTS]>,
}

impl EnoMidpoint {
    pub fn new(npts: usize) -> Self {
        assert!((2..=MAX_POINTS).contains(&npts), "ENO stencil size {npts}");
        let weights = (0..npts - 1)
            .map(|a| {
                let mut w = [0.0; MAX_POINTS];
                w[..npts].copy_from_slice(&lagrange_weights(npts, a as f64, 0.5));
                w
            })
            .collect();
        Self { npts, weights }
    }

    /// Stencil of `2k-1` points, the size used for staggered interpolation.
    pub fn for_order(k: usize) -> Self {
        Self::new(2 * k - 1)
    }

    pub fn npts(&self) -> usize {
        self.npts
    }

    /// Nodes read on each side beyond the bracketing pair.
    pub fn reach(&self) -> usize {
        self.npts - 2
    }

    /// Midpoint value between `data[base]` and `data[base + step]`.
    #[inline]
    pub fn midpoint(&self, data: &[f64], base: usize, step: usize) -> f64 {
        let r = self.reach();
        let start = base - r * step;
        let len = 2 * r + 2;
        let mut win = [0.0; MAX_WINDOW];
        for (m, w) in win.iter_mut().take(len).enumerate() {
            *w = data[start + m * step];
        }
        let lo = eno_select_stencil(&win[..len], r, self.npts);
        let w = &self.weights[r - lo];
        let mut acc = 0.0;
        for m in 0..self.npts {
            acc += w[m] * win[lo + m];
        }
        acc
    }
}
