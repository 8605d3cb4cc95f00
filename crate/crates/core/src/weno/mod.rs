//! One-dimensional WENO edge reconstruction and ENO point interpolation.
//!
//! A WENO window holds `2k-1` values `f_{i-k+1} ..= f_{i+k-1}` centred on cell `i`.
//! Point values are treated as cell averages of an implicit function, so
//! differences of edge reconstructions approximate derivatives at order `2k-1`.

pub mod eno;
mod tables;

use crate::error::{Error, Result};

pub const DEFAULT_EPS: f64 = 1e-10;
pub const DEFAULT_POWER: i32 = 2;
pub const MAX_K: usize = 4;

/// Which edge of the centre cell is reconstructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    /// `W_{+1/2}`: right edge, biased toward data on the left.
    Right,
    /// `W_{-1/2}`: left edge, the mirror image of `Right`.
    Left,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WenoCoefficients {
    k: usize,
    c: [[f64; MAX_K]; MAX_K],
    d: [f64; MAX_K],
    /// Indicator matrices acting on first differences of each stencil, so that
    /// constant data gives exactly zero.
    beta: [[[f64; MAX_K - 1]; MAX_K - 1]; MAX_K],
    linear: [f64; 2 * MAX_K - 1],
    pub eps: f64,
    pub p: i32,
}

fn pad2<const K: usize>(src: &[[f64; K]; K]) -> [[f64; MAX_K]; MAX_K] {
    let mut out = [[0.0; MAX_K]; MAX_K];
    for (o, s) in out.iter_mut().zip(src) {
        o[..K].copy_from_slice(s);
    }
    out
}

fn pad3<const K: usize>(src: &[[[f64; K]; K]; K]) -> [[[f64; MAX_K]; MAX_K]; MAX_K] {
    let mut out = [[[0.0; MAX_K]; MAX_K]; MAX_K];
    for (o, s) in out.iter_mut().zip(src) {
        *o = pad2(s);
    }
    out
}

fn pad1<const N: usize, const M: usize>(src: &[f64; N]) -> [f64; M] {
    let mut out = [0.0; M];
    out[..N].copy_from_slice(src);
    out
}

impl WenoCoefficients {
    pub fn new(k: usize) -> Result<Self> {
        Self::with_params(k, DEFAULT_EPS, DEFAULT_POWER)
    }

    pub fn with_params(k: usize, eps: f64, p: i32) -> Result<Self> {
        use tables::*;
        let (c, d, beta, linear) = match k {
            2 => (pad2(&C2), pad1(&D2), pad3(&B2), pad1(&LINEAR2)),
            3 => (pad2(&C3), pad1(&D3), pad3(&B3), pad1(&LINEAR3)),
            4 => (pad2(&C4), pad1(&D4), pad3(&B4), pad1(&LINEAR4)),
            _ => {
                return Err(Error::InvalidScheme(format!(
                    "WENO order k = {k} not in 2..=4"
                )))
            }
        };
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidScheme(format!(
                "eps must be positive, got {eps}"
            )));
        }
        if p < 1 {
            return Err(Error::InvalidScheme(format!(
                "power p must be >= 1, got {p}"
            )));
        }
        let coeffs = Self {
            k,
            c,
            d,
            beta: difference_form(&beta, k),
            linear,
            eps,
            p,
        };
        coeffs.validate()?;
        Ok(coeffs)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> usize {
        2 * self.k - 1
    }

    pub fn candidate_coefficients(&self, s: usize) -> &[f64] {
        &self.c[s][..self.k]
    }

    pub fn optimal_weights(&self) -> &[f64] {
        &self.d[..self.k]
    }

    /// Coefficients of the single `(2k-1)`-point linear right-edge reconstruction.
    pub fn linear_coefficients(&self) -> &[f64] {
        &self.linear[..self.width()]
    }

    /// Checks the tabulated constants against each other and against exact
    /// cell averages of monomials.
    fn validate(&self) -> Result<()> {
        let k = self.k;
        let n = 2 * k - 1;
        let fail = |what: String| Err(Error::InvalidScheme(format!("WENO k={k} table: {what}")));
        for s in 0..k {
            let sum: f64 = self.c[s][..k].iter().sum();
            if (sum - 1.0).abs() > 1e-14 {
                return fail(format!("candidate {s} weights sum to {sum}"));
            }
        }
        let dsum: f64 = self.d[..k].iter().sum();
        if (dsum - 1.0).abs() > 1e-14 || self.d[..k].iter().any(|&d| d <= 0.0) {
            return fail("optimal weights are not a positive partition of unity".into());
        }
        for w in 0..n {
            let combined: f64 = (0..k)
                .filter(|&s| s <= w && w < s + k)
                .map(|s| self.d[s] * self.c[s][w - s])
                .sum();
            if (combined - self.linear[w]).abs() > 1e-14 {
                return fail(format!("optimal combination differs at window slot {w}"));
            }
        }
        for q in 0..n as i32 {
            let avg = |c: f64| ((c + 0.5).powi(q + 1) - (c - 0.5).powi(q + 1)) / f64::from(q + 1);
            let approx: f64 = (0..n)
                .map(|w| self.linear[w] * avg(w as f64 - (k as f64 - 1.0)))
                .sum();
            if (approx - 0.5_f64.powi(q)).abs() > 1e-13 {
                return fail(format!("linear stencil not exact for degree {q}"));
            }
        }
        Ok(())
    }

    /// Candidate right-edge values, one per stencil.
    pub fn candidates(&self, window: &[f64]) -> Vec<f64> {
        let w = self.check(window);
        (0..self.k)
            .map(|s| (0..self.k).map(|m| self.c[s][m] * w[s + m]).sum())
            .collect()
    }

    /// Jiang-Shu smoothness indicators for the right-edge stencils.
    pub fn smoothness_indicators(&self, window: &[f64]) -> Vec<f64> {
        let w = self.check(window);
        (0..self.k)
            .map(|s| self.beta_of(s, &w[s..s + self.k]))
            .collect()
    }

    /// Normalised nonlinear weights for the right-edge reconstruction.
    pub fn weights(&self, window: &[f64]) -> Vec<f64> {
        let beta = self.smoothness_indicators(window);
        let alpha: Vec<f64> = (0..self.k)
            .map(|s| self.d[s] / powi(self.eps + beta[s], self.p))
            .collect();
        let total: f64 = alpha.iter().sum();
        alpha.iter().map(|a| a / total).collect()
    }

    fn beta_of(&self, s: usize, f: &[f64]) -> f64 {
        let b = &self.beta[s];
        let g: Vec<f64> = f.windows(2).map(|p| p[1] - p[0]).collect();
        let mut acc = 0.0;
        for i in 0..self.k - 1 {
            let mut row = 0.0;
            for j in 0..self.k - 1 {
                row += b[i][j] * g[j];
            }
            acc += g[i] * row;
        }
        acc
    }

    fn check<'a>(&self, window: &'a [f64]) -> &'a [f64] {
        assert_eq!(
            window.len(),
            self.width(),
            "WENO window must hold 2k-1 = {} values",
            self.width()
        );
        window
    }

    /// Edge value of the centre cell of `window`.
    pub fn reconstruct(&self, window: &[f64], edge: Edge) -> f64 {
        let w = self.check(window);
        self.reconstruct_strided(w, self.k - 1, 1, edge)
    }

    /// Edge value of the cell at `data[center]` where neighbours are `step` apart.
    #[inline]
    pub fn reconstruct_strided(&self, data: &[f64], center: usize, step: usize, edge: Edge) -> f64 {
        match self.k {
            2 => self.kernel::<2>(data, center, step, edge),
            3 => self.kernel::<3>(data, center, step, edge),
            _ => self.kernel::<4>(data, center, step, edge),
        }
    }

    #[inline(always)]
    fn kernel<const K: usize>(&self, data: &[f64], center: usize, step: usize, edge: Edge) -> f64 {
        let mut f = [0.0; 2 * MAX_K - 1];
        let reach = (K - 1) * step;
        match edge {
            Edge::Right => {
                let start = center - reach;
                for (m, v) in f.iter_mut().take(2 * K - 1).enumerate() {
                    *v = data[start + m * step];
                }
            }
            Edge::Left => {
                let start = center + reach;
                for (m, v) in f.iter_mut().take(2 * K - 1).enumerate() {
                    *v = data[start - m * step];
                }
            }
        }
        let mut g = [0.0; 2 * MAX_K - 2];
        for m in 0..2 * K - 2 {
            g[m] = f[m + 1] - f[m];
        }
        let mut alpha = [0.0; MAX_K];
        let mut cand = [0.0; MAX_K];
        let mut total = 0.0;
        for s in 0..K {
            let b = &self.beta[s];
            let c = &self.c[s];
            let mut beta = 0.0;
            for i in 0..K - 1 {
                let mut row = 0.0;
                for j in 0..K - 1 {
                    row += b[i][j] * g[s + j];
                }
                beta += g[s + i] * row;
            }
            let mut val = 0.0;
            for i in 0..K {
                val += c[i] * f[s + i];
            }
            alpha[s] = self.d[s] / powi(self.eps + beta, self.p);
            cand[s] = val;
            total += alpha[s];
        }
        let mut out = 0.0;
        for s in 0..K {
            out += alpha[s] * cand[s];
        }
        out / total
    }
}

/// Rewrites `f^T B f` as `g^T B' g` with `g_m = f_{m+1} - f_m`, using
/// `f_i = f_0 + sum_{m<i} g_m` and the fact that constants lie in the kernel of `B`.
fn difference_form(
    beta: &[[[f64; MAX_K]; MAX_K]; MAX_K],
    k: usize,
) -> [[[f64; MAX_K - 1]; MAX_K - 1]; MAX_K] {
    let mut out = [[[0.0; MAX_K - 1]; MAX_K - 1]; MAX_K];
    for (o, b) in out.iter_mut().zip(beta).take(k) {
        for a in 0..k - 1 {
            for c in 0..k - 1 {
                // Column m of the cumulative-sum map is the indicator of rows i > m.
                let mut acc = 0.0;
                for i in a + 1..k {
                    for j in c + 1..k {
                        acc += b[i][j];
                    }
                }
                o[a][c] = acc;
            }
        }
    }
    out
}

#[inline(always)]
fn powi(x: f64, p: i32) -> f64 {
    match p {
        1 => x,
        2 => x * x,
        _ => x.powi(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Right-edge coefficients of the cell-average interpolant on cells
    /// `first..first+len`, target `x = 1/2`, solved by Gaussian elimination
    /// on the moment system.
    fn generic_edge_coefficients(first: i32, len: usize) -> Vec<f64> {
        // Row q: sum_m a_m * avg_m(x^q) = (1/2)^q
        let mut a = vec![vec![0.0; len + 1]; len];
        for (q, row) in a.iter_mut().enumerate() {
            let q = q as i32;
            for m in 0..len {
                let c = f64::from(first) + m as f64;
                row[m] = ((c + 0.5).powi(q + 1) - (c - 0.5).powi(q + 1)) / f64::from(q + 1);
            }
            row[len] = 0.5_f64.powi(q);
        }
        for col in 0..len {
            let piv = (col..len)
                .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
                .unwrap();
            a.swap(col, piv);
            for r in 0..len {
                if r != col {
                    let f = a[r][col] / a[col][col];
                    for c in col..=len {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
        (0..len).map(|r| a[r][len] / a[r][r]).collect()
    }

    #[test]
    fn tables_match_generic_solver() {
        for k in 2..=4 {
            let w = WenoCoefficients::new(k).unwrap();
            for s in 0..k {
                let oracle = generic_edge_coefficients(s as i32 - (k as i32 - 1), k);
                for (a, b) in w.candidate_coefficients(s).iter().zip(&oracle) {
                    assert_relative_eq!(*a, *b, epsilon = 1e-12);
                }
            }
            let big = generic_edge_coefficients(-(k as i32 - 1), 2 * k - 1);
            for (a, b) in w.linear_coefficients().iter().zip(&big) {
                assert_relative_eq!(*a, *b, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn jiang_shu_k3_indicators() {
        let w = WenoCoefficients::new(3).unwrap();
        let f: [f64; 5] = [0.3, -1.2, 2.5, 0.7, 4.1];
        let js = [
            13.0 / 12.0 * (f[0] - 2.0 * f[1] + f[2]).powi(2)
                + 0.25 * (f[0] - 4.0 * f[1] + 3.0 * f[2]).powi(2),
            13.0 / 12.0 * (f[1] - 2.0 * f[2] + f[3]).powi(2) + 0.25 * (f[1] - f[3]).powi(2),
            13.0 / 12.0 * (f[2] - 2.0 * f[3] + f[4]).powi(2)
                + 0.25 * (3.0 * f[2] - 4.0 * f[3] + f[4]).powi(2),
        ];
        for (b, e) in w.smoothness_indicators(&f).iter().zip(js) {
            assert_relative_eq!(*b, e, max_relative = 1e-13);
        }
    }

    #[test]
    fn k2_indicator_example() {
        let w = WenoCoefficients::new(2).unwrap();
        let beta = w.smoothness_indicators(&[0.0, 1.0, 3.0]);
        assert_relative_eq!(beta[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(beta[1], 4.0, epsilon = 1e-15);
    }

    #[test]
    fn constant_window_uses_optimal_weights() {
        for k in 2..=4 {
            let w = WenoCoefficients::new(k).unwrap();
            let win = vec![2.5; 2 * k - 1];
            assert_relative_eq!(w.reconstruct(&win, Edge::Right), 2.5, max_relative = 1e-15);
            assert_relative_eq!(w.reconstruct(&win, Edge::Left), 2.5, max_relative = 1e-15);
            for (a, b) in w.weights(&win).iter().zip(w.optimal_weights()) {
                assert_relative_eq!(*a, *b, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn quadratic_window_k3_is_exact() {
        let w = WenoCoefficients::new(3).unwrap();
        // Cell averages of x^2 - 3x + 1 on unit cells centred at -2..=2.
        let avg = |c: f64| c * c + 1.0 / 12.0 - 3.0 * c + 1.0;
        let win: Vec<f64> = (-2..=2).map(|c| avg(f64::from(c))).collect();
        let exact = |x: f64| x * x - 3.0 * x + 1.0;
        assert_relative_eq!(
            w.reconstruct(&win, Edge::Right),
            exact(0.5),
            epsilon = 1e-13
        );
        assert_relative_eq!(
            w.reconstruct(&win, Edge::Left),
            exact(-0.5),
            epsilon = 1e-13
        );
    }

    #[test]
    fn discontinuity_collapses_weights() {
        let w = WenoCoefficients::new(3).unwrap();
        let win = [1.0, 1.0, 1.0, 10.0, 10.0];
        // Hand-evaluated indicators: only the leftmost stencil is smooth.
        let beta = w.smoothness_indicators(&win);
        assert_eq!(beta[0], 0.0);
        assert_relative_eq!(
            beta[1],
            13.0 / 12.0 * 81.0 + 0.25 * 81.0,
            max_relative = 1e-14
        );
        let weights = w.weights(&win);
        assert!(weights[1] <= 1e-6 && weights[2] <= 1e-6);
        let smooth_candidate = w.candidates(&win)[0];
        assert_relative_eq!(smooth_candidate, 1.0, epsilon = 1e-15);
        assert!((w.reconstruct(&win, Edge::Right) - smooth_candidate).abs() < 1e-6);
    }

    #[test]
    fn left_edge_is_mirror_of_right_edge() {
        let w = WenoCoefficients::new(3).unwrap();
        let win = [0.1, 0.7, -0.2, 1.3, 0.4];
        let mut rev = win;
        rev.reverse();
        assert_eq!(
            w.reconstruct(&win, Edge::Left),
            w.reconstruct(&rev, Edge::Right)
        );
    }

    #[test]
    fn edge_error_has_design_order() {
        for k in 2..=3 {
            let w = WenoCoefficients::new(k).unwrap();
            let mut errs = Vec::new();
            let hs = [0.2, 0.1, 0.05, 0.025];
            for &h in &hs {
                let x0: f64 = 0.3;
                let win: Vec<f64> = (0..2 * k - 1)
                    .map(|m| {
                        let c = x0 + (m as f64 - (k as f64 - 1.0)) * h;
                        ((c + h / 2.0).cos() - (c - h / 2.0).cos()) / -h
                    })
                    .collect();
                errs.push((w.reconstruct(&win, Edge::Right) - (x0 + h / 2.0).sin()).abs());
            }
            let slope = (errs[2] / errs[3]).ln() / 2f64.ln();
            let target = (2 * k - 1) as f64;
            assert!((slope - target).abs() < 0.25, "k={k} slope {slope}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WenoCoefficients::new(1).is_err());
        assert!(WenoCoefficients::new(5).is_err());
        assert!(WenoCoefficients::with_params(3, 0.0, 2).is_err());
        assert!(WenoCoefficients::with_params(3, 1e-6, 0).is_err());
    }

    proptest! {
        #[test]
        fn weights_are_convex(win in proptest::collection::vec(-1e3f64..1e3, 5)) {
            let w = WenoCoefficients::new(3).unwrap();
            let om = w.weights(&win);
            let sum: f64 = om.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-14);
            prop_assert!(om.iter().all(|&o| (0.0..=1.0).contains(&o)));
            let cand = w.candidates(&win);
            let lo = cand.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = cand.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let r = w.reconstruct(&win, Edge::Right);
            let tol = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
            prop_assert!(r >= lo - tol && r <= hi + tol);
        }

        #[test]
        fn indicators_scale_quadratically(
            win in proptest::collection::vec(-10f64..10.0, 5),
            lambda in -5f64..5.0,
        ) {
            let w = WenoCoefficients::new(3).unwrap();
            let b = w.smoothness_indicators(&win);
            let scaled: Vec<f64> = win.iter().map(|v| v * lambda).collect();
            let bs = w.smoothness_indicators(&scaled);
            for (x, y) in b.iter().zip(&bs) {
                prop_assert!(*x >= -1e-12);
                prop_assert!((y - lambda * lambda * x).abs() <= 1e-9 * (1.0 + y.abs()));
            }
        }

        #[test]
        fn linear_data_reproduced_for_any_weights(
            a in -100f64..100.0, b in -100f64..100.0, k in 2usize..=4,
        ) {
            // Degree <= k-1 is exact for every candidate, hence for any convex weights.
            let w = WenoCoefficients::new(k).unwrap();
            let win: Vec<f64> = (0..2 * k - 1)
                .map(|m| a + b * (m as f64 - (k as f64 - 1.0)))
                .collect();
            let exact = a + 0.5 * b;
            let got = w.reconstruct(&win, Edge::Right);
            prop_assert!((got - exact).abs() <= 8.0 * f64::EPSILON * (a.abs() + b.abs() + 1.0) * 4.0);
        }
    }
}
