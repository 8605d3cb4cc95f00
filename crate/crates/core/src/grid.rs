//! Arakawa-C staggered grid, halo-padded node fields and ghost filling.
//!
//! Node families (interior index ranges are `0..nx` by `0..ny` for every kind):
//!
//! * `Center` at `(x_{i+1/2}, y_{j+1/2})`
//! * `UFace`  at `(x_i, y_{j+1/2})`
//! * `VFace`  at `(x_{i+1/2}, y_j)`
//!
//! with `x_i = xmin + i*dx` and `y_j = ymin + j*dy`.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Center,
    UFace,
    VFace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    PeriodicBoth,
    /// Ghost nodes (and boundary-lying nodes) take values of a known exact solution.
    DirichletExact,
    /// Periodic in x, solid no-flow walls at `y = ymin` and `y = ymax`.
    ChannelNoFlowVertical,
}

/// Physical quantity carried by a field; decides reflection parity and which
/// exact-solution component is sampled for Dirichlet ghosts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    U,
    V,
    Scalar,
}

impl Component {
    fn channel_sign(self) -> f64 {
        match self {
            Component::V => -1.0,
            Component::U | Component::Scalar => 1.0,
        }
    }
}

/// Anything that can evaluate the exact value of a component at a point and time.
pub trait ExactSolution: Sync {
    fn value(&self, component: Component, x: f64, y: f64, t: f64) -> f64;
}

impl<F> ExactSolution for F
where
    F: Fn(Component, f64, f64, f64) -> f64 + Sync,
{
    fn value(&self, component: Component, x: f64, y: f64, t: f64) -> f64 {
        self(component, x, y, t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Bounds {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Self {
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    pub fn square(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, lo, hi)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StaggeredGrid2D {
    pub nx: usize,
    pub ny: usize,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub dx: f64,
    pub dy: f64,
    pub bc: BoundaryKind,
    pub halo: usize,
}

pub fn build_grid(
    bounds: Bounds,
    nx: usize,
    ny: usize,
    bc: BoundaryKind,
    halo: usize,
) -> Result<StaggeredGrid2D> {
    let Bounds {
        xmin,
        xmax,
        ymin,
        ymax,
    } = bounds;
    if !(xmin.is_finite() && xmax.is_finite() && ymin.is_finite() && ymax.is_finite()) {
        return Err(Error::InvalidGrid("bounds must be finite".into()));
    }
    if xmax <= xmin || ymax <= ymin {
        return Err(Error::InvalidGrid(format!(
            "inverted bounds [{xmin}, {xmax}] x [{ymin}, {ymax}]"
        )));
    }
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidGrid("cell counts must be positive".into()));
    }
    if nx < 2 * halo || ny < 2 * halo {
        return Err(Error::InvalidGrid(format!(
            "{nx}x{ny} cells cannot host a halo of width {halo} (need at least {} per direction)",
            2 * halo
        )));
    }
    Ok(StaggeredGrid2D {
        nx,
        ny,
        xmin,
        xmax,
        ymin,
        ymax,
        dx: (xmax - xmin) / nx as f64,
        dy: (ymax - ymin) / ny as f64,
        bc,
        halo,
    })
}

impl StaggeredGrid2D {
    pub fn bounds(&self) -> Bounds {
        Bounds::new(self.xmin, self.xmax, self.ymin, self.ymax)
    }

    /// Same geometry with a different cell count.
    pub fn with_resolution(&self, nx: usize, ny: usize) -> Result<Self> {
        build_grid(self.bounds(), nx, ny, self.bc, self.halo)
    }

    #[inline]
    pub fn x_node(&self, i: isize) -> f64 {
        self.xmin + i as f64 * self.dx
    }

    #[inline]
    pub fn x_mid(&self, i: isize) -> f64 {
        self.xmin + (i as f64 + 0.5) * self.dx
    }

    #[inline]
    pub fn y_node(&self, j: isize) -> f64 {
        self.ymin + j as f64 * self.dy
    }

    #[inline]
    pub fn y_mid(&self, j: isize) -> f64 {
        self.ymin + (j as f64 + 0.5) * self.dy
    }

    /// Coordinates without range checks.
    #[inline]
    pub fn coords(&self, kind: NodeKind, i: isize, j: isize) -> (f64, f64) {
        match kind {
            NodeKind::Center => (self.x_mid(i), self.y_mid(j)),
            NodeKind::UFace => (self.x_node(i), self.y_mid(j)),
            NodeKind::VFace => (self.x_mid(i), self.y_node(j)),
        }
    }

    pub fn locate(&self, kind: NodeKind, i: isize, j: isize) -> Result<(f64, f64)> {
        let h = self.halo as isize;
        if i < -h || j < -h || i >= self.nx as isize + h || j >= self.ny as isize + h {
            return Err(Error::IndexOutOfRange { kind, i, j });
        }
        Ok(self.coords(kind, i, j))
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }
}

/// Values of one node family on the interior plus `halo` ghost layers.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    kind: NodeKind,
    nx: usize,
    ny: usize,
    halo: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(grid: &StaggeredGrid2D, kind: NodeKind) -> Self {
        Self::filled(grid, kind, 0.0)
    }

    pub fn filled(grid: &StaggeredGrid2D, kind: NodeKind, value: f64) -> Self {
        let h = grid.halo;
        Self {
            kind,
            nx: grid.nx,
            ny: grid.ny,
            halo: h,
            data: vec![value; (grid.nx + 2 * h) * (grid.ny + 2 * h)],
        }
    }

    /// Samples `f(x, y)` at every node, ghosts included.
    pub fn from_fn(grid: &StaggeredGrid2D, kind: NodeKind, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut field = Self::zeros(grid, kind);
        let h = grid.halo as isize;
        for j in -h..grid.ny as isize + h {
            for i in -h..grid.nx as isize + h {
                let (x, y) = grid.coords(kind, i, j);
                field.set(i, j, f(x, y));
            }
        }
        field
    }

    /// Like [`Field::from_fn`] but samples interior nodes only; ghosts are zero.
    pub fn from_fn_interior(
        grid: &StaggeredGrid2D,
        kind: NodeKind,
        f: impl Fn(f64, f64) -> f64,
    ) -> Self {
        let mut field = Self::zeros(grid, kind);
        for j in 0..grid.ny as isize {
            for i in 0..grid.nx as isize {
                let (x, y) = grid.coords(kind, i, j);
                field.set(i, j, f(x, y));
            }
        }
        field
    }

    #[inline]
    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn halo(&self) -> usize {
        self.halo
    }

    /// Row length of the backing storage (x extent including both halos).
    #[inline]
    pub fn stride(&self) -> usize {
        self.nx + 2 * self.halo
    }

    #[inline]
    pub fn idx(&self, i: isize, j: isize) -> usize {
        let h = self.halo as isize;
        debug_assert!(
            i >= -h && j >= -h && i < self.nx as isize + h && j < self.ny as isize + h,
            "({i}, {j}) outside {:?} storage",
            self.kind
        );
        (j + h) as usize * self.stride() + (i + h) as usize
    }

    #[inline]
    pub fn at(&self, i: isize, j: isize) -> f64 {
        self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: isize, j: isize, value: f64) {
        let k = self.idx(i, j);
        self.data[k] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Storage row `j` including x halos.
    pub fn row(&self, j: isize) -> &[f64] {
        let s = self.stride();
        let start = (j + self.halo as isize) as usize * s;
        &self.data[start..start + s]
    }

    pub fn row_mut(&mut self, j: isize) -> &mut [f64] {
        let s = self.stride();
        let start = (j + self.halo as isize) as usize * s;
        &mut self.data[start..start + s]
    }

    /// Interior values in row-major order (`j` outer, `i` inner).
    pub fn interior(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for j in 0..self.ny as isize {
            let row = self.row(j);
            out.extend_from_slice(&row[self.halo..self.halo + self.nx]);
        }
        out
    }

    pub fn set_interior(&mut self, values: &[f64]) -> Result<()> {
        if values.len() != self.nx * self.ny {
            return Err(Error::LengthMismatch(format!(
                "{} values for a {}x{} interior",
                values.len(),
                self.nx,
                self.ny
            )));
        }
        let (nx, h) = (self.nx, self.halo);
        for j in 0..self.ny {
            self.row_mut(j as isize)[h..h + nx].copy_from_slice(&values[j * nx..(j + 1) * nx]);
        }
        Ok(())
    }

    pub fn max_abs_interior(&self) -> f64 {
        let h = self.halo;
        (0..self.ny as isize)
            .flat_map(|j| self.row(j)[h..h + self.nx].iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn all_finite_interior(&self) -> bool {
        let h = self.halo;
        (0..self.ny as isize).all(|j| self.row(j)[h..h + self.nx].iter().all(|v| v.is_finite()))
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// `self += a * other` over all storage.
    pub fn axpy(&mut self, a: f64, other: &Field) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (s, o) in self.data.iter_mut().zip(&other.data) {
            *s += a * o;
        }
    }

    /// `self = a * self + b * other` over all storage.
    pub fn lincomb(&mut self, a: f64, b: f64, other: &Field) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (s, o) in self.data.iter_mut().zip(&other.data) {
            *s = a * *s + b * o;
        }
    }

    pub fn fill(&mut self, value: f64) {
        self.data.iter_mut().for_each(|v| *v = value);
    }

    pub fn same_shape(&self, grid: &StaggeredGrid2D) -> bool {
        self.nx == grid.nx && self.ny == grid.ny && self.halo == grid.halo
    }
}

/// Fill the halo of `field` according to the grid's boundary kind.
pub fn fill_ghosts(
    field: &mut Field,
    grid: &StaggeredGrid2D,
    component: Component,
    t: f64,
    exact: Option<&dyn ExactSolution>,
) -> Result<()> {
    if !field.same_shape(grid) {
        return Err(Error::LengthMismatch("field does not match grid".into()));
    }
    match grid.bc {
        BoundaryKind::PeriodicBoth => {
            wrap_x(field);
            wrap_y(field);
        }
        BoundaryKind::ChannelNoFlowVertical => {
            wrap_x(field);
            reflect_y(field, component);
        }
        BoundaryKind::DirichletExact => {
            let exact = exact.ok_or(Error::MissingExactSolution)?;
            fill_dirichlet(field, grid, component, t, exact);
        }
    }
    Ok(())
}

fn wrap_x(field: &mut Field) {
    let (nx, h) = (field.nx, field.halo);
    for j in 0..field.ny as isize {
        let row = field.row_mut(j);
        for m in 0..h {
            row[m] = row[m + nx];
            row[h + nx + m] = row[h + m];
        }
    }
}

fn wrap_y(field: &mut Field) {
    let (ny, h) = (field.ny as isize, field.halo as isize);
    let s = field.stride();
    for m in 1..=h {
        let (dst, src) = (field.idx(-h, -m), field.idx(-h, ny - m));
        field.data.copy_within(src..src + s, dst);
        let (dst, src) = (field.idx(-h, ny + m - 1), field.idx(-h, m - 1));
        field.data.copy_within(src..src + s, dst);
    }
}

fn reflect_y(field: &mut Field, component: Component) {
    let (ny, h) = (field.ny as isize, field.halo as isize);
    let s = field.stride();
    let sign = component.channel_sign();
    let copy_row = |field: &mut Field, dst: isize, src: isize, sign: f64| {
        let (d, o) = (field.idx(-h, dst), field.idx(-h, src));
        for c in 0..s {
            field.data[d + c] = sign * field.data[o + c];
        }
    };
    match field.kind {
        NodeKind::VFace => {
            // Nodes sit on the walls: rows 0 and ny.
            if component == Component::V {
                let z = field.idx(-h, 0);
                field.data[z..z + s].iter_mut().for_each(|v| *v = 0.0);
                if h > 0 {
                    let z = field.idx(-h, ny);
                    field.data[z..z + s].iter_mut().for_each(|v| *v = 0.0);
                }
            }
            for m in 1..=h {
                copy_row(field, -m, m, sign);
                if m >= 2 {
                    copy_row(field, ny + m - 1, ny - m + 1, sign);
                }
            }
        }
        NodeKind::Center | NodeKind::UFace => {
            // Walls lie halfway between rows -1/0 and ny-1/ny.
            for m in 1..=h {
                copy_row(field, -m, m - 1, sign);
                copy_row(field, ny + m - 1, ny - m, sign);
            }
        }
    }
}

fn fill_dirichlet(
    field: &mut Field,
    grid: &StaggeredGrid2D,
    component: Component,
    t: f64,
    exact: &dyn ExactSolution,
) {
    let (nx, ny, h) = (grid.nx as isize, grid.ny as isize, grid.halo as isize);
    let kind = field.kind;
    for j in -h..ny + h {
        for i in -h..nx + h {
            let ghost = i < 0 || j < 0 || i >= nx || j >= ny;
            let on_boundary = match kind {
                NodeKind::UFace => i == 0,
                NodeKind::VFace => j == 0,
                NodeKind::Center => false,
            };
            if ghost || on_boundary {
                let (x, y) = grid.coords(kind, i, j);
                field.set(i, j, exact.value(component, x, y, t));
            }
        }
    }
}

/// Evolved quantities: staggered velocities, an optional cell-centred scalar and time.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowState {
    pub u: Field,
    pub v: Field,
    pub phi: Option<Field>,
    pub t: f64,
}

impl FlowState {
    pub fn zeros(grid: &StaggeredGrid2D, with_scalar: bool) -> Self {
        Self {
            u: Field::zeros(grid, NodeKind::UFace),
            v: Field::zeros(grid, NodeKind::VFace),
            phi: with_scalar.then(|| Field::zeros(grid, NodeKind::Center)),
            t: 0.0,
        }
    }

    pub fn fill_ghosts(
        &mut self,
        grid: &StaggeredGrid2D,
        exact: Option<&dyn ExactSolution>,
    ) -> Result<()> {
        fill_ghosts(&mut self.u, grid, Component::U, self.t, exact)?;
        fill_ghosts(&mut self.v, grid, Component::V, self.t, exact)?;
        if let Some(phi) = self.phi.as_mut() {
            fill_ghosts(phi, grid, Component::Scalar, self.t, exact)?;
        }
        Ok(())
    }

    pub fn all_finite(&self) -> bool {
        self.u.all_finite_interior()
            && self.v.all_finite_interior()
            && self.phi.as_ref().map_or(true, Field::all_finite_interior)
    }
}
