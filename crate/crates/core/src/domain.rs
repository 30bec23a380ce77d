//! Rectangular grids, quadrature, the discrete Laplacian and field norms.
//!
//! A domain is a uniform tensor grid on an interval or a rectangle. Values
//! live on every node; with Dirichlet conditions the boundary nodes are held
//! at zero and only interior nodes are unknowns, with Neumann conditions all
//! nodes are unknowns.
//!
//! The Laplacian is assembled edge by edge. Each grid edge carries the weight
//! `w_perp / h`, where `h` is the spacing along the edge and `w_perp` the
//! trapezoidal weight in the transverse direction, so that
//!
//! ```text
//! |u|²_{H¹} = Σ_edges w_e |u_p − u_q|²,   (−Δ_h u)_i = (K u)_i / w_i
//! ```
//!
//! with `K` the edge stiffness matrix and `w_i` the trapezoidal node weight.
//! On Neumann boundaries this reproduces the mirrored ghost-node stencil, and
//! summation by parts `⟨−Δ_h u, v⟩ = Σ_e w_e (u_p − u_q) conj(v_p − v_q)`
//! holds exactly.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::{nested_dissection, Ldl, Scalar, SymbolicLdl, SymmetricPattern};

/// Boundary condition of the rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Dirichlet,
    Neumann,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Boundary::Dirichlet => write!(f, "dirichlet"),
            Boundary::Neumann => write!(f, "neumann"),
        }
    }
}

/// Geometry request for [`Domain::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// Node count per axis, boundary nodes included.
    pub nodes: Vec<usize>,
    pub boundary: Boundary,
}

impl DomainSpec {
    pub fn interval(lower: f64, upper: f64, nodes: usize, boundary: Boundary) -> Self {
        DomainSpec {
            lower: vec![lower],
            upper: vec![upper],
            nodes: vec![nodes],
            boundary,
        }
    }

    pub fn square(lower: f64, upper: f64, nodes: usize, boundary: Boundary) -> Self {
        DomainSpec {
            lower: vec![lower, lower],
            upper: vec![upper, upper],
            nodes: vec![nodes, nodes],
            boundary,
        }
    }

    /// Same geometry with the spacing halved `k` times.
    pub fn refined(&self, k: u32) -> Self {
        let mut out = self.clone();
        for n in &mut out.nodes {
            *n = (*n - 1) * (1usize << k) + 1;
        }
        out
    }
}

/// Grid edge between nodes `p < q` with stiffness weight `w`.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub p: usize,
    pub q: usize,
    pub w: f64,
}

/// Quadrature-weighted discrete norms of a grid function.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
    pub h1_seminorm: f64,
    pub h1: f64,
}

/// Complex grid function with an optional stored saturated section.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FieldState {
    pub values: Vec<Complex64>,
    pub section: Option<Vec<Complex64>>,
}

impl FieldState {
    pub fn new(values: Vec<Complex64>) -> Self {
        FieldState {
            values,
            section: None,
        }
    }

    pub fn zeros(len: usize) -> Self {
        FieldState::new(vec![Complex64::default(); len])
    }

    pub fn with_section(mut self, section: Vec<Complex64>) -> Self {
        self.section = Some(section);
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Domain {
    dim: usize,
    lower: [f64; 2],
    upper: [f64; 2],
    nodes: [usize; 2],
    h: [f64; 2],
    boundary: Boundary,
    weights: Vec<f64>,
    fixed: Vec<bool>,
    edges: Vec<Edge>,
    structure: Arc<Structure>,
}

/// Elimination order, sparsity and stiffness values for a set of unknowns.
#[derive(Debug, Clone)]
struct Structure {
    order: Arc<Vec<usize>>,
    pattern: SymmetricPattern,
    symbolic: SymbolicLdl,
    stiffness: Vec<f64>,
}

impl Structure {
    /// Principal submatrix of the stiffness matrix on the nodes in `order`.
    fn build(edges: &[Edge], order: Vec<usize>, total: usize) -> Self {
        let mut position = vec![NONE; total];
        for (p, &node) in order.iter().enumerate() {
            position[node] = p;
        }
        let mut columns = vec![Vec::new(); order.len()];
        for e in edges {
            let (pp, pq) = (position[e.p], position[e.q]);
            if pp != NONE && pq != NONE {
                columns[pp.max(pq)].push(pp.min(pq));
            }
        }
        let pattern = SymmetricPattern::from_columns(columns);
        let symbolic = SymbolicLdl::analyze(&pattern);
        let mut stiffness = vec![0.0; pattern.nnz()];
        for e in edges {
            let (pp, pq) = (position[e.p], position[e.q]);
            if pp != NONE {
                stiffness[pattern.diag_pos(pp)] += e.w;
            }
            if pq != NONE {
                stiffness[pattern.diag_pos(pq)] += e.w;
            }
            if pp != NONE && pq != NONE {
                let k = pattern.position(pp.min(pq), pp.max(pq)).expect("edge entry in pattern");
                stiffness[k] -= e.w;
            }
        }
        Structure {
            order: Arc::new(order),
            pattern,
            symbolic,
            stiffness,
        }
    }
}

impl Domain {
    pub fn new(spec: &DomainSpec) -> Result<Self> {
        let dim = spec.lower.len();
        if !(1..=2).contains(&dim) || spec.upper.len() != dim || spec.nodes.len() != dim {
            return Err(Error::invalid(format!(
                "domain needs matching lower/upper/nodes of dimension 1 or 2, got {}/{}/{}",
                spec.lower.len(),
                spec.upper.len(),
                spec.nodes.len()
            )));
        }
        let mut lower = [0.0; 2];
        let mut upper = [0.0; 2];
        let mut nodes = [1usize; 2];
        let mut h = [1.0; 2];
        for d in 0..dim {
            let (lo, hi) = (spec.lower[d], spec.upper[d]);
            if !lo.is_finite() || !hi.is_finite() || hi <= lo {
                return Err(Error::invalid(format!(
                    "axis {d} has non-positive extent [{lo}, {hi}]"
                )));
            }
            if spec.nodes[d] < 3 {
                return Err(Error::invalid(format!(
                    "axis {d} needs at least 3 nodes, got {}",
                    spec.nodes[d]
                )));
            }
            lower[d] = lo;
            upper[d] = hi;
            nodes[d] = spec.nodes[d];
            h[d] = (hi - lo) / (spec.nodes[d] - 1) as f64;
        }
        let [nx, ny] = nodes;
        let total = nx * ny;

        let axis_weight = |d: usize, k: usize| {
            if d >= dim {
                1.0
            } else if k == 0 || k == nodes[d] - 1 {
                0.5 * h[d]
            } else {
                h[d]
            }
        };

        let mut weights = vec![0.0; total];
        let mut fixed = vec![false; total];
        for j in 0..ny {
            for i in 0..nx {
                let id = i + nx * j;
                weights[id] = axis_weight(0, i) * axis_weight(1, j);
                let on_boundary = i == 0 || i == nx - 1 || (dim == 2 && (j == 0 || j == ny - 1));
                fixed[id] = on_boundary && spec.boundary == Boundary::Dirichlet;
            }
        }

        let mut edges = Vec::with_capacity(2 * total);
        for j in 0..ny {
            for i in 0..nx {
                let id = i + nx * j;
                if i + 1 < nx {
                    edges.push(Edge {
                        p: id,
                        q: id + 1,
                        w: axis_weight(1, j) / h[0],
                    });
                }
                if dim == 2 && j + 1 < ny {
                    edges.push(Edge {
                        p: id,
                        q: id + nx,
                        w: axis_weight(0, i) / h[1],
                    });
                }
            }
        }

        let order = if dim == 1 {
            (0..total).filter(|&i| !fixed[i]).collect::<Vec<_>>()
        } else {
            let off = usize::from(spec.boundary == Boundary::Dirichlet);
            let (ux, uy) = (nx - 2 * off, ny - 2 * off);
            nested_dissection(ux, uy, |i, j| (i + off) + nx * (j + off))
        };
        let structure = Structure::build(&edges, order, total);

        Ok(Domain {
            dim,
            lower,
            upper,
            nodes,
            h,
            boundary: spec.boundary,
            weights,
            fixed,
            edges,
            structure: Arc::new(structure),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Node counts per axis (the second entry is 1 for intervals).
    pub fn shape(&self) -> [usize; 2] {
        self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn unknown_count(&self) -> usize {
        self.structure.order.len()
    }

    pub fn spacing(&self) -> &[f64] {
        &self.h[..self.dim]
    }

    pub fn h_min(&self) -> f64 {
        self.spacing().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn h_max(&self) -> f64 {
        self.spacing().iter().copied().fold(0.0, f64::max)
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower[..self.dim]
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper[..self.dim]
    }

    pub fn diameter(&self) -> f64 {
        (0..self.dim)
            .map(|d| (self.upper[d] - self.lower[d]).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn spec(&self) -> DomainSpec {
        DomainSpec {
            lower: self.lower().to_vec(),
            upper: self.upper().to_vec(),
            nodes: self.nodes[..self.dim].to_vec(),
            boundary: self.boundary,
        }
    }

    /// Coordinates of node `id`; the second entry is 0 for intervals.
    pub fn coord(&self, id: usize) -> [f64; 2] {
        let i = id % self.nodes[0];
        let j = id / self.nodes[0];
        let x = self.lower[0] + i as f64 * self.h[0];
        let y = if self.dim == 2 {
            self.lower[1] + j as f64 * self.h[1]
        } else {
            0.0
        };
        [x, y]
    }

    pub fn distance(&self, id: usize, x0: [f64; 2]) -> f64 {
        let c = self.coord(id);
        ((c[0] - x0[0]).powi(2) + (c[1] - x0[1]).powi(2)).sqrt()
    }

    pub fn contains(&self, x: [f64; 2]) -> bool {
        (0..self.dim).all(|d| x[d] >= self.lower[d] && x[d] <= self.upper[d])
    }

    /// Trapezoidal quadrature weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// True for nodes pinned to zero by a Dirichlet condition.
    pub fn is_fixed(&self, id: usize) -> bool {
        self.fixed[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Nodal values of `f` evaluated at the node coordinates, zero on fixed nodes.
    pub fn sample(&self, f: impl Fn([f64; 2]) -> Complex64) -> Vec<Complex64> {
        (0..self.node_count())
            .map(|id| if self.fixed[id] { Complex64::default() } else { f(self.coord(id)) })
            .collect()
    }

    /// Zeroes the values held fixed by the boundary condition.
    pub fn enforce_boundary(&self, u: &mut [Complex64]) {
        for (v, &f) in u.iter_mut().zip(&self.fixed) {
            if f {
                *v = Complex64::default();
            }
        }
    }

    /// `Σ w_i u_i conj(v_i)`.
    pub fn inner(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        self.weights
            .iter()
            .zip(u.iter().zip(v))
            .map(|(w, (a, b))| a * b.conj() * *w)
            .sum()
    }

    /// `Σ w_i f_i`.
    pub fn integral(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.weights.iter().enumerate().map(|(i, w)| w * f(i)).sum()
    }

    /// Gradient pairing `Σ_e w_e (u_p − u_q) conj(v_p − v_q)`.
    pub fn grad_inner(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        self.edges
            .iter()
            .map(|e| (u[e.p] - u[e.q]) * (v[e.p] - v[e.q]).conj() * e.w)
            .sum()
    }

    pub fn seminorm_sq(&self, u: &[Complex64]) -> f64 {
        self.edges.iter().map(|e| (u[e.p] - u[e.q]).norm_sqr() * e.w).sum()
    }

    pub fn l1(&self, u: &[Complex64]) -> f64 {
        self.integral(|i| u[i].norm())
    }

    pub fn l2_sq(&self, u: &[Complex64]) -> f64 {
        self.integral(|i| u[i].norm_sqr())
    }

    pub fn h1(&self, u: &[Complex64]) -> f64 {
        (self.l2_sq(u) + self.seminorm_sq(u)).sqrt()
    }

    pub fn norms(&self, u: &[Complex64]) -> Norms {
        let l2sq = self.l2_sq(u);
        let semi = self.seminorm_sq(u);
        Norms {
            l1: self.l1(u),
            l2: l2sq.sqrt(),
            h1_seminorm: semi.sqrt(),
            h1: (l2sq + semi).sqrt(),
        }
    }

    /// `K u`, the stiffness matrix applied to nodal values.
    pub fn stiffness_apply<T: Scalar>(&self, u: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); u.len()];
        for e in &self.edges {
            let d = (u[e.p] - u[e.q]) * T::from_real(e.w);
            out[e.p] += d;
            out[e.q] -= d;
        }
        out
    }

    /// Nodal `−Δ_h u`; zero on fixed nodes.
    pub fn neg_laplacian(&self, u: &[Complex64]) -> Vec<Complex64> {
        let mut out = self.stiffness_apply(u);
        for (i, v) in out.iter_mut().enumerate() {
            *v = if self.fixed[i] {
                Complex64::default()
            } else {
                *v / self.weights[i]
            };
        }
        out
    }

    /// Real counterpart of [`Domain::neg_laplacian`].
    pub fn neg_laplacian_real(&self, u: &[f64]) -> Vec<f64> {
        let mut out = self.stiffness_apply(u);
        for (i, v) in out.iter_mut().enumerate() {
            *v = if self.fixed[i] { 0.0 } else { *v / self.weights[i] };
        }
        out
    }

    /// Factors `−Δ_h + diag(shift)` on the unknowns.
    ///
    /// `shift` holds one entry per node; entries on fixed nodes are ignored.
    pub fn factor<T: Scalar>(&self, shift: &[T]) -> Result<Factorization<T>> {
        self.factor_with(&self.structure, shift)
    }

    fn factor_with<T: Scalar>(&self, st: &Structure, shift: &[T]) -> Result<Factorization<T>> {
        assert_eq!(shift.len(), self.node_count());
        let mut values: Vec<T> = st.stiffness.iter().map(|&v| T::from_real(v)).collect();
        for (p, &node) in st.order.iter().enumerate() {
            values[st.pattern.diag_pos(p)] += shift[node] * T::from_real(self.weights[node]);
        }
        let ldl = Ldl::factor(&st.symbolic, &st.pattern, &values)?;
        Ok(Factorization {
            ldl,
            order: Arc::clone(&st.order),
            weights: self.weights.clone(),
            nodes: self.node_count(),
        })
    }

    /// Elimination order restricted to the unknowns flagged in `active`.
    fn restricted_order(&self, active: &[bool]) -> Vec<usize> {
        let keep = |id: usize| active[id] && !self.fixed[id];
        if self.dim == 1 {
            return (0..self.node_count()).filter(|&i| keep(i)).collect();
        }
        let nx = self.nodes[0];
        let (mut i0, mut i1, mut j0, mut j1) = (usize::MAX, 0, usize::MAX, 0);
        for id in (0..self.node_count()).filter(|&i| keep(i)) {
            let (i, j) = (id % nx, id / nx);
            i0 = i0.min(i);
            i1 = i1.max(i);
            j0 = j0.min(j);
            j1 = j1.max(j);
        }
        if i0 == usize::MAX {
            return Vec::new();
        }
        nested_dissection(i1 + 1 - i0, j1 + 1 - j0, |i, j| (i + i0) + nx * (j + j0))
            .into_iter()
            .filter(|&id| keep(id))
            .collect()
    }

    /// Like [`Domain::factor_shift`] with every node outside `active` held at zero.
    ///
    /// Only the principal submatrix on the active unknowns is factored, which
    /// is much cheaper when the active set is a small part of the grid.
    pub fn factor_shift_on(&self, active: &[bool], shift: &[Complex64]) -> Result<ShiftedOperator> {
        let order = self.restricted_order(active);
        if order.len() == self.unknown_count() {
            return self.factor_shift(shift);
        }
        let st = Structure::build(&self.edges, order, self.node_count());
        if shift.iter().all(|z| z.im == 0.0) {
            let re: Vec<f64> = shift.iter().map(|z| z.re).collect();
            Ok(ShiftedOperator::Real(self.factor_with(&st, &re)?))
        } else {
            Ok(ShiftedOperator::Complex(self.factor_with(&st, shift)?))
        }
    }

    /// Factors `−Δ_h + diag(shift)`, in real arithmetic when every shift is real.
    pub fn factor_shift(&self, shift: &[Complex64]) -> Result<ShiftedOperator> {
        if shift.iter().all(|z| z.im == 0.0) {
            let re: Vec<f64> = shift.iter().map(|z| z.re).collect();
            Ok(ShiftedOperator::Real(self.factor(&re)?))
        } else {
            Ok(ShiftedOperator::Complex(self.factor(shift)?))
        }
    }

    /// Factors `−Δ_h + c` for a constant real shift `c`.
    pub fn factor_constant(&self, c: f64) -> Result<Factorization<f64>> {
        self.factor(&vec![c; self.node_count()])
    }

    /// Discrete Riesz norm of the functional given by nodal loads `⟨F, e_i⟩`.
    pub fn dual_norm_loads(&self, loads: &[Complex64]) -> Result<f64> {
        let fac = self.factor_constant(1.0).map_err(|e| Error::Internal(format!("Riesz solve: {e}")))?;
        let w = fac.solve_loads(loads);
        let pairing: f64 = loads.iter().zip(&w).map(|(f, w)| (f * w.conj()).re).sum();
        Ok(pairing.max(0.0).sqrt())
    }

    /// Discrete Riesz norm of a grid density `F`: `⟨F, w⟩^{1/2}` with `(−Δ_h + I) w = F`.
    pub fn dual_norm(&self, f: &[Complex64]) -> Result<f64> {
        self.dual_norm_loads(&self.loads(f))
    }

    /// Nodal loads `w_i f_i` of a density.
    pub fn loads(&self, f: &[Complex64]) -> Vec<Complex64> {
        f.iter().zip(&self.weights).map(|(v, w)| v * *w).collect()
    }

    /// Node nearest to `x`.
    pub fn nearest_node(&self, x: [f64; 2]) -> usize {
        let idx = |d: usize| -> usize {
            if d >= self.dim {
                return 0;
            }
            let t = ((x[d] - self.lower[d]) / self.h[d]).round();
            t.clamp(0.0, (self.nodes[d] - 1) as f64) as usize
        };
        idx(0) + self.nodes[0] * idx(1)
    }

    /// Nodes with `|x − x0| ≤ ρ`.
    pub fn ball_mask(&self, x0: [f64; 2], rho: f64) -> Vec<usize> {
        let slack = 1e-12 * self.diameter();
        (0..self.node_count())
            .filter(|&i| self.distance(i, x0) <= rho + slack)
            .collect()
    }

    /// Nodes grouped in radial shells `[k w, (k+1) w)` around `x0`.
    pub fn shells(&self, x0: [f64; 2], width: f64) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.node_count() {
            let k = (self.distance(i, x0) / width).floor() as usize;
            if out.len() <= k {
                out.resize(k + 1, Vec::new());
            }
            out[k].push(i);
        }
        out
    }

    /// Index of the mirror image of node `id` across the midpoint of `axis`.
    pub fn reflect(&self, id: usize, axis: usize) -> usize {
        let (nx, ny) = (self.nodes[0], self.nodes[1]);
        let (i, j) = (id % nx, id / nx);
        match axis {
            0 => (nx - 1 - i) + nx * j,
            _ => i + nx * (ny - 1 - j),
        }
    }

    /// Index of the image of node `id` under a quarter turn about the centre.
    ///
    /// Only meaningful on square grids with equal node counts per axis.
    pub fn quarter_turn(&self, id: usize) -> Option<usize> {
        let (nx, ny) = (self.nodes[0], self.nodes[1]);
        if self.dim != 2 || nx != ny {
            return None;
        }
        let (i, j) = (id % nx, id / nx);
        // (x, y) -> (−y, x) about the centre
        Some((nx - 1 - j) + nx * i)
    }
}

/// Factored `−Δ_h + diag(shift)` together with the node numbering.
#[derive(Debug, Clone)]
pub struct Factorization<T: Scalar> {
    ldl: Ldl<T>,
    order: Arc<Vec<usize>>,
    weights: Vec<f64>,
    nodes: usize,
}

impl<T: Scalar> Factorization<T> {
    /// Solves with nodal loads `⟨F, e_i⟩` as right-hand side.
    pub fn solve_loads<V>(&self, loads: &[V]) -> Vec<V>
    where
        V: Copy + Default + std::ops::SubAssign + std::ops::Mul<T, Output = V> + std::ops::Div<T, Output = V>,
    {
        let mut x: Vec<V> = self.order.iter().map(|&node| loads[node]).collect();
        self.ldl.solve_in_place(&mut x);
        let mut out = vec![V::default(); self.nodes];
        for (p, &node) in self.order.iter().enumerate() {
            out[node] = x[p];
        }
        out
    }

    /// Solves `(−Δ_h + shift) u = f` for a nodal density `f`.
    pub fn solve(&self, f: &[Complex64]) -> Vec<Complex64>
    where
        Complex64: std::ops::Mul<T, Output = Complex64> + std::ops::Div<T, Output = Complex64>,
    {
        let loads: Vec<Complex64> = f.iter().zip(&self.weights).map(|(v, w)| v * *w).collect();
        self.solve_loads(&loads)
    }

    /// Real counterpart of [`Factorization::solve`].
    pub fn solve_real(&self, f: &[f64]) -> Vec<f64>
    where
        f64: std::ops::Mul<T, Output = f64> + std::ops::Div<T, Output = f64>,
    {
        let loads: Vec<f64> = f.iter().zip(&self.weights).map(|(v, w)| v * w).collect();
        self.solve_loads(&loads)
    }
}

/// Factorization of `−Δ_h + diag(shift)` in the cheapest sufficient arithmetic.
#[derive(Debug, Clone)]
pub enum ShiftedOperator {
    Real(Factorization<f64>),
    Complex(Factorization<Complex64>),
}

impl ShiftedOperator {
    /// Solves `(−Δ_h + shift) u = f` for a nodal density `f`.
    pub fn solve(&self, f: &[Complex64]) -> Vec<Complex64> {
        match self {
            ShiftedOperator::Real(fac) => fac.solve(f),
            ShiftedOperator::Complex(fac) => fac.solve(f),
        }
    }
}
