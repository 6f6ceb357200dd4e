//! Panel quadrature of the combined layer kernel `D - i eta Gamma`.
//!
//! Three regimes per (target, panel) pair:
//! * far: the panel's own Gauss-Legendre rule;
//! * near: recursive bisection of the panel parameter until every piece is
//!   well separated from the target, with the density interpolated by the
//!   panel's Lagrange basis;
//! * self (target on the panel): the Cauchy part of the double-layer kernel
//!   is subtracted and integrated exactly; the log-singular remainder is
//!   integrated on pieces graded geometrically toward the target.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::elastic::{ComplexTensor2, KupradzeKernel, Point2};
use crate::geometry::BoundaryMesh;
use crate::quadrature::GaussLegendre;
use crate::Result;

/// Far-field acceptance: distance bound over panel length.
const FAR_RATIO: f64 = 0.5;
/// Near-field sub-piece acceptance.
const NEAR_RATIO: f64 = 0.6;
const MAX_DEPTH: usize = 48;
const GRADING_RATIO: f64 = 0.25;
/// Arclength excised around the target, relative to `max(1, |x|)`.
/// Below this the rounding of the node coordinates dominates the kernel.
const SINGULAR_CUTOFF: f64 = 1e-10;
const GRADED_ORDER: usize = 12;

/// Where a row of the operator is evaluated.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Target {
    /// On the boundary, at local parameter `u` of `panel`.
    OnPanel { panel: usize, u: f64 },
    /// Off the boundary.
    Off(Point2),
}

pub(crate) struct Integrator<'a> {
    mesh: &'a BoundaryMesh,
    kernel: KupradzeKernel,
    coupling: Complex64,
    graded: GaussLegendre,
    cauchy: ComplexTensor2,
}

impl<'a> Integrator<'a> {
    pub(crate) fn new(mesh: &'a BoundaryMesh, kernel: KupradzeKernel, eta: f64) -> Self {
        let c = Complex64::from(kernel.cauchy_strength());
        let zero = Complex64::new(0.0, 0.0);
        Self {
            mesh,
            kernel,
            coupling: Complex64::new(0.0, -eta),
            graded: GaussLegendre::new(GRADED_ORDER),
            cauchy: ComplexTensor2::new(zero, -c, c, zero),
        }
    }

    pub(crate) fn target_point(&self, target: Target) -> Point2 {
        match target {
            Target::OnPanel { panel, u } => self.mesh.panel_point(panel, u).point,
            Target::Off(x) => x,
        }
    }

    /// `D(x, y) - i eta Gamma(x, y)` for a boundary point `y` with normal `n`.
    fn combined(&self, x: Point2, y: Point2, n: crate::elastic::Direction2) -> Result<ComplexTensor2> {
        let pair = self.kernel.pair(x, y, n)?;
        Ok(pair.double + pair.single * self.coupling)
    }

    /// Adds to `row[b]` the weight of density node `b` for `target`.
    pub(crate) fn accumulate(&self, target: Target, row: &mut [ComplexTensor2]) -> Result<()> {
        let x = self.target_point(target);
        let order = self.mesh.order();
        let mut basis = alloc::vec![0.0; order];
        for (q, panel) in self.mesh.panels().iter().enumerate() {
            let slots = &mut row[panel.first_node..panel.first_node + order];
            match target {
                Target::OnPanel { panel: p, u } if p == q => self.self_panel(x, q, u, slots, &mut basis)?,
                _ => {
                    let bound = x.distance(panel.center) - panel.radius;
                    if bound >= FAR_RATIO * panel.length {
                        self.far_panel(x, panel.first_node, slots)?;
                    } else {
                        self.near_panel(x, q, slots, &mut basis)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn far_panel(&self, x: Point2, first: usize, slots: &mut [ComplexTensor2]) -> Result<()> {
        let (nodes, normals, weights) = (self.mesh.nodes(), self.mesh.normals(), self.mesh.weights());
        for (k, slot) in slots.iter_mut().enumerate() {
            let b = first + k;
            *slot += self.combined(x, nodes[b], normals[b])? * Complex64::from(weights[b]);
        }
        Ok(())
    }

    fn near_panel(&self, x: Point2, q: usize, slots: &mut [ComplexTensor2], basis: &mut [f64]) -> Result<()> {
        let mut stack: Vec<(f64, f64, usize)> = alloc::vec![(-1.0, 1.0, 0)];
        while let Some((a, b, depth)) = stack.pop() {
            let m = 0.5 * (a + b);
            let (pa, pm, pb) = (
                self.mesh.panel_point(q, a).point,
                self.mesh.panel_point(q, m).point,
                self.mesh.panel_point(q, b).point,
            );
            let len = pa.distance(pm) + pm.distance(pb);
            let dist = x.distance(pa).min(x.distance(pm)).min(x.distance(pb));
            if dist >= NEAR_RATIO * len || depth >= MAX_DEPTH {
                self.integrate_piece(x, q, a, b, self.mesh.rule(), slots, basis, None)?;
            } else {
                stack.push((a, m, depth + 1));
                stack.push((m, b, depth + 1));
            }
        }
        Ok(())
    }

    fn self_panel(&self, x: Point2, q: usize, us: f64, slots: &mut [ComplexTensor2], basis: &mut [f64]) -> Result<()> {
        let mut at_target = alloc::vec![0.0; basis.len()];
        self.mesh.lagrange(us, &mut at_target);
        let speed = self.mesh.panel_point(q, us).speed();
        let cutoff = SINGULAR_CUTOFF * x.norm().max(1.0) / speed;
        for (side_len, sign) in [(us + 1.0, -1.0), (1.0 - us, 1.0)] {
            let mut outer = side_len;
            while outer > cutoff {
                let inner = (outer * GRADING_RATIO).max(cutoff);
                let (a, b) = if sign < 0.0 {
                    (us - outer, us - inner)
                } else {
                    (us + inner, us + outer)
                };
                self.integrate_piece(x, q, a, b, &self.graded, slots, basis, Some((us, &at_target)))?;
                outer = inner;
            }
        }
        let log = Complex64::from(libm::log((1.0 - us) / (1.0 + us)));
        for (slot, &l) in slots.iter_mut().zip(&at_target) {
            *slot += self.cauchy * (log * l);
        }
        Ok(())
    }

    /// Gauss-Legendre on `[a, b]` of `K J L_k`, minus the Cauchy part
    /// `g* L_k(u*) / (u - u*)` when `subtract` is given.
    #[allow(clippy::too_many_arguments)]
    fn integrate_piece(
        &self,
        x: Point2,
        q: usize,
        a: f64,
        b: f64,
        rule: &GaussLegendre,
        slots: &mut [ComplexTensor2],
        basis: &mut [f64],
        subtract: Option<(f64, &[f64])>,
    ) -> Result<()> {
        for (u, w) in rule.mapped(a, b) {
            let pp = self.mesh.panel_point(q, u);
            let k = self.combined(x, pp.point, pp.normal())? * Complex64::from(pp.speed() * w);
            self.mesh.lagrange(u, basis);
            for (slot, &l) in slots.iter_mut().zip(basis.iter()) {
                *slot += k * Complex64::from(l);
            }
            if let Some((us, at_target)) = subtract {
                let scale = w / (u - us);
                for (slot, &l) in slots.iter_mut().zip(at_target) {
                    *slot -= self.cauchy * Complex64::from(l * scale);
                }
            }
        }
        Ok(())
    }
}
