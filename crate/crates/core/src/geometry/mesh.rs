//! Panel discretisation of the closed boundary used by the solver.
//!
//! The surface graph over the window `[lo, hi]` is closed into a bounded
//! obstacle: vertical sides and a flat bottom below the lowest point of the
//! graph, joined by corners whose curvature vanishes to high order at both
//! ends so the closed curve stays smooth. The curve is traversed clockwise (graph left
//! to right first), so the left normal of the tangent points out of the
//! obstacle and up on the graph. Every panel carries a Gauss-Legendre rule
//! in a local parameter `u` in `[-1, 1]`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::ops::Range;

use super::profile::Surface;
use crate::elastic::{Direction2, ElasticMedium, Point2};
use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

/// Distance the window must extend past the flat-beyond abscissa.
pub const WINDOW_MARGIN: f64 = 1.0;
/// Shear wavelengths added to the support when choosing a window.
pub const WINDOW_WAVELENGTHS: f64 = 4.0;
/// Arclength of each closing corner.
const CORNER_LENGTH: f64 = 3.0;
const BOTTOM_DEPTH: f64 = 4.0;
const CORNER_RULE: usize = 24;
/// Refinement extends this far past the measurement aperture.
const REFINE_MARGIN: f64 = 2.0;
const CLEARANCE_FLOOR: f64 = 0.02;
/// Panel length over clearance at ten nodes per wavelength.
const CLEARANCE_RATIO_AT_TEN: f64 = 3.0;
/// Panel length at a kink, relative to the far-field length.
const CORNER_FRACTION: f64 = 1.0 / 32.0;
const GRADING: f64 = 0.4;
const FINE_STEP: f64 = 0.01;

/// Where the mesh must resolve sources sitting close to the surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    /// Height `b` of the measurement line.
    pub height: f64,
    /// Half-width `a` of the measurement aperture.
    pub half_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshOptions {
    pub shear_wavelength: f64,
    pub nodes_per_wavelength: f64,
    pub panel_order: usize,
    pub window: (f64, f64),
    pub refinement: Option<Refinement>,
}

impl MeshOptions {
    /// Symmetric window `max(flat_beyond, aperture) + 4` shear wavelengths.
    pub fn for_surface(
        surface: &dyn Surface,
        medium: &ElasticMedium,
        nodes_per_wavelength: f64,
        refinement: Option<Refinement>,
    ) -> Self {
        let lambda = medium.shear_wavelength();
        let aperture = refinement.map_or(0.0, |r| r.half_width);
        let w = surface.flat_beyond().max(aperture) + WINDOW_WAVELENGTHS * lambda;
        Self {
            shear_wavelength: lambda,
            nodes_per_wavelength,
            panel_order: 16,
            window: (-w, w),
            refinement,
        }
    }

    fn far_length(&self) -> f64 {
        self.panel_order as f64 * self.shear_wavelength / self.nodes_per_wavelength
    }
}

/// Smooth pieces of the closed boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    /// `(t, f(t))` for `t` in `[x0, x1]`.
    Graph { x0: f64, x1: f64 },
    /// Curve of length `length` starting at `start` with tangent angle
    /// `heading + turn * smoothstep(t)`.
    Corner {
        start: Point2,
        heading: f64,
        turn: f64,
        length: f64,
    },
    /// `from + t (to - from)`.
    Line { from: Point2, to: Point2 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub piece: usize,
    /// Piece-parameter interval.
    pub t0: f64,
    pub t1: f64,
    pub first_node: usize,
    pub on_graph: bool,
    pub length: f64,
    pub center: Point2,
    /// Largest distance from `center` to any point of the panel.
    pub radius: f64,
}

/// Nodes, outward normals and arclength weights of the closed boundary.
#[derive(Debug, Clone)]
pub struct BoundaryMesh {
    surface: Arc<dyn Surface>,
    pieces: Vec<Piece>,
    panels: Vec<Panel>,
    rule: GaussLegendre,
    corner_rule: GaussLegendre,
    barycentric: Vec<f64>,
    nodes: Vec<Point2>,
    normals: Vec<Direction2>,
    weights: Vec<f64>,
    node_panel: Vec<usize>,
    graph_nodes: Range<usize>,
    window: (f64, f64),
    side_offset: f64,
    options: MeshOptions,
}

/// Point and `d/du` on a panel at local parameter `u`.
#[derive(Debug, Clone, Copy)]
pub struct PanelPoint {
    pub point: Point2,
    pub velocity: Point2,
}

impl PanelPoint {
    pub fn speed(&self) -> f64 {
        self.velocity.norm()
    }

    pub fn normal(&self) -> Direction2 {
        Direction2::new(-self.velocity.x2, self.velocity.x1).expect("regular parametrisation")
    }
}

impl BoundaryMesh {
    pub fn surface(&self) -> &Arc<dyn Surface> {
        &self.surface
    }

    pub fn options(&self) -> &MeshOptions {
        &self.options
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn panels(&self) -> &[Panel] {
        &self.panels
    }

    pub fn rule(&self) -> &GaussLegendre {
        &self.rule
    }

    pub fn order(&self) -> usize {
        self.rule.len()
    }

    pub fn nodes(&self) -> &[Point2] {
        &self.nodes
    }

    pub fn normals(&self) -> &[Direction2] {
        &self.normals
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    /// Node indices lying on the surface graph (a contiguous prefix).
    pub fn graph_nodes(&self) -> Range<usize> {
        self.graph_nodes.clone()
    }

    pub fn panel_of(&self, node: usize) -> usize {
        self.node_panel[node]
    }

    /// Node spacing of the panel holding `node`.
    pub fn spacing_at(&self, node: usize) -> f64 {
        self.panels[self.node_panel[node]].length / self.order() as f64
    }

    /// Arclength of the graph part.
    pub fn graph_arclength(&self) -> f64 {
        self.weights[self.graph_nodes()].iter().sum()
    }

    pub fn piece_point(&self, piece: usize, t: f64) -> PanelPoint {
        match self.pieces[piece] {
            Piece::Graph { .. } => PanelPoint {
                point: Point2::new(t, self.surface.height(t)),
                velocity: Point2::new(1.0, self.surface.slope(t)),
            },
            Piece::Corner {
                start,
                heading,
                turn,
                length,
            } => {
                let th = heading + turn * smoothstep(t);
                PanelPoint {
                    point: start + corner_offset(&self.corner_rule, heading, turn, t) * length,
                    velocity: Point2::new(libm::cos(th), libm::sin(th)) * length,
                }
            }
            Piece::Line { from, to } => PanelPoint {
                point: from + (to - from) * t,
                velocity: to - from,
            },
        }
    }

    /// Point on `panel` at local parameter `u`, velocity with respect to `u`.
    pub fn panel_point(&self, panel: usize, u: f64) -> PanelPoint {
        let p = &self.panels[panel];
        let half = 0.5 * (p.t1 - p.t0);
        let pp = self.piece_point(p.piece, p.t0 + (u + 1.0) * half);
        PanelPoint {
            point: pp.point,
            velocity: pp.velocity * half,
        }
    }

    /// Lagrange basis on the panel nodes evaluated at `u`.
    pub fn lagrange(&self, u: f64, out: &mut [f64]) {
        let nodes = &self.rule.nodes;
        if let Some(k) = nodes.iter().position(|&x| x == u) {
            out.iter_mut().for_each(|v| *v = 0.0);
            out[k] = 1.0;
            return;
        }
        let mut total = 0.0;
        for (k, v) in out.iter_mut().enumerate() {
            *v = self.barycentric[k] / (u - nodes[k]);
            total += *v;
        }
        out.iter_mut().for_each(|v| *v /= total);
    }

    /// Smallest node distance to `x` and the node achieving it.
    pub fn nearest_node(&self, x: Point2) -> (f64, usize) {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, y)| (x.distance(*y), i))
            .fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a })
    }

    /// Whether `x` lies strictly above the surface graph, or outside the
    /// closed obstacle altogether.
    pub fn is_outside(&self, x: Point2) -> bool {
        let (lo, hi) = self.window;
        let bottom = self.bottom();
        if x.x1 < lo - self.side_offset || x.x1 > hi + self.side_offset || x.x2 < bottom {
            return true;
        }
        x.x2 > self.surface.height(x.x1.clamp(lo, hi))
    }

    fn bottom(&self) -> f64 {
        match self
            .pieces
            .iter()
            .find(|p| matches!(p, Piece::Line { from, to } if from.x2 == to.x2))
        {
            Some(Piece::Line { from, .. }) => from.x2,
            _ => f64::NEG_INFINITY,
        }
    }
}

/// Discretises `surface` closed into a bounded obstacle.
pub fn discretize(surface: Arc<dyn Surface>, options: &MeshOptions) -> Result<BoundaryMesh> {
    let (lo, hi) = options.window;
    let required = surface.flat_beyond() + WINDOW_MARGIN;
    if !(-lo >= required && hi >= required) {
        return Err(Error::WindowTooSmall { lo, hi, required });
    }
    if !(options.nodes_per_wavelength > 0.0 && options.shear_wavelength > 0.0) {
        return Err(Error::InvalidParameter(
            "nodes per wavelength and wavelength must be positive",
        ));
    }
    if options.panel_order < 2 {
        return Err(Error::InvalidParameter("panel order must be at least 2"));
    }
    let far = options.far_length();
    let rule = GaussLegendre::new(options.panel_order);
    let barycentric = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .enumerate()
        .map(|(k, (x, w))| {
            let s = libm::sqrt((1.0 - x * x) * w);
            if k % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();

    let graph_breaks = graph_panels(&*surface, options, far);
    let h = surface.far_height();
    let lowest = graph_lowest(&*surface, lo, hi);
    let yb = lowest - BOTTOM_DEPTH;
    let corner_rule = GaussLegendre::new(CORNER_RULE);
    // A right turn is symmetric about its bisector: equal run and drop.
    let d = corner_offset(&corner_rule, 0.0, -FRAC_PI_2, 1.0).x1 * CORNER_LENGTH;
    let corner = |x: f64, y: f64, heading: f64| Piece::Corner {
        start: Point2::new(x, y),
        heading,
        turn: -FRAC_PI_2,
        length: CORNER_LENGTH,
    };
    let pieces = alloc::vec![
        Piece::Graph { x0: lo, x1: hi },
        corner(hi, h, 0.0),
        Piece::Line {
            from: Point2::new(hi + d, h - d),
            to: Point2::new(hi + d, yb + d)
        },
        corner(hi + d, yb + d, -FRAC_PI_2),
        Piece::Line {
            from: Point2::new(hi, yb),
            to: Point2::new(lo, yb)
        },
        corner(lo, yb, -PI),
        Piece::Line {
            from: Point2::new(lo - d, yb + d),
            to: Point2::new(lo - d, h - d)
        },
        corner(lo - d, h - d, FRAC_PI_2),
    ];

    let mut mesh = BoundaryMesh {
        surface,
        pieces,
        panels: Vec::new(),
        rule,
        corner_rule,
        barycentric,
        nodes: Vec::new(),
        normals: Vec::new(),
        weights: Vec::new(),
        node_panel: Vec::new(),
        graph_nodes: 0..0,
        window: (lo, hi),
        side_offset: d,
        options: *options,
    };
    let mut intervals: Vec<(usize, f64, f64)> = graph_breaks.windows(2).map(|w| (0, w[0], w[1])).collect();
    for piece in 1..mesh.pieces.len() {
        let len = match mesh.pieces[piece] {
            Piece::Corner { length, .. } => length,
            Piece::Line { from, to } => from.distance(to),
            Piece::Graph { .. } => unreachable!("only the first piece is a graph"),
        };
        let n = libm::ceil(len / far).max(1.0) as usize;
        intervals.extend((0..n).map(|k| (piece, k as f64 / n as f64, (k + 1) as f64 / n as f64)));
    }
    for (piece, t0, t1) in intervals {
        mesh.push_panel(piece, t0, t1);
    }
    mesh.graph_nodes = 0..(graph_breaks.len() - 1) * mesh.order();
    Ok(mesh)
}

impl BoundaryMesh {
    fn push_panel(&mut self, piece: usize, t0: f64, t1: f64) {
        let index = self.panels.len();
        let first_node = self.nodes.len();
        self.panels.push(Panel {
            piece,
            t0,
            t1,
            first_node,
            on_graph: piece == 0,
            length: 0.0,
            center: Point2::default(),
            radius: 0.0,
        });
        let mut length = 0.0;
        for k in 0..self.rule.len() {
            let (u, w) = (self.rule.nodes[k], self.rule.weights[k]);
            let pp = self.panel_point(index, u);
            self.nodes.push(pp.point);
            self.normals.push(pp.normal());
            self.weights.push(w * pp.speed());
            self.node_panel.push(index);
            length += w * pp.speed();
        }
        let center = self.panel_point(index, 0.0).point;
        let mut radius: f64 = 0.0;
        for j in 0..=32 {
            let u = -1.0 + j as f64 / 16.0;
            radius = radius.max(center.distance(self.panel_point(index, u).point));
        }
        let p = &mut self.panels[index];
        p.length = length;
        p.center = center;
        p.radius = radius;
    }
}

/// Degree-nine smoothstep with four vanishing derivatives at each end.
fn smoothstep(t: f64) -> f64 {
    let s = 1.0 - t;
    let t5 = t * t * t * t * t;
    t5 * (126.0 * s * s * s * s + 84.0 * s * s * s * t + 36.0 * s * s * t * t + 9.0 * s * t * t * t + t * t * t * t)
}

/// Unit-length corner displacement after parameter `t`.
fn corner_offset(rule: &GaussLegendre, heading: f64, turn: f64, t: f64) -> Point2 {
    let mut acc = Point2::default();
    for (x, w) in rule.mapped(0.0, t) {
        let th = heading + turn * smoothstep(x);
        acc = acc + Point2::new(libm::cos(th), libm::sin(th)) * w;
    }
    acc
}

fn graph_lowest(surface: &dyn Surface, lo: f64, hi: f64) -> f64 {
    let n = libm::ceil((hi - lo) / FINE_STEP) as usize;
    (0..=n)
        .map(|k| surface.height(lo + (hi - lo) * k as f64 / n as f64))
        .fold(f64::INFINITY, f64::min)
}

/// Panel end abscissae on the graph: breakpoints of the surface plus
/// subdivisions following the graded target length.
fn graph_panels(surface: &dyn Surface, options: &MeshOptions, far: f64) -> Vec<f64> {
    let (lo, hi) = options.window;
    let mut breaks: Vec<f64> = surface
        .breakpoints()
        .into_iter()
        .chain(surface.corners())
        .filter(|&x| x > lo && x < hi)
        .chain([lo, hi])
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    // Fine grid including every breakpoint.
    let mut xs = Vec::new();
    let mut first_of = Vec::with_capacity(breaks.len());
    for w in breaks.windows(2) {
        let n = libm::ceil((w[1] - w[0]) / FINE_STEP).max(1.0) as usize;
        first_of.push(xs.len());
        xs.extend((0..n).map(|k| w[0] + (w[1] - w[0]) * k as f64 / n as f64));
    }
    first_of.push(xs.len());
    xs.push(hi);

    let ratio = CLEARANCE_RATIO_AT_TEN * 10.0 / options.nodes_per_wavelength;
    let corners = surface.corners();
    let mut ell: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let mut l = far;
            if let Some(r) = options.refinement {
                if x.abs() <= r.half_width + REFINE_MARGIN {
                    let clearance = (r.height - surface.height(x)).max(CLEARANCE_FLOOR);
                    l = l.min(ratio * clearance);
                }
            }
            if corners.iter().any(|&c| (c - x).abs() < 1e-12) {
                l = l.min(far * CORNER_FRACTION);
            }
            l
        })
        .collect();
    for i in 1..xs.len() {
        ell[i] = ell[i].min(ell[i - 1] + GRADING * (xs[i] - xs[i - 1]));
    }
    for i in (0..xs.len() - 1).rev() {
        ell[i] = ell[i].min(ell[i + 1] + GRADING * (xs[i + 1] - xs[i]));
    }

    let mut ends = alloc::vec![lo];
    for seg in 0..breaks.len() - 1 {
        let range = first_of[seg]..=first_of[seg + 1];
        let idx: Vec<usize> = range.collect();
        let mut cum = alloc::vec![0.0];
        for w in idx.windows(2) {
            let (i, j) = (w[0], w[1]);
            let density = |k: usize| {
                let s = surface.slope(xs[k]);
                libm::sqrt(1.0 + s * s) / ell[k]
            };
            let last = *cum.last().unwrap();
            cum.push(last + 0.5 * (density(i) + density(j)) * (xs[j] - xs[i]));
        }
        let total = *cum.last().unwrap();
        let n = libm::ceil(total - 1e-9).max(1.0) as usize;
        let mut cursor = 0;
        for k in 1..n {
            let target = total * k as f64 / n as f64;
            while cum[cursor + 1] < target {
                cursor += 1;
            }
            let (c0, c1) = (cum[cursor], cum[cursor + 1]);
            let (x0, x1) = (xs[idx[cursor]], xs[idx[cursor + 1]]);
            ends.push(x0 + (x1 - x0) * (target - c0) / (c1 - c0));
        }
        ends.push(breaks[seg + 1]);
    }
    ends
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{fan_surface, SurfaceProfile};

    fn medium() -> ElasticMedium {
        ElasticMedium::new(9.0, 3.0, 1.0).unwrap()
    }

    #[test]
    fn flat_mesh_is_uniform_with_upward_normals() {
        let s: Arc<dyn Surface> = Arc::new(SurfaceProfile::flat(0.5).unwrap());
        let mut o = MeshOptions::for_surface(&*s, &medium(), 10.0, None);
        o.window = (-10.0, 10.0);
        let m = discretize(s, &o).unwrap();
        let graph = m.graph_nodes();
        assert!(!graph.is_empty());
        for i in graph.clone() {
            assert_eq!((m.normals()[i].x1(), m.normals()[i].x2()), (-0.0, 1.0));
            assert!((m.nodes()[i].x2 - 0.5).abs() < 1e-15);
        }
        let lens: Vec<f64> = m.panels().iter().filter(|p| p.on_graph).map(|p| p.length).collect();
        assert!(lens.iter().all(|l| (l - lens[0]).abs() < 1e-9));
        assert!((m.graph_arclength() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn closed_curve_weights_and_normals() {
        let s: Arc<dyn Surface> = Arc::new(SurfaceProfile::example(1).unwrap());
        let o = MeshOptions::for_surface(
            &*s,
            &medium(),
            10.0,
            Some(Refinement {
                height: 1.0,
                half_width: 10.0,
            }),
        );
        let m = discretize(s, &o).unwrap();
        assert!(m.weights().iter().all(|&w| w > 0.0));
        // Outward normals of a closed curve integrate to zero.
        let (mut nx, mut ny) = (0.0, 0.0);
        for (n, w) in m.normals().iter().zip(m.weights()) {
            nx += n.x1() * w;
            ny += n.x2() * w;
        }
        assert!(nx.abs() < 1e-9 && ny.abs() < 1e-9, "{nx} {ny}");
        for i in m.graph_nodes() {
            assert!(m.normals()[i].x2() > 0.0);
        }
    }

    #[test]
    fn window_must_cover_support() {
        let s: Arc<dyn Surface> = Arc::new(SurfaceProfile::example(3).unwrap());
        let mut o = MeshOptions::for_surface(&*s, &medium(), 10.0, None);
        o.window = (-10.0, 10.0);
        assert!(matches!(discretize(s, &o), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn fan_mesh_has_graded_corners() {
        let f = fan_surface(50.0).unwrap();
        let s: Arc<dyn Surface> = Arc::new(f);
        let o = MeshOptions::for_surface(&*s, &medium(), 10.0, None);
        let m = discretize(s, &o).unwrap();
        let c = f.chord_halfwidth();
        let near = m
            .panels()
            .iter()
            .filter(|p| p.on_graph && ((p.t0 - c).abs() < 1e-12 || (p.t1 - c).abs() < 1e-12))
            .map(|p| p.length)
            .fold(f64::INFINITY, f64::min);
        assert!(near < 0.1 * o.far_length());
    }
}
