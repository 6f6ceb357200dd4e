//! The discretised boundary operator, its factorisation and field evaluation.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::integrate::{Integrator, Target};
use crate::elastic::{ComplexPair, ComplexTensor2, ElasticMedium, KupradzeKernel, Point2};
use crate::geometry::{discretize, BoundaryMesh, MeshOptions, Refinement, Surface};
use crate::linalg::{CMatrix, CVector, LuSolver};
use crate::par::map_indexed;
use crate::{Error, Result};

/// Discretisation settings of the forward solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Nodes per shear wavelength on panels away from the measurement region.
    pub nodes_per_wavelength: f64,
    pub panel_order: usize,
    /// Coupling `eta` of the single layer; `None` selects `k_s`.
    pub coupling: Option<f64>,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            nodes_per_wavelength: 10.0,
            panel_order: 16,
            coupling: None,
        }
    }
}

#[derive(Debug)]
struct Inner {
    mesh: Arc<BoundaryMesh>,
    medium: ElasticMedium,
    eta: f64,
    matrix: CMatrix,
    lu: LuSolver,
    tag: String,
}

/// Factorised Nystrom discretisation of `(1/2) I + D - i eta S`. Cloning
/// shares the factorisation.
#[derive(Debug, Clone)]
pub struct BoundarySystem {
    inner: Arc<Inner>,
}

impl BoundarySystem {
    /// Assembles and factorises the operator on `mesh`.
    pub fn assemble(mesh: Arc<BoundaryMesh>, medium: ElasticMedium, eta: f64) -> Result<Self> {
        if !(eta.is_finite() && eta != 0.0) {
            return Err(Error::InvalidParameter("coupling eta must be nonzero"));
        }
        let kernel = KupradzeKernel::new(medium);
        let integrator = Integrator::new(&mesh, kernel, eta);
        let m = mesh.len();
        let rows = map_indexed(m, |a| -> Result<Vec<ComplexTensor2>> {
            let panel = mesh.panel_of(a);
            let u = mesh.rule().nodes[a - mesh.panels()[panel].first_node];
            let mut row = alloc::vec![ComplexTensor2::zeros(); m];
            integrator.accumulate(Target::OnPanel { panel, u }, &mut row)?;
            row[a] += ComplexTensor2::identity() * Complex64::from(0.5);
            Ok(row)
        });
        let mut matrix = CMatrix::zeros(2 * m, 2 * m);
        for (a, row) in rows.into_iter().enumerate() {
            let row = row?;
            for (b, t) in row.iter().enumerate() {
                for i in 0..2 {
                    for j in 0..2 {
                        matrix[(2 * a + i, 2 * b + j)] = t[(i, j)];
                    }
                }
            }
        }
        let lu = LuSolver::new(matrix.clone())?;
        let tag = mesh.surface().label();
        Ok(Self {
            inner: Arc::new(Inner {
                mesh,
                medium,
                eta,
                matrix,
                lu,
                tag,
            }),
        })
    }

    /// Meshes `surface` with a window from [`MeshOptions::for_surface`] and assembles.
    pub fn for_surface(
        surface: Arc<dyn Surface>,
        medium: ElasticMedium,
        settings: &SolverSettings,
        refinement: Option<Refinement>,
    ) -> Result<Self> {
        let mut options = MeshOptions::for_surface(&*surface, &medium, settings.nodes_per_wavelength, refinement);
        options.panel_order = settings.panel_order;
        let mesh = discretize(surface, &options)?;
        Self::assemble(Arc::new(mesh), medium, settings.coupling.unwrap_or(medium.k_s))
    }

    pub fn mesh(&self) -> &Arc<BoundaryMesh> {
        &self.inner.mesh
    }

    pub fn medium(&self) -> &ElasticMedium {
        &self.inner.medium
    }

    pub fn eta(&self) -> f64 {
        self.inner.eta
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.inner.matrix
    }

    pub fn condition(&self) -> f64 {
        self.inner.lu.condition()
    }

    pub fn tag(&self) -> &str {
        &self.inner.tag
    }

    /// Number of unknowns, `2M`.
    pub fn dim(&self) -> usize {
        self.inner.matrix.nrows()
    }

    /// Densities for several boundary-data columns.
    pub fn solve(&self, data: &CMatrix) -> Result<CMatrix> {
        self.inner.lu.solve(data)
    }

    fn integrator(&self) -> Integrator<'_> {
        Integrator::new(&self.inner.mesh, KupradzeKernel::new(self.inner.medium), self.inner.eta)
    }

    /// Rows `2t, 2t + 1` map densities to the scattered field at `targets[t]`.
    pub fn evaluation_matrix(&self, targets: &[Point2]) -> Result<CMatrix> {
        let mesh = &self.inner.mesh;
        for &x in targets {
            self.check_target(x)?;
        }
        let integrator = self.integrator();
        let m = mesh.len();
        let rows = map_indexed(targets.len(), |t| -> Result<Vec<ComplexTensor2>> {
            let mut row = alloc::vec![ComplexTensor2::zeros(); m];
            integrator.accumulate(Target::Off(targets[t]), &mut row)?;
            Ok(row)
        });
        let mut e = CMatrix::zeros(2 * targets.len(), 2 * m);
        for (t, row) in rows.into_iter().enumerate() {
            scatter_row(&mut e, t, &row?);
        }
        Ok(e)
    }

    /// Operator row at a boundary point, including the jump term.
    pub(crate) fn boundary_row(&self, panel: usize, u: f64) -> Result<Vec<ComplexTensor2>> {
        let mesh = &self.inner.mesh;
        let mut row = alloc::vec![ComplexTensor2::zeros(); mesh.len()];
        self.integrator().accumulate(Target::OnPanel { panel, u }, &mut row)?;
        let mut basis = alloc::vec![0.0; mesh.order()];
        mesh.lagrange(u, &mut basis);
        let first = mesh.panels()[panel].first_node;
        for (k, &l) in basis.iter().enumerate() {
            row[first + k] += ComplexTensor2::identity() * Complex64::from(0.5 * l);
        }
        Ok(row)
    }

    /// Rejects targets inside the obstacle or within one node spacing of it.
    pub fn check_target(&self, x: Point2) -> Result<()> {
        let mesh = &self.inner.mesh;
        if !mesh.is_outside(x) {
            return Err(Error::BelowSurface { x1: x.x1, x2: x.x2 });
        }
        let (distance, node) = mesh.nearest_node(x);
        let spacing = mesh.spacing_at(node);
        if distance < spacing {
            return Err(Error::TooCloseToBoundary { distance, spacing });
        }
        Ok(())
    }

    /// Boundary data `-Gamma(y_b, z) p` for each source column.
    pub fn incident_data(&self, sources: &[(Point2, ComplexPair)]) -> Result<CMatrix> {
        let mesh = &self.inner.mesh;
        let kernel = KupradzeKernel::new(self.inner.medium);
        let mut data = CMatrix::zeros(2 * mesh.len(), sources.len());
        for (c, (z, p)) in sources.iter().enumerate() {
            for (b, &y) in mesh.nodes().iter().enumerate() {
                let v = kernel.tensor(y, *z)? * p;
                data[(2 * b, c)] = -v[0];
                data[(2 * b + 1, c)] = -v[1];
            }
        }
        Ok(data)
    }

    /// Data for unit polarisations at each source: columns `2l + j`.
    pub fn point_source_data(&self, sources: &[Point2]) -> Result<CMatrix> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let cols: Vec<(Point2, ComplexPair)> = sources
            .iter()
            .flat_map(|&z| [(z, ComplexPair::new(one, zero)), (z, ComplexPair::new(zero, one))])
            .collect();
        self.incident_data(&cols)
    }
}

fn scatter_row(target: &mut CMatrix, t: usize, row: &[ComplexTensor2]) {
    for (b, k) in row.iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                target[(2 * t + i, 2 * b + j)] = k[(i, j)];
            }
        }
    }
}

/// Free-function form of [`BoundarySystem::assemble`].
pub fn assemble(mesh: Arc<BoundaryMesh>, medium: ElasticMedium, eta: f64) -> Result<BoundarySystem> {
    BoundarySystem::assemble(mesh, medium, eta)
}

/// Density for one boundary-data vector.
#[derive(Debug, Clone)]
pub struct ScatterSolution {
    system: BoundarySystem,
    density: CVector,
    data: CVector,
    excitation: Option<(Point2, ComplexPair)>,
}

impl ScatterSolution {
    pub fn system(&self) -> &BoundarySystem {
        &self.system
    }

    pub fn density(&self) -> &CVector {
        &self.density
    }

    /// Source point and polarisation when solved for a point source.
    pub fn excitation(&self) -> Option<(Point2, ComplexPair)> {
        self.excitation
    }

    pub fn surface_tag(&self) -> &str {
        self.system.tag()
    }

    /// `||A phi - data|| / ||data||` of the linear system.
    pub fn linear_residual(&self) -> f64 {
        let r = self.system.matrix() * &self.density - &self.data;
        let scale = self.data.norm();
        if scale == 0.0 {
            r.norm()
        } else {
            r.norm() / scale
        }
    }
}

/// Solves the discretised Dirichlet problem for `u^sc = data` on the boundary.
pub fn solve_dirichlet(system: &BoundarySystem, boundary_data: &[ComplexPair]) -> Result<ScatterSolution> {
    let m = system.mesh().len();
    if boundary_data.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: boundary_data.len(),
        });
    }
    let data = CVector::from_iterator(2 * m, boundary_data.iter().flat_map(|v| [v[0], v[1]]));
    let density = system.inner.lu.solve_vector(&data)?;
    Ok(ScatterSolution {
        system: system.clone(),
        density,
        data,
        excitation: None,
    })
}

/// Scattered field of the point source `Gamma(., z) p`.
pub fn solve_point_source(system: &BoundarySystem, z: Point2, p: ComplexPair) -> Result<ScatterSolution> {
    let data = system.incident_data(&[(z, p)])?;
    let data = data.column(0).into_owned();
    let density = system.inner.lu.solve_vector(&data)?;
    Ok(ScatterSolution {
        system: system.clone(),
        density,
        data,
        excitation: Some((z, p)),
    })
}

/// Scattered field at `x` from a solved density.
pub fn evaluate_scattered(solution: &ScatterSolution, x: Point2) -> Result<ComplexPair> {
    let e = solution.system.evaluation_matrix(&[x])?;
    let v = e * &solution.density;
    Ok(ComplexPair::new(v[0], v[1]))
}

/// Relative Dirichlet residual `max |u^sc + G^in| / max |G^in|` at the
/// midpoints between consecutive nodes of every panel.
pub fn boundary_residual(solution: &ScatterSolution) -> Result<f64> {
    let (z, p) = solution.excitation.ok_or(Error::InvalidParameter(
        "boundary residual needs a point-source solution",
    ))?;
    let system = &solution.system;
    let mesh = system.mesh();
    let kernel = KupradzeKernel::new(*system.medium());
    let nodes = &mesh.rule().nodes;
    let mut targets = Vec::new();
    for q in 0..mesh.panels().len() {
        for w in nodes.windows(2) {
            targets.push((q, 0.5 * (w[0] + w[1])));
        }
    }
    let results = map_indexed(targets.len(), |t| -> Result<(f64, f64)> {
        let (q, u) = targets[t];
        let row = system.boundary_row(q, u)?;
        let mut field = ComplexPair::zeros();
        for (b, k) in row.iter().enumerate() {
            let phi = ComplexPair::new(solution.density[2 * b], solution.density[2 * b + 1]);
            field += k * phi;
        }
        let x = mesh.panel_point(q, u).point;
        let incident = kernel.tensor(x, z)? * p;
        Ok(((field + incident).norm(), incident.norm()))
    });
    let (mut err, mut scale) = (0.0f64, 0.0f64);
    for r in results {
        let (e, s) = r?;
        err = err.max(e);
        scale = scale.max(s);
    }
    Ok(if scale > 0.0 { err / scale } else { err })
}

/// `|p . G(x, y, q) - q . G(y, x, p)| / max(|p . G(x,y,q)|, |q . G(y,x,p)|)`
/// with `G = G^sc`. The incident part is exactly symmetric and the total
/// field nearly vanishes close to the surface, so it is left out.
pub fn reciprocity_check(system: &BoundarySystem, x: Point2, y: Point2, p: ComplexPair, q: ComplexPair) -> Result<f64> {
    system.check_target(x)?;
    system.check_target(y)?;
    let scattered = |at: Point2, from: Point2, pol: ComplexPair| -> Result<ComplexPair> {
        evaluate_scattered(&solve_point_source(system, from, pol)?, at)
    };
    let lhs = p.dot(&scattered(x, y, q)?);
    let rhs = q.dot(&scattered(y, x, p)?);
    let scale = lhs.norm().max(rhs.norm());
    Ok(if scale > 0.0 { (lhs - rhs).norm() / scale } else { 0.0 })
}

/// Scattered fields at `receivers` from unit point sources at `sources`:
/// entry `(2k + i, 2l + j)` is component `i` at receiver `k` for source `l`
/// with polarisation `e_j`.
pub fn near_field(system: &BoundarySystem, receivers: &[Point2], sources: &[Point2]) -> Result<CMatrix> {
    for &z in sources {
        system.check_target(z)?;
    }
    let data = system.point_source_data(sources)?;
    let density = system.solve(&data)?;
    let e = system.evaluation_matrix(receivers)?;
    Ok(e * density)
}

/// `G^sc(x, z, p)` of the (auxiliary) surface meshed in `system` at each target.
pub fn auxiliary_scattered(
    system: &BoundarySystem,
    z: Point2,
    p: ComplexPair,
    targets: &[Point2],
) -> Result<Vec<ComplexPair>> {
    system.check_target(z)?;
    let s = solve_point_source(system, z, p)?;
    let e = system.evaluation_matrix(targets)?;
    let v = e * s.density();
    Ok((0..targets.len())
        .map(|t| ComplexPair::new(v[2 * t], v[2 * t + 1]))
        .collect())
}
