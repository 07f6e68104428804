//! Concrete representations given by matrices over the rationals, morphisms
//! between them, and the linear algebra of intertwiners.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::quiver::{DimVector, RepClass, TypeAQuiver};

/// A representation with explicit vector spaces `Q^{d_v}` and one matrix per edge.
///
/// `maps[k]` belongs to edge `k` (between vertices `k` and `k+1`) and has shape
/// `dim(target) x dim(source)` for the edge's orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitRep {
    quiver: TypeAQuiver,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl ExplicitRep {
    pub fn new(quiver: TypeAQuiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.n() || maps.len() != quiver.num_edges() {
            return Err(Error::Invalid(format!(
                "{} vertex dimensions and {} maps do not fit {quiver}",
                dims.len(),
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            let (s, t) = quiver.edge(k);
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Invalid(format!(
                    "edge {k} map is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(ExplicitRep { quiver, dims, maps })
    }

    pub fn quiver(&self) -> &TypeAQuiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.clone())
    }

    pub fn map(&self, k: usize) -> &Matrix {
        &self.maps[k]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
}

/// Block-diagonal realization of `m`: one basis vector per summand copy at each
/// vertex of its support, ordered canonically, with identity entries on edges
/// interior to the copy's interval.
pub fn explicit_of(q: &TypeAQuiver, m: &RepClass) -> ExplicitRep {
    let n = q.n();
    let copies: Vec<_> = m.copies().collect();
    // position of each copy in the basis of each vertex
    let mut index = vec![vec![None; copies.len()]; n];
    let mut dims = vec![0; n];
    for (c, u) in copies.iter().enumerate() {
        for v in u.a - 1..u.b {
            index[v][c] = Some(dims[v]);
            dims[v] += 1;
        }
    }
    let maps = (0..q.num_edges())
        .map(|k| {
            let (s, t) = q.edge(k);
            let mut mat = Matrix::zeros(dims[t], dims[s]);
            for c in 0..copies.len() {
                if let (Some(i), Some(j)) = (index[t][c], index[s][c]) {
                    mat[(i, j)] = Q::one();
                }
            }
            mat
        })
        .collect();
    ExplicitRep { quiver: q.clone(), dims, maps }
}

/// A morphism of representations: one matrix per vertex, `dim target_v x dim source_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitHom {
    pub source: ExplicitRep,
    pub target: ExplicitRep,
    pub components: Vec<Matrix>,
}

impl ExplicitHom {
    /// Checks `target_edge * phi_s == phi_t * source_edge` on every edge.
    pub fn is_intertwiner(&self) -> bool {
        let q = &self.source.quiver;
        (0..q.num_edges()).all(|k| {
            let (s, t) = q.edge(k);
            self.target.maps[k].mul(&self.components[s]) == self.components[t].mul(&self.source.maps[k])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| c.rank() == c.cols())
    }

    /// `sum_i coeffs[i] * homs[i]`, all with the same source and target.
    pub fn combination(homs: &[ExplicitHom], coeffs: &[Q]) -> ExplicitHom {
        assert!(!homs.is_empty() && homs.len() == coeffs.len());
        let mut comps: Vec<Matrix> =
            homs[0].components.iter().map(|c| Matrix::zeros(c.rows(), c.cols())).collect();
        for (h, a) in homs.iter().zip(coeffs) {
            if a.is_zero() {
                continue;
            }
            for (acc, c) in comps.iter_mut().zip(&h.components) {
                for i in 0..c.rows() {
                    for j in 0..c.cols() {
                        acc[(i, j)] += &c[(i, j)] * a;
                    }
                }
            }
        }
        ExplicitHom { source: homs[0].source.clone(), target: homs[0].target.clone(), components: comps }
    }

    pub fn kernel(&self) -> ExplicitRep {
        let q = self.source.quiver.clone();
        let bases: Vec<Matrix> = self
            .components
            .iter()
            .zip(&self.source.dims)
            .map(|(c, &d)| Matrix::from_columns(d, &c.nullspace()))
            .collect();
        restrict(&q, &self.source.maps, &bases)
    }

    pub fn image(&self) -> ExplicitRep {
        let q = self.source.quiver.clone();
        let bases: Vec<Matrix> = self.components.iter().map(|c| c.column_basis().0).collect();
        restrict(&q, &self.target.maps, &bases)
    }

    pub fn cokernel(&self) -> ExplicitRep {
        let q = &self.source.quiver;
        let n = q.n();
        // At each vertex extend a basis of the image by standard vectors; the
        // quotient coordinates are the trailing rows of the inverse change of basis.
        let mut lifts = Vec::with_capacity(n);
        let mut projs = Vec::with_capacity(n);
        for v in 0..n {
            let dim = self.target.dims[v];
            let (img, _) = self.components[v].column_basis();
            let mut cols: Vec<Vec<Q>> = (0..img.cols()).map(|j| img.column(j)).collect();
            let mut lift_cols = Vec::new();
            for e in 0..dim {
                let mut unit = vec![Q::zero(); dim];
                unit[e] = Q::one();
                let mut trial = cols.clone();
                trial.push(unit.clone());
                if Matrix::from_columns(dim, &trial).rank() == trial.len() {
                    cols = trial;
                    lift_cols.push(unit);
                }
            }
            let change = Matrix::from_columns(dim, &cols);
            let inv = change.inverse().expect("extended basis is invertible");
            let r = img.cols();
            let mut proj = Matrix::zeros(dim - r, dim);
            for i in 0..dim - r {
                for j in 0..dim {
                    proj[(i, j)] = inv[(r + i, j)].clone();
                }
            }
            lifts.push(Matrix::from_columns(dim, &lift_cols));
            projs.push(proj);
        }
        let dims: Vec<usize> = projs.iter().map(Matrix::rows).collect();
        let maps = (0..q.num_edges())
            .map(|k| {
                let (s, t) = q.edge(k);
                projs[t].mul(&self.target.maps[k]).mul(&lifts[s])
            })
            .collect();
        ExplicitRep { quiver: q.clone(), dims, maps }
    }
}

// Sub-representation spanned at each vertex by the columns of `bases[v]`; the
// edge maps must preserve these subspaces.
fn restrict(q: &TypeAQuiver, maps: &[Matrix], bases: &[Matrix]) -> ExplicitRep {
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let new_maps = (0..q.num_edges())
        .map(|k| {
            let (s, t) = q.edge(k);
            let image = maps[k].mul(&bases[s]);
            bases[t].solve(&image).expect("edge map preserves the subspace")
        })
        .collect();
    ExplicitRep { quiver: q.clone(), dims, maps: new_maps }
}

// Unknowns are the entries of phi_v, vertex by vertex, row-major.
fn intertwiner_system(f: &ExplicitRep, g: &ExplicitRep) -> (Matrix, Vec<usize>) {
    let q = &f.quiver;
    let mut offsets = Vec::with_capacity(q.n());
    let mut total = 0;
    for v in 0..q.n() {
        offsets.push(total);
        total += g.dims[v] * f.dims[v];
    }
    let num_eqs: usize = q.edges().map(|(s, t)| g.dims[t] * f.dims[s]).sum();
    let mut sys = Matrix::zeros(num_eqs, total);
    let mut row = 0;
    for k in 0..q.num_edges() {
        let (s, t) = q.edge(k);
        let (fe, ge) = (&f.maps[k], &g.maps[k]);
        // (G_e phi_s - phi_t F_e)[i][j] = 0 for i < g_t, j < f_s
        for i in 0..g.dims[t] {
            for j in 0..f.dims[s] {
                for l in 0..g.dims[s] {
                    if !ge[(i, l)].is_zero() {
                        sys[(row, offsets[s] + l * f.dims[s] + j)] += &ge[(i, l)];
                    }
                }
                for l in 0..f.dims[t] {
                    if !fe[(l, j)].is_zero() {
                        sys[(row, offsets[t] + i * f.dims[t] + l)] -= &fe[(l, j)];
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

fn check_same_quiver(f: &ExplicitRep, g: &ExplicitRep) -> Result<()> {
    if f.quiver != g.quiver {
        return Err(Error::Invalid(format!("representations of {} and {}", f.quiver, g.quiver)));
    }
    Ok(())
}

/// `dim Hom(f, g)` as the corank of the intertwining system.
pub fn hom_dim_explicit(f: &ExplicitRep, g: &ExplicitRep) -> Result<usize> {
    check_same_quiver(f, g)?;
    let (sys, _) = intertwiner_system(f, g);
    Ok(sys.cols() - sys.rank())
}

/// A basis of `Hom(f, g)`.
pub fn hom_basis(f: &ExplicitRep, g: &ExplicitRep) -> Result<Vec<ExplicitHom>> {
    check_same_quiver(f, g)?;
    let (sys, offsets) = intertwiner_system(f, g);
    let n = f.quiver.n();
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|vec| {
            let components = (0..n)
                .map(|v| {
                    let (r, c) = (g.dims[v], f.dims[v]);
                    let mut m = Matrix::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            m[(i, j)] = vec[offsets[v] + i * c + j].clone();
                        }
                    }
                    m
                })
                .collect();
            ExplicitHom { source: f.clone(), target: g.clone(), components }
        })
        .collect())
}
