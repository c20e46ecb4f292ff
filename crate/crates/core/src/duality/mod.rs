//! The map φ: B#KG#KG* → End(B#KG), the stratification of the basis of
//! B#KG#KG*, kernel and image computations, and the verifiers for the
//! structural statements about them.

mod analysis;
mod classify;
mod psi;

pub use analysis::{Analysis, ClaimId};
pub use classify::{classify, matching, ClassLabel, Classifier, Predicates, Reading};
pub use psi::{build_psi, verify_skew_duality, Psi};

use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, Field, Matrix, Scalar, Subspace};
use crate::report::{Check, Report};
use crate::smash::SmashAlgebra;
use crate::walg::Element;

/// A linear map from some algebra into the endomorphisms of B#KG.
/// `images[x][j]` is the image of the codomain basis vector `j` under the
/// endomorphism assigned to domain basis vector `x`.
#[derive(Clone, Debug)]
pub struct LinearMapRep {
    pub field: Field,
    pub domain: Vec<String>,
    pub codomain_dim: usize,
    pub images: Vec<Vec<Element>>,
}

impl LinearMapRep {
    /// The matrix with `codomain_dim²` rows (entry `(i, j)` of an
    /// endomorphism at row `j·n + i`) and one column per domain basis vector.
    pub fn flatten(&self) -> Matrix {
        let n = self.codomain_dim;
        let columns: Vec<Vec<Scalar>> = self.images.iter().map(|endo| self.flatten_endo(endo)).collect();
        Matrix::from_columns(self.field, n * n, &columns).expect("columns have n² entries")
    }

    pub fn flatten_endo(&self, endo: &[Element]) -> Vec<Scalar> {
        let n = self.codomain_dim;
        let mut v = vec![self.field.zero(); n * n];
        for (j, col) in endo.iter().enumerate() {
            for (i, c) in col.terms() {
                v[j * n + i] = c.clone();
            }
        }
        v
    }

    /// The endomorphism assigned to an arbitrary domain element.
    pub fn endo_of(&self, x: &Element) -> Vec<Element> {
        let f = self.field;
        let mut out = vec![Element::zero(); self.codomain_dim];
        for (k, c) in x.terms() {
            for (o, col) in out.iter_mut().zip(&self.images[k]) {
                o.add_scaled(f, c, col);
            }
        }
        out
    }

    /// `endo(z)` for an element `z` of B#KG.
    pub fn apply(&self, endo: &[Element], z: &Element) -> Element {
        let mut out = Element::zero();
        for (j, c) in z.terms() {
            out.add_scaled(self.field, c, &endo[j]);
        }
        out
    }

    /// `a ∘ b`
    pub fn compose(&self, a: &[Element], b: &[Element]) -> Vec<Element> {
        b.iter().map(|col| self.apply(a, col)).collect()
    }

    /// Flattened image of the span of the given domain vectors.
    pub fn image_of(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        let n = self.codomain_dim;
        let mut s = Subspace::zero(self.field, n * n);
        for v in vectors {
            let x = Element::from_dense(v);
            s.insert(&self.flatten_endo(&self.endo_of(&x)))?;
        }
        Ok(s)
    }
}

/// `φ(a # u_g # ρ_h)(b # u_l) = (a # u_g)(b # (ρ_h ⇀ u_l))`, which is
/// `(a # u_g)(b # u_l)` when `l = h` and zero otherwise.
pub fn build_phi(dsm: &SmashAlgebra, bsm: &SmashAlgebra) -> Result<LinearMapRep> {
    if !dsm.double || bsm.double || dsm.origin != bsm.origin {
        return Err(Error::MismatchedParents(
            "φ needs B#KG#KG* and B#KG built from the same module algebra".into(),
        ));
    }
    let n = bsm.dim();
    let images = (0..dsm.dim())
        .map(|x| {
            let (a, g, h) = dsm.split3(x);
            let left = bsm.index(a, g);
            (0..n)
                .map(|j| {
                    if bsm.split(j).1 == h {
                        bsm.algebra.product(left, j).clone()
                    } else {
                        Element::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(LinearMapRep {
        field: dsm.algebra.field(),
        domain: dsm.algebra.basis().to_vec(),
        codomain_dim: n,
        images,
    })
}

/// Checks `φ(xy) = φ(x) ∘ φ(y)` on all pairs of domain basis vectors.
pub fn phi_is_homomorphism(phi: &LinearMapRep, dsm: &SmashAlgebra) -> Report {
    let mut report = Report::new("phi_homomorphism").with_field(phi.field);
    let mut check = Check::new("multiplicative");
    let a = &dsm.algebra;
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let lhs = phi.endo_of(a.product(x, y));
            let rhs = phi.compose(&phi.images[x], &phi.images[y]);
            if lhs != rhs {
                check.fail([a.label(x), a.label(y)], "φ(xy) ≠ φ(x)φ(y)");
            }
        }
    }
    report.push(check);
    report
}

/// Whether each `φ(x)` commutes with right multiplication by
/// `b # Σ_e u_e`, for every basis vector `b` of B.
pub fn right_b_linearity(phi: &LinearMapRep, dsm: &SmashAlgebra, bsm: &SmashAlgebra) -> Check {
    let f = phi.field;
    let mut check = Check::new("phi_right_b_linear");
    let right: Vec<Element> = (0..bsm.b_dim)
        .map(|b| Element::from_terms(f, bsm.objects.iter().map(|&e| (bsm.index(b, e), f.one()))))
        .collect();
    for x in 0..dsm.dim() {
        let endo = &phi.images[x];
        'basis: for z in 0..bsm.dim() {
            let zb = bsm.algebra.basis_element(z);
            for (b, r) in right.iter().enumerate() {
                let lhs = phi.apply(endo, &bsm.algebra.mul(&zb, r));
                let rhs = bsm.algebra.mul(&endo[z], r);
                if lhs != rhs {
                    check.fail(
                        [
                            dsm.algebra.label(x),
                            bsm.algebra.label(z),
                            bsm.algebra.label(bsm.index(b, bsm.objects[0])),
                        ],
                        "φ(x)(z·b) ≠ φ(x)(z)·b",
                    );
                    break 'basis;
                }
            }
        }
    }
    check
}

/// Kernel and image of a linear map, computed exactly.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel_basis: Vec<Vec<Scalar>>,
    pub kernel: Subspace,
    pub image: Subspace,
    pub domain_dim: usize,
}

impl KernelImage {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn image_dim(&self) -> usize {
        self.image.dim()
    }
}

pub fn kernel_and_image(phi: &LinearMapRep) -> Result<KernelImage> {
    let m = phi.flatten();
    let kb = kernel_basis(&m);
    let kernel = Subspace::span(phi.field, m.cols(), &kb)?;
    let columns: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.column(j)).collect();
    let image = Subspace::span(phi.field, m.rows(), &columns)?;
    Ok(KernelImage {
        kernel_basis: kb,
        kernel,
        image,
        domain_dim: m.cols(),
    })
}

/// The two candidates for the identity of the span of A1 ∪ A7 ∪ A10:
/// `Σ_{l ∈ G} l·1_B # u_{t(l)} # Σ_{s(n) = t(l)} ρ_n` and
/// `Σ_{e ∈ G₀} e·1_B # u_e # Σ_{s(n) = e} ρ_n`.
pub fn identity_candidates(ma: &crate::action::ModuleAlgebra, dsm: &SmashAlgebra) -> Result<(Element, Element)> {
    let f = ma.field();
    let g = &ma.groupoid;
    let term = |coeff: &Element, u: usize| -> Element {
        let mut out = Element::zero();
        for n in g.ids().filter(|&n| g.src(n) == u) {
            for (k, c) in coeff.terms() {
                out.add_term(f, dsm.index3(k, u, n), c);
            }
        }
        out
    };
    let mut by_morphism = Element::zero();
    for l in g.ids() {
        by_morphism = by_morphism.plus(f, &term(&ma.unit_image(l)?, g.tgt(l)));
    }
    let mut by_object = Element::zero();
    for &e in g.objects() {
        by_object = by_object.plus(f, &term(&ma.unit_image(e)?, e));
    }
    Ok((by_morphism, by_object))
}
