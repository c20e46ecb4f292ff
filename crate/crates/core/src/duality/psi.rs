use super::analysis::Analysis;
use super::classify::ClassLabel;
use super::{kernel_and_image, LinearMapRep};
use crate::action::{derive_dfap_action, skew_groupoid_ring, SkewRing};
use crate::error::{Error, Result};
use crate::exactmath::Subspace;
use crate::groupoid::{Groupoid, Mor};
use crate::report::{Check, Report};
use crate::smash::SmashAlgebra;

/// `Ψ(b δ_g # ρ_h) = b # u_g # ρ_h` from (skew groupoid ring) # KG* into
/// B#KG#KG*. The domain basis is `(b δ_g, ρ_h)` in skew-ring order, then
/// morphism order for `h`.
#[derive(Clone, Debug)]
pub struct Psi {
    pub domain: Vec<String>,
    /// `(skew ring entry, h)` for each domain basis vector.
    pub entries: Vec<(usize, Mor)>,
    /// Index in B#KG#KG* of each image.
    pub targets: Vec<usize>,
}

pub fn build_psi(skew: &SkewRing, groupoid: &Groupoid, dsm: &SmashAlgebra) -> Result<Psi> {
    if !dsm.double || dsm.n_mor != groupoid.len() {
        return Err(Error::MismatchedParents("Ψ needs B#KG#KG* of the same groupoid".into()));
    }
    let mut domain = Vec::new();
    let mut entries = Vec::new();
    let mut targets = Vec::new();
    for (k, &(b, g)) in skew.entries.iter().enumerate() {
        if b >= dsm.b_dim {
            return Err(Error::MismatchedParents(
                "skew ring comes from a different algebra".into(),
            ));
        }
        for h in groupoid.ids() {
            domain.push(format!("{}#rho_{}", skew.algebra.label(k), groupoid.label(h)));
            entries.push((k, h));
            targets.push(dsm.index3(b, g, h));
        }
    }
    Ok(Psi {
        domain,
        entries,
        targets,
    })
}

impl Psi {
    /// `φ ∘ Ψ`, as a map into the endomorphisms of B#KG.
    pub fn then(&self, phi: &LinearMapRep) -> LinearMapRep {
        LinearMapRep {
            field: phi.field,
            domain: self.domain.clone(),
            codomain_dim: phi.codomain_dim,
            images: self.targets.iter().map(|&t| phi.images[t].clone()).collect(),
        }
    }
}

/// Checks the exact sequence `0 → D1 → (skew ring)#KG* → φ(Ψ(C)) → 0` and
/// `Ψ(B0) = span(A1)` for the groupoid action induced by the instance.
pub fn verify_skew_duality(an: &Analysis) -> Result<Report> {
    let ma = &an.ma;
    let g = &ma.groupoid;
    let f = ma.field();
    let mut r = Report::new("thm2.9").with_field(f);
    r.conditional = !an.hypotheses_hold();
    r.note("0 -> D1 -> (skew groupoid ring)#KG* -> phi(Psi(C)) -> 0 is exact");

    let (dfap, action_report) = match derive_dfap_action(ma, &an.decomposition) {
        Ok(x) => x,
        Err(e) => {
            r.conditional = true;
            r.push(Check::assert("groupoid_action_derivable", false, ["B"], e.to_string()));
            return Ok(r);
        }
    };
    r.absorb("groupoid_action", action_report);
    let skew = skew_groupoid_ring(ma, &dfap)?;
    r.push(Check::assert(
        "skew_ring_associative",
        skew.algebra.check_associativity().holds,
        ["skew ring"],
        "the skew groupoid ring is not associative",
    ));
    let psi = build_psi(&skew, g, &an.dsm)?;
    let composite = psi.then(&an.phi);
    let ki = kernel_and_image(&composite)?;
    let dim = psi.domain.len();

    let skew_g = |i: usize| skew.entries[psi.entries[i].0].1;
    let d1_idx: Vec<usize> = (0..dim)
        .filter(|&i| !g.composable(skew_g(i), psi.entries[i].1))
        .collect();
    let c_idx: Vec<usize> = (0..dim)
        .filter(|&i| g.composable(skew_g(i), psi.entries[i].1))
        .collect();
    let d1 = Subspace::coordinate(f, dim, d1_idx.iter().copied());
    let c = Subspace::coordinate(f, dim, c_idx.iter().copied());

    r.push(Check::assert(
        "d1_is_kernel",
        d1.equals(&ki.kernel)?,
        ["D1", "ker φΨ"],
        format!("dim D1 = {}, dim ker(φ∘Ψ) = {}", d1.dim(), ki.kernel_dim()),
    ));
    r.push(Check::assert(
        "direct_sum",
        c.intersection_dim(&d1)? == 0 && c.dim() + d1.dim() == dim,
        ["C", "D1"],
        format!("dim C = {}, dim D1 = {}, dim = {dim}", c.dim(), d1.dim()),
    ));
    let phi_psi_c = composite.image_of(c.basis())?;
    r.push(Check::assert(
        "dimension_count",
        d1.dim() + phi_psi_c.dim() == dim,
        ["D1", "φΨ(C)"],
        format!("dim D1 + dim φΨ(C) = {} + {} ≠ {dim}", d1.dim(), phi_psi_c.dim()),
    ));
    r.push(Check::assert(
        "image_of_c",
        phi_psi_c.equals(&ki.image)?,
        ["φΨ(C)", "Im φΨ"],
        format!("dim φΨ(C) = {}, dim Im φΨ = {}", phi_psi_c.dim(), ki.image_dim()),
    ));

    let total = an.dim();
    let psi_c = Subspace::coordinate(f, total, c_idx.iter().map(|&i| psi.targets[i]));
    r.push(Check::assert(
        "psi_injective_on_c",
        psi_c.dim() == c.dim(),
        ["Ψ|C"],
        format!("dim Ψ(C) = {} < dim C = {}", psi_c.dim(), c.dim()),
    ));
    let b0: Vec<usize> = c_idx
        .iter()
        .copied()
        .filter(|&i| {
            let m = skew_g(i);
            g.src(m) == g.tgt(m)
        })
        .collect();
    let psi_b0 = Subspace::coordinate(f, total, b0.iter().map(|&i| psi.targets[i]));
    let a1 = an.span(&[ClassLabel::A1]);
    r.push(Check::assert(
        "psi_b0_equals_a1",
        psi_b0.equals(&a1)?,
        ["Ψ(B0)", "A1"],
        format!("dim Ψ(B0) = {}, dim span(A1) = {}", psi_b0.dim(), a1.dim()),
    ));
    let a123 = an.span(&[ClassLabel::A1, ClassLabel::A2, ClassLabel::A3]);
    r.observe(Check::assert(
        "psi_c_within_a1_a2_a3",
        a123.contains_space(&psi_c)?,
        ["Ψ(C)"],
        "Ψ(C) is not contained in span(A1, A2, A3)",
    ));
    r.dim("skew_ring", skew.algebra.dim());
    r.dim("domain", dim);
    r.dim("C", c.dim());
    r.dim("D1", d1.dim());
    r.dim("phi_psi_C", phi_psi_c.dim());
    r.dim("B0", b0.len());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{ClaimId, Reading};
    use crate::instance::library;

    fn analysis(name: &str) -> Analysis {
        Analysis::new(
            library::builtin(name).unwrap().module_algebra().unwrap(),
            Reading::Source,
        )
        .unwrap()
    }

    #[test]
    fn group_case_psi_is_bijective() {
        let an = analysis("z2-trivial");
        let r = an.verify(ClaimId::Thm29).unwrap();
        assert!(r.holds, "{r}");
        assert_eq!(r.dimensions["D1"], 0);
        assert_eq!(r.dimensions["domain"], an.dim());
    }

    #[test]
    fn i2_swap_satisfies_the_skew_sequence() {
        let an = analysis("i2-swap");
        let r = an.verify(ClaimId::Thm29).unwrap();
        assert!(r.holds, "{r}");
        assert!(r.dimensions["D1"] > 0);
    }

    #[test]
    fn inhomogeneous_instance_reports_instead_of_failing() {
        let an = analysis("ex2.8");
        let r = an.verify(ClaimId::Thm29).unwrap();
        assert!(!r.holds);
        assert!(r.conditional);
        assert!(r.check("groupoid_action_derivable").is_some());
    }
}
