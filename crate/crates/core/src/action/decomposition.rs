use super::ModuleAlgebra;
use crate::error::Result;
use crate::exactmath::Subspace;
use crate::groupoid::Mor;
use crate::report::{Check, Report};
use crate::walg::Element;

/// The elements `i_e = e·1_B` for the objects `e`, the subspaces
/// `B_e = B·i_e`, and for each basis vector of B the unique object whose
/// subspace contains it (if any).
#[derive(Clone, Debug)]
pub struct ComponentDecomposition {
    pub idempotents: Vec<(Mor, Element)>,
    pub components: Vec<(Mor, Subspace)>,
    pub basis_component: Vec<Option<Mor>>,
}

impl ComponentDecomposition {
    pub fn component(&self, e: Mor) -> Option<&Subspace> {
        self.components.iter().find(|(o, _)| *o == e).map(|(_, s)| s)
    }

    pub fn idempotent(&self, e: Mor) -> Option<&Element> {
        self.idempotents.iter().find(|(o, _)| *o == e).map(|(_, i)| i)
    }

    /// Basis vectors of B lying in `B_e`.
    pub fn basis_of(&self, e: Mor) -> Vec<usize> {
        (0..self.basis_component.len())
            .filter(|&i| self.basis_component[i] == Some(e))
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.basis_component.iter().all(Option::is_some)
    }
}

/// Computes `i_e = e·1_B` for every object and checks that these are
/// orthogonal central idempotents summing to `1_B`, that
/// `B = ⊕ B_e`, and that every basis vector of B is homogeneous.
pub fn component_decomposition(ma: &ModuleAlgebra) -> Result<(ComponentDecomposition, Report)> {
    let f = ma.field();
    let b = &ma.b;
    let g = &ma.groupoid;
    let n = b.dim();
    let one = ma.unit_b()?.clone();
    let objects = g.objects().to_vec();
    let mut report = Report::new("component_decomposition").with_field(f);

    let idempotents: Vec<(Mor, Element)> = objects
        .iter()
        .map(|&e| Ok((e, ma.unit_image(e)?)))
        .collect::<Result<_>>()?;

    let mut idem = Check::new("idempotent");
    let mut central = Check::new("central");
    for (e, i) in &idempotents {
        let sq = b.mul(i, i);
        if sq != *i {
            idem.fail(
                [g.label(*e)],
                format!("i_e = {} but i_e² = {}", b.format(i), b.format(&sq)),
            );
        }
        for k in 0..n {
            let bk = b.basis_element(k);
            if b.mul(i, &bk) != b.mul(&bk, i) {
                central.fail([g.label(*e), b.label(k)], "i_e b ≠ b i_e");
            }
        }
    }
    report.push(idem);
    report.push(central);

    let mut orth = Check::new("orthogonal");
    for (x, (e, i)) in idempotents.iter().enumerate() {
        for (e2, j) in &idempotents[x + 1..] {
            let p = b.mul(i, j);
            if !p.is_zero() {
                orth.fail([g.label(*e), g.label(*e2)], format!("i_e i_e' = {}", b.format(&p)));
            }
        }
    }
    report.push(orth);

    let mut sum = Element::zero();
    for (_, i) in &idempotents {
        sum = sum.plus(f, i);
    }
    report.push(Check::assert(
        "sum_to_unit",
        sum == one,
        ["1_B"],
        format!("Σ i_e = {}", b.format(&sum)),
    ));

    let mut components = Vec::with_capacity(objects.len());
    for (e, i) in &idempotents {
        let gens: Vec<_> = (0..n).map(|k| b.to_dense(&b.mul(&b.basis_element(k), i))).collect();
        components.push((*e, Subspace::span(f, n, &gens)?));
    }
    let total: usize = components.iter().map(|(_, s)| s.dim()).sum();
    let mut span = Subspace::zero(f, n);
    for (_, s) in &components {
        span = span.sum(s)?;
    }
    report.push(Check::assert(
        "direct_sum",
        total == n && span.dim() == n,
        ["B"],
        format!("Σ dim B_e = {total}, dim Σ B_e = {}, dim B = {n}", span.dim()),
    ));

    let mut homogeneous = Check::new("basis_homogeneous");
    let mut basis_component = Vec::with_capacity(n);
    for k in 0..n {
        let v = b.to_dense(&b.basis_element(k));
        let mut owners = Vec::new();
        for (e, s) in &components {
            if s.contains(&v)? {
                owners.push(*e);
            }
        }
        if owners.len() == 1 {
            basis_component.push(Some(owners[0]));
        } else {
            let names: Vec<_> = owners.iter().map(|&e| g.label(e)).collect();
            homogeneous.fail([b.label(k)], format!("lies in B_e for e in {{{}}}", names.join(", ")));
            basis_component.push(None);
        }
    }
    report.push(homogeneous);
    for (e, s) in &components {
        report.dim(format!("B_{}", g.label(*e)), s.dim());
    }

    Ok((
        ComponentDecomposition {
            idempotents,
            components,
            basis_component,
        },
        report,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::library;

    #[test]
    fn i2_swap_splits_into_two_lines() {
        let ma = library::builtin("i2-swap").unwrap().module_algebra().unwrap();
        let (d, r) = component_decomposition(&ma).unwrap();
        assert!(r.holds, "{r}");
        let x = ma.groupoid.id("x").unwrap();
        let y = ma.groupoid.id("y").unwrap();
        assert_eq!(d.basis_component, vec![Some(x), Some(y)]);
        assert_eq!(ma.b.format(d.idempotent(x).unwrap()), "e1");
    }

    #[test]
    fn example_over_gf2_leaves_e3_unassigned() {
        let ma = library::builtin("ex2.8-gf2").unwrap().module_algebra().unwrap();
        let (d, r) = component_decomposition(&ma).unwrap();
        let x = ma.groupoid.id("x").unwrap();
        let y = ma.groupoid.id("y").unwrap();
        assert_eq!(d.basis_component, vec![Some(y), Some(x), None]);
        assert!(r.check("idempotent").unwrap().holds);
        assert!(!r.check("sum_to_unit").unwrap().holds);
        assert!(r.check("basis_homogeneous").unwrap().has_witness(&["e3"]));
    }

    #[test]
    fn example_over_q_has_non_idempotent_units() {
        let ma = library::builtin("ex2.8").unwrap().module_algebra().unwrap();
        let (d, r) = component_decomposition(&ma).unwrap();
        assert!(!r.check("idempotent").unwrap().holds);
        assert!(!d.is_homogeneous());
        let x = ma.groupoid.id("x").unwrap();
        assert_eq!(d.component(x).unwrap().dim(), 2);
    }
}
