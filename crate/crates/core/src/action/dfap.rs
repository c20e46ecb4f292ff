use std::collections::BTreeMap;

use super::{ComponentDecomposition, ModuleAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::Subspace;
use crate::groupoid::Mor;
use crate::report::{Check, Report};
use crate::walg::{Element, FinAlgebra};

/// The groupoid action by ideal isomorphisms induced by a module algebra:
/// `E_g = B_{s(g)}` and `β_g: E_{g⁻¹} → E_g`, `β_g(x) = g·x`.
#[derive(Clone, Debug)]
pub struct DfapAction {
    /// For each morphism, the basis vectors of B spanning `E_g`.
    pub ideals: Vec<Vec<usize>>,
}

impl DfapAction {
    pub fn ideal(&self, g: Mor) -> &[usize] {
        &self.ideals[g]
    }
}

/// Reads off `E_g` and `β_g` from a homogeneous component decomposition and
/// checks the axioms of a groupoid action by ideal isomorphisms. The action
/// is returned even when checks fail.
pub fn derive_dfap_action(ma: &ModuleAlgebra, decomposition: &ComponentDecomposition) -> Result<(DfapAction, Report)> {
    if !decomposition.is_homogeneous() {
        return Err(Error::Construction(
            "the basis of B is not adapted to the decomposition by e·1_B".into(),
        ));
    }
    let f = ma.field();
    let g = &ma.groupoid;
    let b = &ma.b;
    let n = b.dim();
    let ideals: Vec<Vec<usize>> = g.ids().map(|m| decomposition.basis_of(g.src(m))).collect();
    let spaces: Vec<Subspace> = ideals
        .iter()
        .map(|ix| Subspace::coordinate(f, n, ix.iter().copied()))
        .collect();
    let mut report = Report::new("groupoid_action").with_field(f);

    let mut ideal = Check::new("ideal");
    for m in g.ids() {
        for &x in &ideals[m] {
            for k in 0..n {
                let (xe, be) = (b.basis_element(x), b.basis_element(k));
                for p in [b.mul(&be, &xe), b.mul(&xe, &be)] {
                    if !spaces[m].contains(&b.to_dense(&p))? {
                        ideal.fail(
                            [g.label(m), b.label(x), b.label(k)],
                            format!("product {} leaves E_g", b.format(&p)),
                        );
                    }
                }
            }
        }
    }
    report.push(ideal);

    let mut into = Check::new("maps_into_target");
    let mut bijective = Check::new("bijective");
    let mut hom = Check::new("ring_homomorphism");
    for m in g.ids() {
        let dom = &ideals[g.inv(m)];
        let images: Vec<Element> = dom.iter().map(|&x| ma.act(m, &b.basis_element(x))).collect();
        for (&x, img) in dom.iter().zip(&images) {
            if !spaces[m].contains(&b.to_dense(img))? {
                into.fail([g.label(m), b.label(x)], format!("β_g(b) = {} ∉ E_g", b.format(img)));
            }
        }
        let dense: Vec<_> = images.iter().map(|e| b.to_dense(e)).collect();
        let rank = Subspace::span(f, n, &dense)?.dim();
        if rank != dom.len() || rank != ideals[m].len() {
            bijective.fail(
                [g.label(m)],
                format!(
                    "dim E_g⁻¹ = {}, rank β_g = {rank}, dim E_g = {}",
                    dom.len(),
                    ideals[m].len()
                ),
            );
        }
        for (i, &x) in dom.iter().enumerate() {
            for (j, &y) in dom.iter().enumerate() {
                let xy = b.mul(&b.basis_element(x), &b.basis_element(y));
                let lhs = ma.act(m, &xy);
                let rhs = b.mul(&images[i], &images[j]);
                if lhs != rhs {
                    hom.fail(
                        [g.label(m), b.label(x), b.label(y)],
                        format!("β_g(xy) = {}", b.format(&lhs)),
                    );
                }
            }
        }
    }
    report.push(into);
    report.push(bijective);
    report.push(hom);

    let mut identity = Check::new("identity_on_objects");
    for &e in g.objects() {
        for &x in &ideals[e] {
            let img = ma.act(e, &b.basis_element(x));
            if img != b.basis_element(x) {
                identity.fail([g.label(e), b.label(x)], format!("β_e(b) = {}", b.format(&img)));
            }
        }
    }
    report.push(identity);

    let mut composition = Check::new("composition");
    for (m, h) in g.composable_pairs() {
        let Some(mh) = g.mul(m, h) else { continue };
        for &x in &ideals[g.inv(h)] {
            let bx = b.basis_element(x);
            let lhs = ma.act(m, &ma.act(h, &bx));
            let rhs = ma.act(mh, &bx);
            if lhs != rhs {
                composition.fail(
                    [g.label(m), g.label(h), b.label(x)],
                    format!("β_g β_h(b) = {} but β_gh(b) = {}", b.format(&lhs), b.format(&rhs)),
                );
            }
        }
    }
    report.push(composition);

    Ok((DfapAction { ideals }, report))
}

/// The skew groupoid ring `⊕_g E_g δ_g` with basis `b δ_g` (`b` a basis
/// vector of `E_g`) and product `(x δ_g)(y δ_h) = x β_g(y) δ_{gh}` when
/// `(g, h)` is composable, zero otherwise.
#[derive(Clone, Debug)]
pub struct SkewRing {
    pub algebra: FinAlgebra,
    /// `(basis vector of B, morphism)` for each basis element, in order.
    pub entries: Vec<(usize, Mor)>,
}

impl SkewRing {
    pub fn index(&self, b: usize, g: Mor) -> Option<usize> {
        self.entries.iter().position(|&e| e == (b, g))
    }
}

pub fn skew_label(b_label: &str, g_label: &str) -> String {
    format!("{b_label}.d_{g_label}")
}

pub fn skew_groupoid_ring(ma: &ModuleAlgebra, dfap: &DfapAction) -> Result<SkewRing> {
    let f = ma.field();
    let g = &ma.groupoid;
    let b = &ma.b;
    let mut entries = Vec::new();
    for m in g.ids() {
        for &x in dfap.ideal(m) {
            entries.push((x, m));
        }
    }
    let position: BTreeMap<(usize, Mor), usize> = entries.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let labels = entries
        .iter()
        .map(|&(x, m)| skew_label(b.label(x), g.label(m)))
        .collect();
    let mut table = Vec::with_capacity(entries.len() * entries.len());
    for &(x, m) in &entries {
        for &(y, h) in &entries {
            let Some(mh) = g.mul(m, h) else {
                table.push(Element::zero());
                continue;
            };
            let coeffs = b.mul(&b.basis_element(x), &ma.act(m, &b.basis_element(y)));
            let mut out = Element::zero();
            for (k, c) in coeffs.terms() {
                let &i = position.get(&(k, mh)).ok_or_else(|| {
                    Error::Construction(format!(
                        "product of {} and {} leaves E_{}",
                        skew_label(b.label(x), g.label(m)),
                        skew_label(b.label(y), g.label(h)),
                        g.label(mh)
                    ))
                })?;
                out.add_term(f, i, c);
            }
            table.push(out);
        }
    }
    let mut algebra = FinAlgebra::new(f, labels, table, None)?;
    let unit = algebra.find_unit();
    algebra.set_unit(unit);
    Ok(SkewRing { algebra, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::component_decomposition;
    use crate::instance::library;

    fn dfap_of(name: &str) -> (ModuleAlgebra, DfapAction, Report) {
        let ma = library::builtin(name).unwrap().module_algebra().unwrap();
        let (d, _) = component_decomposition(&ma).unwrap();
        let (a, r) = derive_dfap_action(&ma, &d).unwrap();
        (ma, a, r)
    }

    #[test]
    fn i2_swap_induces_a_valid_action() {
        let (ma, a, r) = dfap_of("i2-swap");
        assert!(r.holds, "{r}");
        let g = ma.groupoid.id("g").unwrap();
        // g: x → y, so E_g = B_x = K e1 and β_g maps E_gi = K e2 onto it
        assert_eq!(a.ideal(g), &[0]);
        assert_eq!(a.ideal(ma.groupoid.inv(g)), &[1]);
    }

    #[test]
    fn skew_ring_of_i2_swap_is_a_matrix_algebra() {
        let (ma, a, _) = dfap_of("i2-swap");
        let s = skew_groupoid_ring(&ma, &a).unwrap();
        assert_eq!(s.algebra.dim(), 4);
        assert!(s.algebra.check_associativity().holds);
        let unit = s.algebra.unit().expect("unital");
        assert_eq!(s.algebra.format(unit), "e1.d_x + e2.d_y");
        let eg = s.algebra.element_of("e1.d_g").unwrap();
        let egi = s.algebra.element_of("e2.d_gi").unwrap();
        assert_eq!(s.algebra.format(&s.algebra.mul(&eg, &egi)), "e1.d_x");
    }

    #[test]
    fn skew_ring_of_trivial_action_is_the_group_algebra() {
        let (ma, a, r) = dfap_of("z3-trivial");
        assert!(r.holds);
        let s = skew_groupoid_ring(&ma, &a).unwrap();
        let kg = &ma.kg.algebra;
        assert_eq!(s.algebra.table(), kg.table());
    }

    #[test]
    fn inhomogeneous_basis_is_an_error() {
        let ma = library::builtin("ex2.8-gf2").unwrap().module_algebra().unwrap();
        let (d, _) = component_decomposition(&ma).unwrap();
        assert!(matches!(derive_dfap_action(&ma, &d), Err(Error::Construction(_))));
    }
}
