use super::algebra::{Element, FinAlgebra};
use super::hopf::{CoStructure, WeakHopf};
use crate::error::{Error, Result};
use crate::exactmath::Field;
use crate::groupoid::Groupoid;

pub fn kg_label(g: &Groupoid, m: usize) -> String {
    format!("u_{}", g.label(m))
}

pub fn dual_label(g: &Groupoid, m: usize) -> String {
    format!("rho_{}", g.label(m))
}

/// The groupoid algebra KG: basis `u_g`, `u_g u_h = u_{gh}` when `t(g) = s(h)`
/// and zero otherwise, unit `Σ_{e ∈ G₀} u_e`, grouplike Δ, ε ≡ 1 on the
/// basis and `S(u_g) = u_{g⁻¹}`.
pub fn groupoid_algebra(g: &Groupoid, field: Field) -> WeakHopf {
    let basis = g.ids().map(|m| kg_label(g, m)).collect();
    let unit = Element::from_terms(field, g.objects().iter().map(|&e| (e, field.one())));
    let algebra = FinAlgebra::from_rule(field, basis, Some(unit), |a, b| {
        if g.composable(a, b) {
            g.compose(a, b).map_or_else(Element::zero, |c| Element::basis(field, c))
        } else {
            Element::zero()
        }
    })
    .expect("table matches basis");
    let co = CoStructure {
        delta: g.ids().map(|m| vec![(m, m, field.one())]).collect(),
        counit: g.ids().map(|_| field.one()).collect(),
        antipode: Some(g.ids().map(|m| Element::basis(field, g.inv(m))).collect()),
    };
    WeakHopf { algebra, co }
}

/// The dual KG*: basis `ρ_g`, pointwise product `ρ_a ρ_b = δ_{ab} ρ_a`,
/// unit `Σ_g ρ_g`, `Δ(ρ_g) = Σ_{hl = g} ρ_h ⊗ ρ_l`, `ε(ρ_g) = [g ∈ G₀]`,
/// `S(ρ_g) = ρ_{g⁻¹}`.
pub fn dual_weak_hopf(kg: &WeakHopf, g: &Groupoid) -> Result<WeakHopf> {
    if kg.algebra.dim() != g.len() {
        return Err(Error::MismatchedParents(format!(
            "KG has dimension {} but the groupoid has {} morphisms",
            kg.algebra.dim(),
            g.len()
        )));
    }
    let field = kg.field();
    let basis = g.ids().map(|m| dual_label(g, m)).collect();
    let unit = Element::from_terms(field, g.ids().map(|m| (m, field.one())));
    let algebra = FinAlgebra::from_rule(field, basis, Some(unit), |a, b| {
        if a == b {
            Element::basis(field, a)
        } else {
            Element::zero()
        }
    })?;
    let co = CoStructure {
        delta: g
            .ids()
            .map(|m| {
                g.factorizations(m)
                    .into_iter()
                    .map(|(h, l)| (h, l, field.one()))
                    .collect()
            })
            .collect(),
        counit: g
            .ids()
            .map(|m| if g.is_object(m) { field.one() } else { field.zero() })
            .collect(),
        antipode: Some(g.ids().map(|m| Element::basis(field, g.inv(m))).collect()),
    };
    Ok(WeakHopf { algebra, co })
}

/// The linear dual of any finite-dimensional weak bialgebra with unit, on
/// the dual basis `f_i` (labelled `label*`):
/// product from Δ, Δ from the product, unit ε, counit evaluation at 1,
/// antipode the transpose of S.
pub fn transpose_dual(h: &WeakHopf) -> Result<WeakHopf> {
    let alg = &h.algebra;
    let field = alg.field();
    let n = alg.dim();
    let unit = alg.unit().ok_or(Error::MissingUnit)?;
    let basis = alg.basis().iter().map(|l| format!("{l}*")).collect();
    let mut table = vec![Element::zero(); n * n];
    for c in 0..n {
        for (a, b, s) in &h.co.delta[c] {
            table[a * n + b].add_term(field, c, s);
        }
    }
    let dual_unit = Element::from_terms(field, h.co.counit.iter().cloned().enumerate());
    let algebra = FinAlgebra::new(field, basis, table, Some(dual_unit))?;
    let mut delta = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            for (c, s) in alg.product(a, b).terms() {
                delta[c].push((a, b, s.clone()));
            }
        }
    }
    let counit = (0..n)
        .map(|c| unit.coeff(c).cloned().unwrap_or_else(|| field.zero()))
        .collect();
    let antipode = match &h.co.antipode {
        Some(s) => {
            let mut st = vec![Element::zero(); n];
            for (a, sa) in s.iter().enumerate() {
                for (c, x) in sa.terms() {
                    st[c].add_term(field, a, x);
                }
            }
            Some(st)
        }
        None => None,
    };
    Ok(WeakHopf {
        algebra,
        co: CoStructure {
            delta,
            counit,
            antipode,
        },
    })
}
