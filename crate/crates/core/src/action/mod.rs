//! Weak module-algebra actions of KG on an algebra B, the decomposition of B
//! by the central idempotents `e·1_B`, the induced groupoid action by ideal
//! isomorphisms, and its skew groupoid ring.

mod decomposition;
mod dfap;

pub use decomposition::{component_decomposition, ComponentDecomposition};
pub use dfap::{derive_dfap_action, skew_groupoid_ring, DfapAction, SkewRing};

use crate::error::{Error, Result};
use crate::exactmath::Field;
use crate::groupoid::{Groupoid, Mor};
use crate::report::{Check, Report};
use crate::walg::{groupoid_algebra, Element, FinAlgebra, WeakHopf};

/// `table[g * dim B + i]` is `u_g · b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    table: Vec<Element>,
    b_dim: usize,
}

impl ModuleAction {
    pub fn from_fn(g: &Groupoid, b: &FinAlgebra, mut act: impl FnMut(Mor, usize) -> Element) -> Self {
        let mut table = Vec::with_capacity(g.len() * b.dim());
        for m in g.ids() {
            for i in 0..b.dim() {
                table.push(act(m, i));
            }
        }
        ModuleAction { table, b_dim: b.dim() }
    }

    /// From `(morphism, basis label, image)` triples; every pair must appear once.
    pub fn from_triples(g: &Groupoid, b: &FinAlgebra, triples: Vec<(String, String, Element)>) -> Result<Self> {
        let n = b.dim();
        let mut table: Vec<Option<Element>> = vec![None; g.len() * n];
        for (m, l, e) in triples {
            let (mi, bi) = (g.id(&m)?, b.index(&l)?);
            b.owns(&e)?;
            let slot = &mut table[mi * n + bi];
            if slot.is_some() {
                return Err(Error::Duplicate {
                    kind: "action entry",
                    label: format!("({m}, {l})"),
                });
            }
            *slot = Some(e);
        }
        let mut out = Vec::with_capacity(table.len());
        for (k, e) in table.into_iter().enumerate() {
            out.push(e.ok_or_else(|| Error::MissingActionEntry {
                morphism: g.label(k / n).to_string(),
                basis: b.label(k % n).to_string(),
            })?);
        }
        Ok(ModuleAction { table: out, b_dim: n })
    }

    pub fn on_basis(&self, m: Mor, i: usize) -> &Element {
        &self.table[m * self.b_dim + i]
    }

    /// `u_m · x`
    pub fn act(&self, field: Field, m: Mor, x: &Element) -> Element {
        let mut out = Element::zero();
        for (i, c) in x.terms() {
            out.add_scaled(field, c, self.on_basis(m, i));
        }
        out
    }

    /// `σ · x` for an arbitrary `σ ∈ KG`.
    pub fn act_kg(&self, field: Field, sigma: &Element, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in sigma.terms() {
            out.add_scaled(field, c, &self.act(field, m, x));
        }
        out
    }
}

/// A groupoid, its algebra KG, an algebra B and a KG-action on B: the
/// input data from which every other construction is built.
#[derive(Clone, Debug)]
pub struct ModuleAlgebra {
    pub groupoid: Groupoid,
    pub kg: WeakHopf,
    pub b: FinAlgebra,
    pub action: ModuleAction,
}

impl ModuleAlgebra {
    pub fn new(groupoid: Groupoid, b: FinAlgebra, action: ModuleAction) -> Result<Self> {
        if action.b_dim != b.dim() || action.table.len() != groupoid.len() * b.dim() {
            return Err(Error::MismatchedParents("action table does not match B and G".into()));
        }
        let kg = groupoid_algebra(&groupoid, b.field());
        Ok(ModuleAlgebra {
            groupoid,
            kg,
            b,
            action,
        })
    }

    pub fn field(&self) -> Field {
        self.b.field()
    }

    pub fn act(&self, m: Mor, x: &Element) -> Element {
        self.action.act(self.field(), m, x)
    }

    pub fn unit_b(&self) -> Result<&Element> {
        self.b.unit().ok_or(Error::MissingUnit)
    }

    /// `e · 1_B` for an object `e`.
    pub fn unit_image(&self, m: Mor) -> Result<Element> {
        Ok(self.act(m, self.unit_b()?))
    }
}

/// Checks the weak module-algebra axioms exhaustively:
/// (i) B is a unital left KG-module, (ii) `σ(ab) = (σ₁·a)(σ₂·b)` on all
/// basis pairs and on pairs involving `1_B`, (iii) `σ·1_B = ε_t(σ)·1_B`.
pub fn check_module_algebra(ma: &ModuleAlgebra) -> Result<Report> {
    let f = ma.field();
    let g = &ma.groupoid;
    let b = &ma.b;
    let kg = &ma.kg;
    let one = ma.unit_b()?.clone();
    let mut report = Report::new("module_algebra").with_field(f);

    let mut module = Check::new("i_module_associativity");
    for m in g.ids() {
        for h in g.ids() {
            let mh = kg.algebra.product(m, h);
            for i in 0..b.dim() {
                let bi = b.basis_element(i);
                let lhs = ma.act(m, &ma.act(h, &bi));
                let rhs = ma.action.act_kg(f, mh, &bi);
                if lhs != rhs {
                    module.fail(
                        [g.label(m), g.label(h), b.label(i)],
                        format!("g·(h·b) = {} but (u_g u_h)·b = {}", b.format(&lhs), b.format(&rhs)),
                    );
                }
            }
        }
    }
    report.push(module);

    let mut unital = Check::new("i_module_unit");
    let kg_one = kg.algebra.unit().expect("KG is unital");
    for i in 0..b.dim() {
        let bi = b.basis_element(i);
        let img = ma.action.act_kg(f, kg_one, &bi);
        if img != bi {
            unital.fail([b.label(i)], format!("1_KG·b = {}", b.format(&img)));
        }
    }
    report.push(unital);

    // operands: every basis vector, plus 1_B when it is not itself a basis vector
    let mut operands: Vec<(String, Element)> = (0..b.dim())
        .map(|i| (b.label(i).to_string(), b.basis_element(i)))
        .collect();
    if !operands.iter().any(|(_, e)| *e == one) {
        operands.insert(0, ("1_B".to_string(), one.clone()));
    }
    let mut multiplicative = Check::new("ii_multiplicative");
    for m in g.ids() {
        let sigma = kg.algebra.basis_element(m);
        let delta = kg.delta(&sigma);
        for (la, a) in &operands {
            for (lb, bb) in &operands {
                let lhs = ma.act(m, &b.mul(a, bb));
                let mut rhs = Element::zero();
                for (k, c) in delta.terms() {
                    rhs.add_scaled(f, c, &b.mul(&ma.act(k[0], a), &ma.act(k[1], bb)));
                }
                if lhs != rhs {
                    multiplicative.fail(
                        [g.label(m), la.as_str(), lb.as_str()],
                        format!("σ(ab) = {} but (σ₁·a)(σ₂·b) = {}", b.format(&lhs), b.format(&rhs)),
                    );
                }
            }
        }
    }
    report.push(multiplicative);

    let mut unit_axiom = Check::new("iii_unit_action");
    for m in g.ids() {
        let sigma = kg.algebra.basis_element(m);
        let et = kg.target_counit(&sigma)?;
        let lhs = ma.act(m, &one);
        let rhs = ma.action.act_kg(f, &et, &one);
        if lhs != rhs {
            unit_axiom.fail(
                [g.label(m)],
                format!("σ·1_B = {} but ε_t(σ)·1_B = {}", b.format(&lhs), b.format(&rhs)),
            );
        }
    }
    report.push(unit_axiom);
    report.dim("B", b.dim());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::library;

    #[test]
    fn trivial_z2_action_on_k_passes() {
        let inst = library::builtin("z2-trivial").unwrap();
        let ma = inst.module_algebra().unwrap();
        let r = check_module_algebra(&ma).unwrap();
        assert!(r.holds, "{r}");
    }

    #[test]
    fn i2_swap_passes() {
        let ma = library::builtin("i2-swap").unwrap().module_algebra().unwrap();
        let r = check_module_algebra(&ma).unwrap();
        assert!(r.holds, "{r}");
    }

    #[test]
    fn example_action_fails_multiplicativity_at_unit_over_q() {
        let ma = library::builtin("ex2.8").unwrap().module_algebra().unwrap();
        let r = check_module_algebra(&ma).unwrap();
        assert!(!r.holds);
        let ii = r.check("ii_multiplicative").unwrap();
        assert!(ii.has_witness(&["y", "1_B", "1_B"]), "{r}");
        let y1 = ma.unit_image(ma.groupoid.id("y").unwrap()).unwrap();
        assert_eq!(ma.b.format(&y1), "e1 + 2*e2");
    }

    #[test]
    fn example_action_over_gf2_passes_the_unit_pair() {
        let ma = library::builtin("ex2.8-gf2").unwrap().module_algebra().unwrap();
        let r = check_module_algebra(&ma).unwrap();
        let ii = r.check("ii_multiplicative").unwrap();
        assert!(!ii.has_witness(&["y", "1_B", "1_B"]));
        // the action is still not a module: g·(g·e1) = e1 although u_g u_g = 0
        assert!(r
            .check("i_module_associativity")
            .unwrap()
            .has_witness(&["g", "g", "e1"]));
    }

    #[test]
    fn missing_entries_are_rejected() {
        let inst = library::builtin("i2-swap").unwrap();
        let err = ModuleAction::from_triples(&inst.groupoid, &inst.algebra, vec![]).unwrap_err();
        assert!(matches!(err, Error::MissingActionEntry { .. }));
    }
}
