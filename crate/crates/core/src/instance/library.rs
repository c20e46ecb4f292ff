//! Built-in instances and groupoids, and builders for permutation actions
//! (B = K^X with KG moving the idempotents), which are always valid
//! module algebras when the point map is compatible with composition.

use std::collections::BTreeMap;

use super::{Instance, ReferenceSpec};
use crate::action::ModuleAction;
use crate::error::{Error, Result};
use crate::exactmath::Field;
use crate::groupoid::{
    builtin_i2, cyclic_group, disjoint_union, pair_groupoid, product, symmetric_group_3, Groupoid, Mor,
};
use crate::walg::{Element, FinAlgebra};

pub const BUILTINS: [&str; 6] = ["z2-trivial", "z3-trivial", "i2-swap", "z2-swap", "ex2.8", "ex2.8-gf2"];

pub fn builtin(name: &str) -> Result<Instance> {
    match name {
        "z2-trivial" => object_action(name, cyclic_group(2)?, Field::Rational, &["1"]),
        "z3-trivial" => object_action(name, cyclic_group(3)?, Field::Rational, &["1"]),
        "i2-swap" => object_action(name, builtin_i2(), Field::Rational, &["e1", "e2"]),
        "z2-swap" => regular_action(name, cyclic_group(2)?, Field::Rational, &["e1", "e2"]),
        "ex2.8" => example(name, Field::Rational),
        "ex2.8-gf2" => example(name, Field::Prime { p: 2 }),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// The groupoids on which the weak Hopf axioms of KG and KG* are checked.
pub fn library_groupoids() -> Result<Vec<(&'static str, Groupoid)>> {
    Ok(vec![
        ("trivial", cyclic_group(1)?),
        ("Z2", cyclic_group(2)?),
        ("Z3", cyclic_group(3)?),
        ("S3", symmetric_group_3()),
        ("I2", builtin_i2()),
        ("pair3", pair_groupoid(3)?),
        ("Z2+I2", disjoint_union(&cyclic_group(2)?, &builtin_i2())?),
        ("pair2xZ2", product(&pair_groupoid(2)?, &cyclic_group(2)?)?),
    ])
}

/// `K^n` with basis `labels` of pairwise orthogonal idempotents summing to 1.
pub fn idempotent_algebra(field: Field, labels: &[&str]) -> Result<FinAlgebra> {
    let n = labels.len();
    let unit = Element::from_terms(field, (0..n).map(|i| (i, field.one())));
    FinAlgebra::from_rule(
        field,
        labels.iter().map(|s| s.to_string()).collect(),
        Some(unit),
        |i, j| {
            if i == j {
                Element::basis(field, i)
            } else {
                Element::zero()
            }
        },
    )
}

/// `B = K^X` for points `X` anchored at objects `anchor[x]`, with
/// `u_g · e_x = e_{mov(g, x)}` when `anchor[x] = t(g)` and zero otherwise.
/// `mov(g, x)` must lie over `s(g)` and satisfy `mov(g, mov(h, x)) = mov(gh, x)`.
pub fn permutation_action(
    name: &str,
    groupoid: Groupoid,
    field: Field,
    labels: &[&str],
    anchor: &[Mor],
    mut mov: impl FnMut(Mor, usize) -> usize,
) -> Result<Instance> {
    if anchor.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            found: anchor.len(),
        });
    }
    let b = idempotent_algebra(field, labels)?;
    let action = ModuleAction::from_fn(&groupoid, &b, |g, x| {
        if anchor[x] == groupoid.tgt(g) {
            Element::basis(field, mov(g, x))
        } else {
            Element::zero()
        }
    });
    Instance::from_parts(name, groupoid, b, action, None)
}

/// One point per object; `g` moves the point of `t(g)` to the point of `s(g)`.
/// For a group this is the trivial action on K.
pub fn object_action(name: &str, groupoid: Groupoid, field: Field, labels: &[&str]) -> Result<Instance> {
    let objects = groupoid.objects().to_vec();
    if objects.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: objects.len(),
            found: labels.len(),
        });
    }
    let position: BTreeMap<Mor, usize> = objects.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let g2 = groupoid.clone();
    permutation_action(name, groupoid, field, labels, &objects, move |g, _| {
        position[&g2.src(g)]
    })
}

/// One point per morphism, acted on by left composition:
/// `u_g · e_x = e_{gx}` when `t(g) = s(x)`.
pub fn regular_action(name: &str, groupoid: Groupoid, field: Field, labels: &[&str]) -> Result<Instance> {
    if groupoid.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: groupoid.len(),
            found: labels.len(),
        });
    }
    let anchor: Vec<Mor> = groupoid.ids().map(|x| groupoid.src(x)).collect();
    let g2 = groupoid.clone();
    permutation_action(name, groupoid, field, labels, &anchor, move |g, x| {
        g2.mul(g, x).expect("anchored at the target of g")
    })
}

fn terms(list: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    list.iter().map(|&(a, b, c)| (a.into(), b.into(), c.into())).collect()
}

/// The two-object groupoid `x = s(g)`, `y = t(g)` acting on
/// `B = Ke1 ⊕ Ke2 ⊕ Ke3` by
/// `g(a1e1 + a2e2 + a3e3) = a1e2 + a2e1 + a3e1`,
/// `gi(a1e1 + a2e2 + a3e3) = a1e2 + a2e1 + a3e2`,
/// `x` and `y` the identity on `Ke1 ⊕ Ke2`, `y(e3) = e2`, `x(e3) = e1`,
/// together with the published stratum lists and identity element.
fn example(name: &str, field: Field) -> Result<Instance> {
    let groupoid = builtin_i2();
    let b = idempotent_algebra(field, &["e1", "e2", "e3"])?;
    let images: [(&str, [usize; 3]); 4] = [("x", [0, 1, 0]), ("g", [1, 0, 0]), ("y", [0, 1, 1]), ("gi", [1, 0, 1])];
    let action = ModuleAction::from_fn(&groupoid, &b, |m, i| {
        let row = images
            .iter()
            .find(|(l, _)| *l == groupoid.label(m))
            .expect("all morphisms listed");
        Element::basis(field, row.1[i])
    });
    let strata = BTreeMap::from([
        (
            "A1".to_string(),
            terms(&[("x", "x", "x"), ("x", "y", "g"), ("y", "y", "y"), ("y", "y", "gi")]),
        ),
        (
            "A2".to_string(),
            terms(&[("x", "gi", "g"), ("x", "gi", "x"), ("y", "g", "y"), ("y", "g", "gi")]),
        ),
        (
            "A3".to_string(),
            terms(&[
                ("x", "x", "y"),
                ("x", "x", "gi"),
                ("x", "y", "x"),
                ("x", "y", "g"),
                ("x", "g", "x"),
                ("x", "g", "g"),
                ("x", "g", "y"),
                ("x", "gi", "gi"),
                ("y", "x", "y"),
                ("y", "x", "gi"),
                ("y", "y", "x"),
                ("y", "y", "g"),
                ("y", "gi", "gi"),
                ("y", "gi", "y"),
                ("x", "y", "x"),
            ]),
        ),
        (
            "A4".to_string(),
            terms(&[("x", "y", "y"), ("x", "y", "gi"), ("y", "x", "x"), ("y", "x", "x")]),
        ),
        (
            "A5".to_string(),
            terms(&[("x", "g", "y"), ("x", "g", "gi"), ("y", "gi", "x"), ("y", "gi", "g")]),
        ),
    ]);
    let reference = ReferenceSpec {
        strata,
        kernel: vec!["A3".into(), "A4".into(), "A5".into()],
        identity: terms(&[("g", "y", "y"), ("g", "y", "gi"), ("gi", "x", "x"), ("gi", "x", "g")]),
    };
    Instance::from_parts(name, groupoid, b, action, Some(reference))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::check_module_algebra;
    use crate::groupoid::validate_groupoid;

    #[test]
    fn example_builtin_has_the_published_action() {
        let inst = builtin("ex2.8").unwrap();
        assert_eq!(inst.groupoid.len(), 4);
        assert_eq!(inst.algebra.dim(), 3);
        let g = inst.groupoid.id("g").unwrap();
        assert_eq!(inst.algebra.format(inst.action.on_basis(g, 2)), "e1");
        assert_eq!(inst.field, Field::Rational);
        assert_eq!(builtin("ex2.8-gf2").unwrap().field, Field::Prime { p: 2 });
    }

    #[test]
    fn trivial_builtin_is_one_dimensional() {
        let inst = builtin("z2-trivial").unwrap();
        assert_eq!(inst.groupoid.objects().len(), 1);
        assert_eq!(inst.groupoid.len(), 2);
        assert_eq!(inst.algebra.basis(), &["1".to_string()]);
    }

    #[test]
    fn unknown_builtin_is_an_error() {
        assert!(matches!(builtin("nope"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn library_groupoids_are_valid() {
        for (name, g) in library_groupoids().unwrap() {
            assert!(validate_groupoid(&g).holds, "{name}");
        }
    }

    #[test]
    fn permutation_actions_are_module_algebras() {
        for (name, g) in library_groupoids().unwrap() {
            let labels: Vec<String> = g.ids().map(|m| format!("p{m}")).collect();
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            let inst = regular_action(name, g.clone(), Field::Rational, &refs).unwrap();
            let r = check_module_algebra(&inst.module_algebra().unwrap()).unwrap();
            assert!(r.holds, "{name}: {r}");
            let objs: Vec<String> = g.objects().iter().map(|m| format!("o{m}")).collect();
            let refs: Vec<&str> = objs.iter().map(String::as_str).collect();
            let inst = object_action(name, g, Field::Prime { p: 3 }, &refs).unwrap();
            let r = check_module_algebra(&inst.module_algebra().unwrap()).unwrap();
            assert!(r.holds, "{name}: {r}");
        }
    }
}
