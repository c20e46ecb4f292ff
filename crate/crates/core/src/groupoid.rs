//! Finite groupoids given by explicit composition tables.
//!
//! Orientation: `gh` is defined iff `t(g) = s(h)`, with `s(g) = g g⁻¹` and
//! `t(g) = g⁻¹ g`. Objects share the id space of morphisms (an object is its
//! own identity morphism). Morphism order is input order and fixes every
//! basis ordering downstream.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Check, Report};

/// Index of a morphism in its groupoid.
pub type Mor = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub src: Mor,
    pub tgt: Mor,
    pub inv: Mor,
}

/// Morphism record with string ids, as read from instance files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub inv: String,
}

impl MorphismSpec {
    pub fn new(id: &str, src: &str, tgt: &str, inv: &str) -> Self {
        MorphismSpec {
            id: id.into(),
            src: src.into(),
            tgt: tgt.into(),
            inv: inv.into(),
        }
    }

    pub fn identity(id: &str) -> Self {
        MorphismSpec::new(id, id, id, id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    objects: Vec<Mor>,
    morphisms: Vec<Morphism>,
    comp: Vec<Option<Mor>>,
    index: HashMap<String, Mor>,
}

impl Groupoid {
    /// Builds a groupoid from labelled records and composition triples
    /// `(a, b, ab)`. Only referential integrity is checked here; the
    /// axioms are checked by [`validate_groupoid`].
    pub fn new(
        objects: &[String],
        morphisms: &[MorphismSpec],
        composition: &[(String, String, String)],
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if index.insert(m.id.clone(), i).is_some() {
                return Err(Error::Duplicate {
                    kind: "morphism",
                    label: m.id.clone(),
                });
            }
        }
        let lookup = |label: &str, kind: &'static str| {
            index.get(label).copied().ok_or_else(|| Error::UnknownLabel {
                kind,
                label: label.to_string(),
            })
        };
        let mut object_ids = Vec::with_capacity(objects.len());
        for o in objects {
            let id = lookup(o, "object (no identity morphism record)")?;
            if object_ids.contains(&id) {
                return Err(Error::Duplicate {
                    kind: "object",
                    label: o.clone(),
                });
            }
            object_ids.push(id);
        }
        let as_object = |label: &str| -> Result<Mor> {
            let id = lookup(label, "object")?;
            if object_ids.contains(&id) {
                Ok(id)
            } else {
                Err(Error::UnknownLabel {
                    kind: "object",
                    label: label.to_string(),
                })
            }
        };
        let mut records = Vec::with_capacity(morphisms.len());
        for m in morphisms {
            records.push(Morphism {
                label: m.id.clone(),
                src: as_object(&m.src)?,
                tgt: as_object(&m.tgt)?,
                inv: lookup(&m.inv, "morphism")?,
            });
        }
        let n = records.len();
        let mut comp = vec![None; n * n];
        for (a, b, c) in composition {
            let (a, b, c) = (lookup(a, "morphism")?, lookup(b, "morphism")?, lookup(c, "morphism")?);
            match comp[a * n + b] {
                Some(prev) if prev != c => {
                    return Err(Error::ConflictingComposition(
                        records[a].label.clone(),
                        records[b].label.clone(),
                    ))
                }
                _ => comp[a * n + b] = Some(c),
            }
        }
        Ok(Groupoid {
            objects: object_ids,
            morphisms: records,
            comp,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    /// Objects (as identity morphisms), in input order.
    pub fn objects(&self) -> &[Mor] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn ids(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn label(&self, m: Mor) -> &str {
        &self.morphisms[m].label
    }

    pub fn id(&self, label: &str) -> Result<Mor> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel {
            kind: "morphism",
            label: label.to_string(),
        })
    }

    pub fn src(&self, m: Mor) -> Mor {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: Mor) -> Mor {
        self.morphisms[m].tgt
    }

    pub fn inv(&self, m: Mor) -> Mor {
        self.morphisms[m].inv
    }

    pub fn is_object(&self, m: Mor) -> bool {
        self.objects.contains(&m)
    }

    /// `(a, b) ∈ G₂`, decided from source and target.
    pub fn composable(&self, a: Mor, b: Mor) -> bool {
        self.tgt(a) == self.src(b)
    }

    /// The composition table entry for `(a, b)`.
    pub fn compose(&self, a: Mor, b: Mor) -> Option<Mor> {
        self.comp[a * self.len() + b]
    }

    /// `ab` when `(a, b) ∈ G₂`, `None` otherwise.
    pub fn mul(&self, a: Mor, b: Mor) -> Option<Mor> {
        if self.composable(a, b) {
            self.compose(a, b)
        } else {
            None
        }
    }

    pub fn compose_labels(&self, a: &str, b: &str) -> Result<Option<&str>> {
        let (a, b) = (self.id(a)?, self.id(b)?);
        Ok(self.compose(a, b).map(|c| self.label(c)))
    }

    /// All `(a, b)` with `t(a) = s(b)`, ordered by `a` then `b`.
    pub fn composable_pairs(&self) -> Vec<(Mor, Mor)> {
        let mut out = Vec::new();
        for a in self.ids() {
            for b in self.ids() {
                if self.composable(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All factorizations `g = h l`.
    pub fn factorizations(&self, g: Mor) -> Vec<(Mor, Mor)> {
        self.composable_pairs()
            .into_iter()
            .filter(|&(h, l)| self.compose(h, l) == Some(g))
            .collect()
    }

    /// Is there a morphism from object `a` to object `b`?
    pub fn connected(&self, a: Mor, b: Mor) -> bool {
        self.ids().any(|m| self.src(m) == a && self.tgt(m) == b)
    }

    /// The composition triples `(a, b, ab)` in table order.
    pub fn composition_triples(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for a in self.ids() {
            for b in self.ids() {
                if let Some(c) = self.compose(a, b) {
                    out.push((self.label(a).into(), self.label(b).into(), self.label(c).into()));
                }
            }
        }
        out
    }

    pub fn specs(&self) -> Vec<MorphismSpec> {
        self.morphisms
            .iter()
            .map(|m| MorphismSpec::new(&m.label, self.label(m.src), self.label(m.tgt), self.label(m.inv)))
            .collect()
    }

    pub fn object_labels(&self) -> Vec<String> {
        self.objects.iter().map(|&o| self.label(o).to_string()).collect()
    }
}

fn show(g: &Groupoid, m: Option<Mor>) -> String {
    m.map_or("undefined".into(), |m| g.label(m).to_string())
}

/// Checks the groupoid axioms exhaustively and reports every violation.
pub fn validate_groupoid(g: &Groupoid) -> Report {
    let mut report = Report::new("groupoid");
    let l = |m: Mor| g.label(m);

    let mut identities = Check::new("objects_are_identities");
    for &e in g.objects() {
        if g.src(e) != e || g.tgt(e) != e || g.inv(e) != e {
            identities.fail([l(e)], "object must have s = t = inverse = itself");
        }
    }
    report.push(identities);

    let mut composability = Check::new("composable_iff_target_is_source");
    let mut bookkeeping = Check::new("source_target_of_product");
    for a in g.ids() {
        for b in g.ids() {
            let c = g.compose(a, b);
            match (g.composable(a, b), c) {
                (true, None) => composability.fail([l(a), l(b)], "t(a) = s(b) but ab is undefined"),
                (false, Some(_)) => composability.fail([l(a), l(b)], "ab is defined but t(a) != s(b)"),
                _ => {}
            }
            if let Some(c) = c {
                if g.src(c) != g.src(a) || g.tgt(c) != g.tgt(b) {
                    bookkeeping.fail([l(a), l(b)], format!("ab = {} has wrong source or target", l(c)));
                }
            }
        }
    }
    report.push(composability);
    report.push(bookkeeping);

    let mut assoc = Check::new("G1_associativity");
    let mut defined = Check::new("G2_definedness");
    for a in g.ids() {
        for b in g.ids() {
            for c in g.ids() {
                let ab = g.compose(a, b);
                let bc = g.compose(b, c);
                let left = ab.and_then(|ab| g.compose(ab, c));
                let right = bc.and_then(|bc| g.compose(a, bc));
                if left.is_some() && right.is_some() && left != right {
                    assoc.fail(
                        [l(a), l(b), l(c)],
                        format!("(ab)c = {} but a(bc) = {}", show(g, left), show(g, right)),
                    );
                }
                if right.is_some() != (ab.is_some() && bc.is_some()) {
                    defined.fail([l(a), l(b), l(c)], "a(bc) defined iff ab and bc defined fails");
                }
            }
        }
    }
    report.push(assoc);
    report.push(defined);

    let mut units = Check::new("G3_units");
    let mut inverses = Check::new("G4_inverses");
    let mut involution = Check::new("inverse_is_involution");
    let mut inv_product = Check::new("inverse_of_product");
    for a in g.ids() {
        if g.compose(a, g.tgt(a)) != Some(a) || g.compose(g.src(a), a) != Some(a) {
            units.fail([l(a)], "g t(g) = g = s(g) g fails");
        }
        let ai = g.inv(a);
        if g.compose(a, ai) != Some(g.src(a)) {
            inverses.fail(
                [l(a)],
                format!("g g^-1 = {} but s(g) = {}", show(g, g.compose(a, ai)), l(g.src(a))),
            );
        }
        if g.compose(ai, a) != Some(g.tgt(a)) {
            inverses.fail(
                [l(a)],
                format!("g^-1 g = {} but t(g) = {}", show(g, g.compose(ai, a)), l(g.tgt(a))),
            );
        }
        if g.inv(ai) != a {
            involution.fail([l(a)], "(g^-1)^-1 != g");
        }
        for b in g.ids() {
            if let Some(ab) = g.compose(a, b) {
                let expected = g.compose(g.inv(b), g.inv(a));
                if expected != Some(g.inv(ab)) {
                    inv_product.fail(
                        [l(a), l(b)],
                        format!("(ab)^-1 = {} but b^-1 a^-1 = {}", l(g.inv(ab)), show(g, expected)),
                    );
                }
            }
        }
    }
    report.push(units);
    report.push(inverses);
    report.push(involution);
    report.push(inv_product);
    report.dim("objects", g.objects().len());
    report.dim("morphisms", g.len());
    report
}

/// A group, given by element labels and a multiplication table of indices,
/// viewed as a one-object groupoid. The identity element becomes the object.
pub fn from_group(labels: &[&str], table: &[Vec<usize>]) -> Result<Groupoid> {
    let n = labels.len();
    if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(Error::InvalidGroup("table must be n x n with entries below n".into()));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidGroup(format!(
                        "not associative at ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }
    let mut specs = Vec::with_capacity(n);
    for a in 0..n {
        let inv = (0..n)
            .find(|&b| table[a][b] == e && table[b][a] == e)
            .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", labels[a])))?;
        specs.push(MorphismSpec::new(labels[a], labels[e], labels[e], labels[inv]));
    }
    let mut comp = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            comp.push((
                labels[a].to_string(),
                labels[b].to_string(),
                labels[table[a][b]].to_string(),
            ));
        }
    }
    Groupoid::new(&[labels[e].to_string()], &specs, &comp)
}

/// The cyclic group Z/n with elements `e, a, a2, …`.
pub fn cyclic_group(n: usize) -> Result<Groupoid> {
    let labels: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            k => format!("a{k}"),
        })
        .collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    from_group(&refs, &table)
}

/// The symmetric group on three letters, elements listed as permutations of `012`.
pub fn symmetric_group_3() -> Groupoid {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let labels = ["id", "s01", "s12", "s02", "r1", "r2"];
    let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
    // (a b)(i) = b(a(i)): apply a first, matching left-to-right composition
    let table: Vec<Vec<usize>> = (0..6)
        .map(|a| (0..6).map(|b| find([0, 1, 2].map(|i| perms[b][perms[a][i]]))).collect())
        .collect();
    from_group(&labels, &table).expect("S3 table is a group")
}

fn pair_label(i: usize, j: usize) -> String {
    if i == j {
        format!("o{i}")
    } else {
        format!("m{i}_{j}")
    }
}

/// The pair groupoid on `n` objects: exactly one morphism `i → j` for every pair.
pub fn pair_groupoid(n: usize) -> Result<Groupoid> {
    if n == 0 {
        return Err(Error::Construction("pair groupoid needs at least one object".into()));
    }
    let objects: Vec<String> = (0..n).map(|i| pair_label(i, i)).collect();
    let mut specs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            specs.push(MorphismSpec::new(
                &pair_label(i, j),
                &pair_label(i, i),
                &pair_label(j, j),
                &pair_label(j, i),
            ));
        }
    }
    let mut comp = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                comp.push((pair_label(i, j), pair_label(j, k), pair_label(i, k)));
            }
        }
    }
    Groupoid::new(&objects, &specs, &comp)
}

/// Disjoint union; labels must not collide.
pub fn disjoint_union(a: &Groupoid, b: &Groupoid) -> Result<Groupoid> {
    let mut objects = a.object_labels();
    objects.extend(b.object_labels());
    let mut specs = a.specs();
    specs.extend(b.specs());
    let mut comp = a.composition_triples();
    comp.extend(b.composition_triples());
    Groupoid::new(&objects, &specs, &comp)
}

/// Direct product; the morphism `(p, q)` is labelled `p|q`.
pub fn product(a: &Groupoid, b: &Groupoid) -> Result<Groupoid> {
    let pl = |p: Mor, q: Mor| format!("{}|{}", a.label(p), b.label(q));
    let mut objects = Vec::new();
    for &p in a.objects() {
        for &q in b.objects() {
            objects.push(pl(p, q));
        }
    }
    let mut specs = Vec::new();
    for p in a.ids() {
        for q in b.ids() {
            specs.push(MorphismSpec {
                id: pl(p, q),
                src: pl(a.src(p), b.src(q)),
                tgt: pl(a.tgt(p), b.tgt(q)),
                inv: pl(a.inv(p), b.inv(q)),
            });
        }
    }
    let mut comp = Vec::new();
    for p1 in a.ids() {
        for q1 in b.ids() {
            for p2 in a.ids() {
                for q2 in b.ids() {
                    if let (Some(p), Some(q)) = (a.compose(p1, p2), b.compose(q1, q2)) {
                        comp.push((pl(p1, q1), pl(p2, q2), pl(p, q)));
                    }
                }
            }
        }
    }
    Groupoid::new(&objects, &specs, &comp)
}

/// Two objects `x = s(g)`, `y = t(g)` and one invertible arrow `g: x → y`.
/// Morphism order: `x, g, y, gi`.
pub fn builtin_i2() -> Groupoid {
    let specs = [
        MorphismSpec::identity("x"),
        MorphismSpec::new("g", "x", "y", "gi"),
        MorphismSpec::identity("y"),
        MorphismSpec::new("gi", "y", "x", "g"),
    ];
    let t = |a: &str, b: &str, c: &str| (a.to_string(), b.to_string(), c.to_string());
    let comp = [
        t("x", "x", "x"),
        t("x", "g", "g"),
        t("g", "y", "g"),
        t("g", "gi", "x"),
        t("y", "y", "y"),
        t("y", "gi", "gi"),
        t("gi", "x", "gi"),
        t("gi", "g", "y"),
    ];
    Groupoid::new(&["x".into(), "y".into()], &specs, &comp).expect("I2 is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(g: &Groupoid, pairs: &[(Mor, Mor)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|&(a, b)| (g.label(a).into(), g.label(b).into()))
            .collect()
    }

    #[test]
    fn trivial_groupoid_is_valid() {
        let g = Groupoid::new(
            &["e".into()],
            &[MorphismSpec::identity("e")],
            &[("e".into(), "e".into(), "e".into())],
        )
        .unwrap();
        assert!(validate_groupoid(&g).holds);
        assert_eq!(g.composable_pairs(), vec![(0, 0)]);
    }

    #[test]
    fn i2_is_valid_and_composes() {
        let g = builtin_i2();
        assert!(validate_groupoid(&g).holds, "{}", validate_groupoid(&g));
        assert_eq!(g.compose_labels("g", "gi").unwrap(), Some("x"));
        assert_eq!(g.compose_labels("x", "x").unwrap(), Some("x"));
        assert_eq!(g.compose_labels("g", "g").unwrap(), None);
        assert!(g.compose_labels("g", "h").is_err());
    }

    #[test]
    fn i2_composable_pairs() {
        let g = builtin_i2();
        let expected = [
            ("x", "x"),
            ("x", "g"),
            ("g", "y"),
            ("g", "gi"),
            ("y", "y"),
            ("y", "gi"),
            ("gi", "x"),
            ("gi", "g"),
        ];
        let got = labels(&g, &g.composable_pairs());
        assert_eq!(got, expected.map(|(a, b)| (a.to_string(), b.to_string())));
    }

    #[test]
    fn broken_inverse_is_caught() {
        let g = builtin_i2();
        let mut comp = g.composition_triples();
        for t in comp.iter_mut() {
            if t.0 == "g" && t.1 == "gi" {
                t.2 = "y".into();
            }
        }
        let bad = Groupoid::new(&g.object_labels(), &g.specs(), &comp).unwrap();
        let r = validate_groupoid(&bad);
        assert!(!r.holds);
        assert!(r.check("G4_inverses").unwrap().has_witness(&["g"]));
    }

    #[test]
    fn dangling_ids_are_input_errors() {
        let specs = [MorphismSpec::identity("x"), MorphismSpec::new("g", "x", "z", "g")];
        assert!(matches!(
            Groupoid::new(&["x".into()], &specs, &[]),
            Err(Error::UnknownLabel { .. })
        ));
        let conflicting = [
            ("x".into(), "x".into(), "x".into()),
            ("x".into(), "x".into(), "g".into()),
        ];
        let specs = [MorphismSpec::identity("x"), MorphismSpec::new("g", "x", "x", "g")];
        assert!(matches!(
            Groupoid::new(&["x".into()], &specs, &conflicting),
            Err(Error::ConflictingComposition(..))
        ));
    }

    #[test]
    fn group_builders() {
        let z2 = cyclic_group(2).unwrap();
        assert_eq!(z2.objects().len(), 1);
        assert_eq!(z2.len(), 2);
        assert_eq!(z2.composable_pairs().len(), 4);
        assert!(validate_groupoid(&z2).holds);
        let s3 = symmetric_group_3();
        assert!(validate_groupoid(&s3).holds);
        assert!(from_group(&["e", "a"], &[vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn pair_and_union_builders() {
        let p2 = pair_groupoid(2).unwrap();
        assert_eq!((p2.objects().len(), p2.len()), (2, 4));
        assert!(validate_groupoid(&p2).holds);
        for &a in p2.objects() {
            for &b in p2.objects() {
                assert_eq!(p2.ids().filter(|&m| p2.src(m) == a && p2.tgt(m) == b).count(), 1);
            }
        }
        let u = disjoint_union(&cyclic_group(2).unwrap(), &builtin_i2()).unwrap();
        assert_eq!((u.objects().len(), u.len()), (3, 6));
        assert!(validate_groupoid(&u).holds);
        let e = u.id("e").unwrap();
        let g = u.id("g").unwrap();
        assert_eq!(u.compose(e, g), None);
        assert!(pair_groupoid(0).is_err());
    }

    #[test]
    fn product_builder() {
        let p = product(&pair_groupoid(2).unwrap(), &cyclic_group(2).unwrap()).unwrap();
        assert_eq!((p.objects().len(), p.len()), (2, 8));
        assert!(validate_groupoid(&p).holds, "{}", validate_groupoid(&p));
    }
}
