use std::fmt;

use serde::Serialize;

use crate::action::{ComponentDecomposition, ModuleAlgebra};
use crate::error::Result;
use crate::exactmath::Subspace;
use crate::groupoid::{Groupoid, Mor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassLabel {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    Unclassified,
}

impl ClassLabel {
    pub const STRATA: [ClassLabel; 10] = [
        ClassLabel::A1,
        ClassLabel::A2,
        ClassLabel::A3,
        ClassLabel::A4,
        ClassLabel::A5,
        ClassLabel::A6,
        ClassLabel::A7,
        ClassLabel::A8,
        ClassLabel::A9,
        ClassLabel::A10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::A1 => "A1",
            ClassLabel::A2 => "A2",
            ClassLabel::A3 => "A3",
            ClassLabel::A4 => "A4",
            ClassLabel::A5 => "A5",
            ClassLabel::A6 => "A6",
            ClassLabel::A7 => "A7",
            ClassLabel::A8 => "A8",
            ClassLabel::A9 => "A9",
            ClassLabel::A10 => "A10",
            ClassLabel::Unclassified => "Unclassified",
        }
    }

    pub fn parse(s: &str) -> Option<ClassLabel> {
        ClassLabel::STRATA.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which object's component a vector must lie in to count as an element of `B_g`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `a ∈ B_g` iff `a` lies in the component of `s(g)`, the component
    /// containing `g·1_B = ε_t(u_g)·1_B`.
    #[default]
    Source,
    /// `a ∈ B_g` iff `a` lies in the component of `t(g)`.
    Target,
}

impl Reading {
    pub fn describe(self) -> &'static str {
        match self {
            Reading::Source => "a in B_g iff a lies in the component of s(g), where g.1_B = eps_t(u_g).1_B lives",
            Reading::Target => "a in B_g iff a lies in the component of t(g)",
        }
    }
}

/// The predicates a basis triple `(a, g, h)` is classified by.
/// For the implicit `l` with `a ∈ B_l` (any `l` with `t(l)` the component of `a`):
/// `lg` is `(l, g) ∈ G₂` for some such `l`, `gl` is `(g, l) ∈ G₂` for some such `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub composable: bool,
    pub loop_: bool,
    pub in_bg: bool,
    pub in_image: bool,
    pub lg: bool,
    pub gl: bool,
}

/// Evaluates the stratum conjunctions. Non-composable pairs are A3 whatever
/// `a` is; otherwise `a` must be homogeneous (`component` is its object).
/// A triple matching several strata, or none, is Unclassified.
pub fn classify(
    component: Option<Mor>,
    in_image: bool,
    g: Mor,
    h: Mor,
    groupoid: &Groupoid,
    reading: Reading,
) -> ClassLabel {
    match predicates(component, in_image, g, h, groupoid, reading) {
        None => ClassLabel::A3,
        Some(None) => ClassLabel::Unclassified,
        Some(Some(p)) => {
            let matches = matching(&p);
            if matches.len() == 1 {
                matches[0]
            } else {
                ClassLabel::Unclassified
            }
        }
    }
}

/// `None` for non-composable pairs, `Some(None)` for inhomogeneous vectors.
fn predicates(
    component: Option<Mor>,
    in_image: bool,
    g: Mor,
    h: Mor,
    groupoid: &Groupoid,
    reading: Reading,
) -> Option<Option<Predicates>> {
    if !groupoid.composable(g, h) {
        return None;
    }
    let Some(e) = component else {
        return Some(None);
    };
    let (s, t) = (groupoid.src(g), groupoid.tgt(g));
    let in_bg = match reading {
        Reading::Source => e == s,
        Reading::Target => e == t,
    };
    Some(Some(Predicates {
        composable: true,
        loop_: s == t,
        in_bg,
        in_image,
        lg: e == s,
        gl: groupoid.connected(t, e),
    }))
}

/// All strata whose conjunction holds for composable, homogeneous triples.
pub fn matching(p: &Predicates) -> Vec<ClassLabel> {
    use ClassLabel::*;
    let Predicates {
        loop_,
        in_bg,
        in_image,
        lg,
        gl,
        ..
    } = *p;
    let out_bg = !in_bg;
    let table = [
        (A1, loop_ && in_bg && in_image),
        (A2, !loop_ && in_bg && in_image),
        (A4, out_bg && !lg && !gl),
        (A5, out_bg && lg && !gl && !loop_),
        (A6, out_bg && !lg && gl),
        (A7, out_bg && lg && gl && loop_),
        (A8, out_bg && lg && gl && !loop_),
        (A9, out_bg && lg && !gl && !loop_),
        (A10, out_bg && lg && !gl && loop_),
    ];
    table.into_iter().filter(|&(_, ok)| ok).map(|(l, _)| l).collect()
}

/// Classifies basis triples of B#KG#KG* for a fixed module algebra.
#[derive(Clone, Debug)]
pub struct Classifier {
    pub reading: Reading,
    components: Vec<Option<Mor>>,
    /// For each morphism, the span of `g·b` over the basis of B.
    images: Vec<Subspace>,
    /// For each (basis vector, morphism): is the vector in the image of `g·`?
    in_image: Vec<bool>,
}

impl Classifier {
    pub fn new(ma: &ModuleAlgebra, decomposition: &ComponentDecomposition, reading: Reading) -> Result<Self> {
        let b = &ma.b;
        let n = b.dim();
        let mut images = Vec::with_capacity(ma.groupoid.len());
        let mut in_image = Vec::with_capacity(ma.groupoid.len() * n);
        for m in ma.groupoid.ids() {
            let gens: Vec<_> = (0..n).map(|i| b.to_dense(ma.action.on_basis(m, i))).collect();
            let s = Subspace::span(ma.field(), n, &gens)?;
            for i in 0..n {
                in_image.push(s.contains(&b.to_dense(&b.basis_element(i)))?);
            }
            images.push(s);
        }
        Ok(Classifier {
            reading,
            components: decomposition.basis_component.clone(),
            images,
            in_image,
        })
    }

    pub fn component(&self, b: usize) -> Option<Mor> {
        self.components[b]
    }

    pub fn image(&self, g: Mor) -> &Subspace {
        &self.images[g]
    }

    pub fn in_image(&self, b: usize, g: Mor) -> bool {
        self.in_image[g * self.components.len() + b]
    }

    pub fn predicates(&self, groupoid: &Groupoid, b: usize, g: Mor, h: Mor) -> Option<Predicates> {
        predicates(self.components[b], self.in_image(b, g), g, h, groupoid, self.reading).flatten()
    }

    pub fn classify(&self, groupoid: &Groupoid, b: usize, g: Mor, h: Mor) -> ClassLabel {
        classify(self.components[b], self.in_image(b, g), g, h, groupoid, self.reading)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::component_decomposition;
    use crate::groupoid::cyclic_group;
    use crate::instance::library;

    fn classifier(name: &str, reading: Reading) -> (ModuleAlgebra, Classifier) {
        let ma = library::builtin(name).unwrap().module_algebra().unwrap();
        let (d, _) = component_decomposition(&ma).unwrap();
        let c = Classifier::new(&ma, &d, reading).unwrap();
        (ma, c)
    }

    #[test]
    fn non_composable_pairs_are_a3() {
        let (ma, c) = classifier("i2-swap", Reading::Source);
        let g = ma.groupoid.id("g").unwrap();
        assert_eq!(c.classify(&ma.groupoid, 0, g, g), ClassLabel::A3);
        assert_eq!(
            classify(None, false, g, g, &ma.groupoid, Reading::Target),
            ClassLabel::A3
        );
    }

    #[test]
    fn i2_swap_triple_under_both_readings() {
        let g = |ma: &ModuleAlgebra, l: &str| ma.groupoid.id(l).unwrap();
        let (ma, c) = classifier("i2-swap", Reading::Target);
        // e1 ∈ B_x, t(g) = y: not in B_g; l with t(l) = x composes on both sides of g
        assert_eq!(c.classify(&ma.groupoid, 0, g(&ma, "g"), g(&ma, "gi")), ClassLabel::A8);
        let (ma, c) = classifier("i2-swap", Reading::Source);
        assert_eq!(c.classify(&ma.groupoid, 0, g(&ma, "g"), g(&ma, "gi")), ClassLabel::A2);
    }

    #[test]
    fn group_case_is_a1() {
        let gr = cyclic_group(2).unwrap();
        let a = gr.id("a").unwrap();
        let e = gr.id("e").unwrap();
        for reading in [Reading::Source, Reading::Target] {
            assert_eq!(classify(Some(e), true, a, a, &gr, reading), ClassLabel::A1);
        }
    }

    #[test]
    fn inhomogeneous_composable_triples_are_unclassified() {
        let gr = cyclic_group(2).unwrap();
        assert_eq!(
            classify(None, true, 0, 1, &gr, Reading::Source),
            ClassLabel::Unclassified
        );
    }

    #[test]
    fn overlapping_conjunctions_are_unclassified() {
        let p = Predicates {
            composable: true,
            loop_: false,
            in_bg: false,
            in_image: false,
            lg: true,
            gl: false,
        };
        assert_eq!(matching(&p), vec![ClassLabel::A5, ClassLabel::A9]);
    }

    #[test]
    fn labels_parse_back() {
        for l in ClassLabel::STRATA {
            assert_eq!(ClassLabel::parse(l.name()), Some(l));
        }
        assert_eq!(ClassLabel::parse("A11"), None);
    }
}
