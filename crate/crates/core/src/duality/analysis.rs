use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::classify::{ClassLabel, Classifier, Reading};
use super::{build_phi, identity_candidates, kernel_and_image, phi_is_homomorphism, right_b_linearity};
use super::{KernelImage, LinearMapRep};
use crate::action::{check_module_algebra, component_decomposition, ComponentDecomposition, ModuleAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{Scalar, Subspace};
use crate::groupoid::validate_groupoid;
use crate::instance::Reference;
use crate::report::{Check, Report};
use crate::smash::{double_smash, smash_product, SmashAlgebra};
use crate::walg::{dual_weak_hopf, Element, WeakHopf};

/// The statements the engine can verify on an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClaimId {
    #[serde(rename = "thm2.2")]
    Thm22,
    #[serde(rename = "prop2.3")]
    Prop23,
    #[serde(rename = "prop2.4")]
    Prop24,
    #[serde(rename = "prop2.5")]
    Prop25,
    #[serde(rename = "thm2.6")]
    Thm26,
    #[serde(rename = "rem2.7")]
    Rem27,
    #[serde(rename = "thm2.9")]
    Thm29,
}

impl ClaimId {
    pub const ALL: [ClaimId; 7] = [
        ClaimId::Thm22,
        ClaimId::Prop23,
        ClaimId::Prop24,
        ClaimId::Prop25,
        ClaimId::Thm26,
        ClaimId::Rem27,
        ClaimId::Thm29,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClaimId::Thm22 => "thm2.2",
            ClaimId::Prop23 => "prop2.3",
            ClaimId::Prop24 => "prop2.4",
            ClaimId::Prop25 => "prop2.5",
            ClaimId::Thm26 => "thm2.6",
            ClaimId::Rem27 => "rem2.7",
            ClaimId::Thm29 => "thm2.9",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            ClaimId::Thm22 => "ker phi is spanned by A3..A6 and meets A1, A2, A7..A10 trivially",
            ClaimId::Prop23 => "A1 + A7 + A10 is a subalgebra",
            ClaimId::Prop24 => "y is the identity of A1 + A7 + A10",
            ClaimId::Prop25 => "y annihilates A2 from the left and A8, A9 from the right",
            ClaimId::Thm26 => "B#KG#KG* = D + S with D an ideal and S = S' + T",
            ClaimId::Rem27 => "0 -> D -> B#KG#KG* -> phi(S) -> 0 is exact",
            ClaimId::Thm29 => "0 -> D1 -> (skew groupoid ring)#KG* -> phi(Psi(C)) -> 0 is exact",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::UnknownLabel {
                kind: "claim",
                label: s.to_string(),
            })
    }
}

/// Names of the two identity candidates, in the order they are tried.
pub const Y_OBJECT: &str = "y_object_sum";
pub const Y_MORPHISM: &str = "y_morphism_sum";

/// Everything computed once per instance: the validators, both smash
/// products, φ with its kernel and image, and the stratification.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub ma: ModuleAlgebra,
    pub kg_star: WeakHopf,
    pub groupoid_report: Report,
    pub module_report: Report,
    pub decomposition: ComponentDecomposition,
    pub decomposition_report: Report,
    pub classifier: Classifier,
    pub bsm: SmashAlgebra,
    pub dsm: SmashAlgebra,
    pub phi: LinearMapRep,
    pub kernel_image: KernelImage,
    /// Stratum of each basis vector of B#KG#KG*.
    pub labels: Vec<ClassLabel>,
}

impl Analysis {
    pub fn new(ma: ModuleAlgebra, reading: Reading) -> Result<Self> {
        let groupoid_report = validate_groupoid(&ma.groupoid);
        let module_report = check_module_algebra(&ma)?;
        let (decomposition, decomposition_report) = component_decomposition(&ma)?;
        let classifier = Classifier::new(&ma, &decomposition, reading)?;
        let kg_star = dual_weak_hopf(&ma.kg, &ma.groupoid)?;
        let bsm = smash_product(&ma);
        let dsm = double_smash(&ma, &kg_star)?;
        let phi = build_phi(&dsm, &bsm)?;
        let kernel_image = kernel_and_image(&phi)?;
        let labels = (0..dsm.dim())
            .map(|i| {
                let (b, g, h) = dsm.split3(i);
                classifier.classify(&ma.groupoid, b, g, h)
            })
            .collect();
        Ok(Analysis {
            ma,
            kg_star,
            groupoid_report,
            module_report,
            decomposition,
            decomposition_report,
            classifier,
            bsm,
            dsm,
            phi,
            kernel_image,
            labels,
        })
    }

    pub fn reading(&self) -> Reading {
        self.classifier.reading
    }

    pub fn dim(&self) -> usize {
        self.dsm.dim()
    }

    fn field(&self) -> crate::exactmath::Field {
        self.ma.field()
    }

    pub fn stratum(&self, label: ClassLabel) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == label).collect()
    }

    pub fn span(&self, labels: &[ClassLabel]) -> Subspace {
        let idx = (0..self.labels.len()).filter(|&i| labels.contains(&self.labels[i]));
        Subspace::coordinate(self.field(), self.dim(), idx)
    }

    /// Dimensions of A1..A10 and the Unclassified count.
    pub fn strata_dims(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for l in ClassLabel::STRATA.into_iter().chain([ClassLabel::Unclassified]) {
            out.insert(l.name().to_string(), self.stratum(l).len());
        }
        out
    }

    pub fn classification_check(&self) -> Check {
        let mut c = Check::new("classification_total");
        for i in self.stratum(ClassLabel::Unclassified) {
            let (b, g, h) = self.dsm.split3(i);
            let detail = match self.classifier.predicates(&self.ma.groupoid, b, g, h) {
                None => "basis vector of B is not homogeneous".to_string(),
                Some(p) => {
                    let m = super::matching(&p);
                    if m.is_empty() {
                        format!("no stratum matches {p:?}")
                    } else {
                        let names: Vec<_> = m.iter().map(|l| l.name()).collect();
                        format!("matches several strata: {}", names.join(", "))
                    }
                }
            };
            c.fail([self.dsm.algebra.label(i)], detail);
        }
        c
    }

    /// The validator reports the claims are conditional on.
    pub fn hypotheses(&self) -> Vec<Report> {
        let mut classification = Report::new("classification");
        classification.push(self.classification_check());
        vec![
            self.groupoid_report.clone(),
            self.module_report.clone(),
            self.decomposition_report.clone(),
            classification,
        ]
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses().iter().all(|r| r.holds)
    }

    fn dense(&self, e: &Element) -> Vec<Scalar> {
        self.dsm.algebra.to_dense(e)
    }

    fn element(&self, v: &[Scalar]) -> Element {
        Element::from_dense(v)
    }

    fn format_vec(&self, v: &[Scalar]) -> String {
        self.dsm.algebra.format(&self.element(v))
    }

    /// Products of basis vectors of `space` stay in `space`.
    fn closure(&self, name: &str, space: &Subspace) -> Result<Check> {
        let mut c = Check::new(name);
        let gens: Vec<Element> = space.basis().iter().map(|v| self.element(v)).collect();
        for x in &gens {
            for y in &gens {
                let p = self.dsm.algebra.mul(x, y);
                if !space.contains(&self.dense(&p))? {
                    c.fail(
                        [self.dsm.algebra.format(x), self.dsm.algebra.format(y)],
                        format!("product {} leaves the subspace", self.dsm.algebra.format(&p)),
                    );
                }
            }
        }
        Ok(c)
    }

    fn new_report(&self, claim: ClaimId) -> Report {
        let mut r = Report::new(claim.id()).with_field(self.field());
        r.conditional = !self.hypotheses_hold();
        r.note(claim.summary());
        r
    }

    pub fn verify(&self, claim: ClaimId) -> Result<Report> {
        match claim {
            ClaimId::Thm22 => self.thm22(),
            ClaimId::Prop23 => self.prop23(),
            ClaimId::Prop24 => self.prop24(),
            ClaimId::Prop25 => self.prop25(),
            ClaimId::Thm26 => self.thm26(),
            ClaimId::Rem27 => self.rem27(),
            ClaimId::Thm29 => super::verify_skew_duality(self),
        }
    }

    fn thm22(&self) -> Result<Report> {
        use ClassLabel::*;
        let mut r = self.new_report(ClaimId::Thm22);
        let ker = &self.kernel_image.kernel;
        let strata = self.span(&[A3, A4, A5, A6]);

        let mut eq = Check::new("kernel_equals_a3_to_a6");
        for v in ker.basis() {
            if !strata.contains(v)? {
                eq.fail([self.format_vec(v)], "kernel vector outside span(A3..A6)");
            }
        }
        for l in [A3, A4, A5, A6] {
            for i in self.stratum(l) {
                let v = self.dense(&self.dsm.algebra.basis_element(i));
                if !ker.contains(&v)? {
                    eq.fail(
                        [self.dsm.algebra.label(i), l.name()],
                        "basis vector of the stratum is not in ker φ",
                    );
                }
            }
        }
        r.push(eq);

        for l in [A1, A2, A7, A8, A9, A10] {
            let s = self.span(&[l]);
            let meet = s.intersection_dim(ker)?;
            r.push(Check::assert(
                format!("{}_meets_kernel_trivially", l.name().to_lowercase()),
                meet == 0,
                [l.name()],
                format!("dim(span({}) ∩ ker φ) = {meet}", l.name()),
            ));
        }

        r.push(self.classification_check());
        let image_strata = self.span(&[A1, A2, A7, A8, A9, A10]).dim();
        r.push(Check::assert(
            "image_dimension",
            self.kernel_image.image_dim() == image_strata,
            ["Im φ"],
            format!(
                "dim Im φ = {} but dim span(A1, A2, A7..A10) = {image_strata}",
                self.kernel_image.image_dim()
            ),
        ));
        r.push(self.rank_nullity());
        let hom = phi_is_homomorphism(&self.phi, &self.dsm);
        r.absorb("phi", hom);
        r.observe(right_b_linearity(&self.phi, &self.dsm, &self.bsm));
        self.dimension_table(&mut r);
        Ok(r)
    }

    fn rank_nullity(&self) -> Check {
        let ki = &self.kernel_image;
        Check::assert(
            "rank_nullity",
            ki.kernel_dim() + ki.image_dim() == ki.domain_dim,
            ["φ"],
            format!("{} + {} ≠ {}", ki.kernel_dim(), ki.image_dim(), ki.domain_dim),
        )
    }

    fn dimension_table(&self, r: &mut Report) {
        r.dim("domain", self.dim());
        r.dim("kernel", self.kernel_image.kernel_dim());
        r.dim("image", self.kernel_image.image_dim());
        for (k, v) in self.strata_dims() {
            r.dim(k, v);
        }
    }

    fn s_prime(&self) -> Subspace {
        use ClassLabel::*;
        self.span(&[A1, A7, A10])
    }

    fn prop23(&self) -> Result<Report> {
        let mut r = self.new_report(ClaimId::Prop23);
        r.push(self.closure("closed_under_products", &self.s_prime())?);
        r.dim("A1+A7+A10", self.s_prime().dim());
        Ok(r)
    }

    /// Per-candidate identity checks on `space`.
    fn identity_checks(&self, name: &str, y: &Element, space: &Subspace) -> Result<Vec<Check>> {
        let a = &self.dsm.algebra;
        let inside = Check::assert(
            format!("{name}.in_subalgebra"),
            space.contains(&self.dense(y))?,
            [name],
            format!("{} ∉ A1 + A7 + A10", a.format(y)),
        );
        let mut left = Check::new(format!("{name}.left_identity"));
        let mut right = Check::new(format!("{name}.right_identity"));
        for v in space.basis() {
            let z = self.element(v);
            let yz = a.mul(y, &z);
            if yz != z {
                left.fail([a.format(&z)], format!("y·z = {}", a.format(&yz)));
            }
            let zy = a.mul(&z, y);
            if zy != z {
                right.fail([a.format(&z)], format!("z·y = {}", a.format(&zy)));
            }
        }
        let sq = a.mul(y, y);
        let idem = Check::assert(
            format!("{name}.idempotent"),
            sq == *y,
            [name],
            format!("y² = {}", a.format(&sq)),
        );
        Ok(vec![inside, left, right, idem])
    }

    pub fn candidates(&self) -> Result<Vec<(&'static str, Element)>> {
        let (by_morphism, by_object) = identity_candidates(&self.ma, &self.dsm)?;
        Ok(vec![(Y_OBJECT, by_object), (Y_MORPHISM, by_morphism)])
    }

    /// The first candidate that is a two-sided identity of A1 + A7 + A10
    /// lying in it; the literal sum over all morphisms when neither is.
    pub fn selected_identity(&self) -> Result<(&'static str, Element)> {
        let space = self.s_prime();
        let cands = self.candidates()?;
        for (name, y) in &cands {
            let checks = self.identity_checks(name, y, &space)?;
            if checks[..3].iter().all(|c| c.holds) {
                return Ok((name, y.clone()));
            }
        }
        let (name, y) = cands
            .into_iter()
            .find(|(n, _)| *n == Y_MORPHISM)
            .expect("both candidates present");
        Ok((name, y))
    }

    fn prop24(&self) -> Result<Report> {
        let mut r = self.new_report(ClaimId::Prop24);
        let space = self.s_prime();
        let mut found = Vec::new();
        for (name, y) in self.candidates()? {
            let checks = self.identity_checks(name, &y, &space)?;
            if checks[..3].iter().all(|c| c.holds) {
                found.push(name);
            }
            r.note(format!("{name} = {}", self.dsm.algebra.format(&y)));
            for c in checks {
                r.observe(c);
            }
        }
        r.push(Check::assert(
            "identity_exists",
            !found.is_empty(),
            [Y_OBJECT, Y_MORPHISM],
            "neither candidate is a two-sided identity of A1 + A7 + A10 lying in it",
        ));
        if !found.is_empty() {
            r.note(format!("identity: {}", found.join(", ")));
        }
        r.dim("A1+A7+A10", space.dim());
        Ok(r)
    }

    fn annihilation(&self, name: &str, y: &Element, label: ClassLabel, y_left: bool) -> Check {
        let a = &self.dsm.algebra;
        let mut c = Check::new(name);
        for i in self.stratum(label) {
            let z = a.basis_element(i);
            let p = if y_left { a.mul(y, &z) } else { a.mul(&z, y) };
            if !p.is_zero() {
                c.fail([a.label(i)], format!("product = {}", a.format(&p)));
            }
        }
        c
    }

    fn prop25(&self) -> Result<Report> {
        use ClassLabel::*;
        let mut r = self.new_report(ClaimId::Prop25);
        let (selected, y) = self.selected_identity()?;
        r.note(format!("y = {selected}"));
        r.push(self.annihilation("left_annihilates_a2", &y, A2, true));
        r.push(self.annihilation("right_annihilates_a8", &y, A8, false));
        r.push(self.annihilation("right_annihilates_a9", &y, A9, false));
        for (name, other) in self.candidates()? {
            if name != selected {
                r.observe(self.annihilation(&format!("{name}.left_annihilates_a2"), &other, A2, true));
                r.observe(self.annihilation(&format!("{name}.right_annihilates_a8"), &other, A8, false));
                r.observe(self.annihilation(&format!("{name}.right_annihilates_a9"), &other, A9, false));
            }
        }
        for l in [A2, A8, A9] {
            r.dim(l.name(), self.stratum(l).len());
        }
        Ok(r)
    }

    fn thm26(&self) -> Result<Report> {
        use ClassLabel::*;
        let mut r = self.new_report(ClaimId::Thm26);
        let whole = self.dim();
        let d = &self.kernel_image.kernel;
        let s = self.span(&[A1, A2, A7, A8, A9, A10]);
        let sp = self.s_prime();
        let t = self.span(&[A2, A8, A9]);
        let meet = d.intersection_dim(&s)?;
        r.push(Check::assert(
            "kernel_complement",
            meet == 0 && d.dim() + s.dim() == whole,
            ["D", "S"],
            format!(
                "dim D = {}, dim S = {}, dim(D ∩ S) = {meet}, dim whole = {whole}",
                d.dim(),
                s.dim()
            ),
        ));
        let meet_t = sp.intersection_dim(&t)?;
        r.push(Check::assert(
            "s_splits",
            meet_t == 0 && sp.dim() + t.dim() == s.dim(),
            ["S'", "T"],
            format!(
                "dim S' = {}, dim T = {}, dim(S' ∩ T) = {meet_t}, dim S = {}",
                sp.dim(),
                t.dim(),
                s.dim()
            ),
        ));

        let mut ideal = Check::new("d_ideal");
        let a = &self.dsm.algebra;
        for v in d.basis() {
            let x = self.element(v);
            for i in 0..whole {
                let b = a.basis_element(i);
                for (side, p) in [("left", a.mul(&b, &x)), ("right", a.mul(&x, &b))] {
                    if !d.contains(&self.dense(&p))? {
                        ideal.fail(
                            [a.format(&x), a.label(i).to_string(), side.to_string()],
                            "product leaves D",
                        );
                    }
                }
            }
        }
        r.push(ideal);
        r.push(self.closure("s_subalgebra", &s)?);
        r.push(self.closure("s_prime_subalgebra", &sp)?);
        r.push(self.closure("t_subalgebra", &t)?);

        let (name, y) = self.selected_identity()?;
        let checks = self.identity_checks(name, &y, &sp)?;
        let ok = checks[..3].iter().all(|c| c.holds);
        r.push(Check::assert(
            "s_prime_unital",
            ok,
            [name],
            "no identity of S' found among the candidates",
        ));
        r.note(format!("S' unit candidate: {name}"));
        r.dim("D", d.dim());
        r.dim("S", s.dim());
        r.dim("S'", sp.dim());
        r.dim("T", t.dim());
        r.dim("whole", whole);
        Ok(r)
    }

    fn rem27(&self) -> Result<Report> {
        use ClassLabel::*;
        let mut r = self.new_report(ClaimId::Rem27);
        let d = &self.kernel_image.kernel;
        let s = self.span(&[A1, A2, A7, A8, A9, A10]);
        let phi_s = self.phi.image_of(s.basis())?;
        let whole = self.dim();
        r.push(Check::assert(
            "dimension_count",
            d.dim() + phi_s.dim() == whole,
            ["D", "φ(S)"],
            format!("dim D + dim φ(S) = {} + {} ≠ {whole}", d.dim(), phi_s.dim()),
        ));
        r.push(Check::assert(
            "image_of_s",
            phi_s.equals(&self.kernel_image.image)?,
            ["φ(S)", "Im φ"],
            format!(
                "dim φ(S) = {}, dim Im φ = {}",
                phi_s.dim(),
                self.kernel_image.image_dim()
            ),
        ));
        r.push(self.rank_nullity());
        r.observe(Check::assert(
            "phi_injective_on_s",
            phi_s.dim() == s.dim(),
            ["S"],
            format!("dim φ(S) = {} < dim S = {}", phi_s.dim(), s.dim()),
        ));
        r.dim("D", d.dim());
        r.dim("phi(S)", phi_s.dim());
        r.dim("whole", whole);
        Ok(r)
    }

    /// `{b # u_g # ρ_h : b ∈ B_e}` for a reference term `(e, g, h)`.
    fn reference_term(&self, (e, g, h): (usize, usize, usize)) -> Vec<Vec<Scalar>> {
        let f = self.field();
        let Some(comp) = self.decomposition.component(e) else {
            return Vec::new();
        };
        comp.basis()
            .iter()
            .map(|v| {
                let mut out = vec![f.zero(); self.dim()];
                for (k, c) in v.iter().enumerate() {
                    out[self.dsm.index3(k, g, h)] = c.clone();
                }
                out
            })
            .collect()
    }

    fn reference_span(&self, terms: &[(usize, usize, usize)]) -> Result<Subspace> {
        let mut s = Subspace::zero(self.field(), self.dim());
        for &t in terms {
            for v in self.reference_term(t) {
                s.insert(&v)?;
            }
        }
        Ok(s)
    }

    fn term_label(&self, (e, g, h): (usize, usize, usize)) -> String {
        let gr = &self.ma.groupoid;
        format!("B_{}#u_{}#rho_{}", gr.label(e), gr.label(g), gr.label(h))
    }

    /// Compares computed kernel, strata and identity with reference data
    /// shipped in the instance file.
    pub fn reference_comparison(&self, reference: &Reference) -> Result<Report> {
        let mut r = Report::new("reference_comparison").with_field(self.field());
        let ker = &self.kernel_image.kernel;
        let kernel_terms: Vec<_> = reference
            .kernel
            .iter()
            .flat_map(|k| reference.strata[k].iter().copied())
            .collect();
        let ref_kernel = self.reference_span(&kernel_terms)?;
        r.push(Check::assert(
            "kernel_equals_reference",
            ref_kernel.equals(ker)?,
            reference.kernel.iter().map(String::as_str).collect::<Vec<_>>(),
            format!(
                "dim ker φ = {}, dim of reference kernel = {}",
                ker.dim(),
                ref_kernel.dim()
            ),
        ));
        let mut terms_in = Check::new("reference_kernel_terms_in_kernel");
        for k in &reference.kernel {
            for &t in &reference.strata[k] {
                for v in self.reference_term(t) {
                    if !ker.contains(&v)? {
                        terms_in.fail(
                            [k.clone(), self.term_label(t)],
                            format!("{} ∉ ker φ", self.format_vec(&v)),
                        );
                    }
                }
            }
        }
        r.push(terms_in);
        let mut within = Check::new("kernel_within_reference");
        for v in ker.basis() {
            if !ref_kernel.contains(v)? {
                within.fail([self.format_vec(v)], "kernel vector outside the reference kernel");
            }
        }
        r.push(within);

        for (name, terms) in &reference.strata {
            let rs = self.reference_span(terms)?;
            r.dim(format!("reference_{name}"), rs.dim());
            if let Some(label) = ClassLabel::parse(name) {
                let es = self.span(&[label]);
                r.observe(Check::assert(
                    format!("{name}_matches_engine"),
                    rs.equals(&es)?,
                    [name.as_str()],
                    format!("reference dim {}, engine dim {}", rs.dim(), es.dim()),
                ));
            }
        }
        r.observe(Check::assert(
            "engine_a6_empty",
            self.stratum(ClassLabel::A6).is_empty(),
            ["A6"],
            format!("engine A6 has {} basis vectors", self.stratum(ClassLabel::A6).len()),
        ));

        if !reference.identity.is_empty() {
            let f = self.field();
            let mut y = Element::zero();
            for &(m, g, h) in &reference.identity {
                let c = self.ma.unit_image(m)?;
                for (k, s) in c.terms() {
                    y.add_term(f, self.dsm.index3(k, g, h), s);
                }
            }
            r.note(format!("reference y = {}", self.dsm.algebra.format(&y)));
            let a = &self.dsm.algebra;
            if let Some(a1) = reference.strata.get("A1") {
                let space = self.reference_span(a1)?;
                let mut id = Check::new("reference_identity_on_a1");
                for v in space.basis() {
                    let z = self.element(v);
                    if a.mul(&y, &z) != z || a.mul(&z, &y) != z {
                        id.fail(
                            [a.format(&z)],
                            format!("y·z = {}, z·y = {}", a.format(&a.mul(&y, &z)), a.format(&a.mul(&z, &y))),
                        );
                    }
                }
                r.push(id);
            }
            if let Some(a2) = reference.strata.get("A2") {
                let space = self.reference_span(a2)?;
                let mut ann = Check::new("reference_identity_annihilates_a2");
                for v in space.basis() {
                    let z = self.element(v);
                    let p = a.mul(&y, &z);
                    if !p.is_zero() {
                        ann.fail([a.format(&z)], format!("y·z = {}", a.format(&p)));
                    }
                }
                r.push(ann);
            }
        }
        r.dim("kernel", ker.dim());
        Ok(r)
    }
}
