//! Weak bialgebra / weak Hopf costructure and the exhaustive axiom checkers.
//!
//! Δ is stored extensionally as a list of weighted Sweedler pairs per basis
//! vector; every Sweedler-notation identity becomes a finite sum over those
//! lists.

use std::collections::BTreeMap;

use super::algebra::{Element, FinAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{Field, Scalar};
use crate::report::{Check, Report};

/// Costructure tables attached to a [`FinAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoStructure {
    /// `delta[i]` lists `(j, k, c)` meaning `Δ(b_i) = Σ c · b_j ⊗ b_k`.
    pub delta: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vec<Scalar>,
    pub antipode: Option<Vec<Element>>,
}

/// An algebra together with its costructure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakHopf {
    pub algebra: FinAlgebra,
    pub co: CoStructure,
}

/// Element of a tensor power `A^{⊗n}`, keyed by basis-index tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn add_term(&mut self, field: Field, key: Vec<usize>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                *cur = field.add(cur, c);
                if cur.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// Pure tensor `x₁ ⊗ … ⊗ xₙ`, expanded in the basis.
    pub fn pure(field: Field, factors: &[&Element]) -> Tensor {
        let mut out = Tensor::zero();
        out.add_pure(field, &field.one(), factors);
        out
    }

    /// `self += c · (x₁ ⊗ … ⊗ xₙ)`
    pub fn add_pure(&mut self, field: Field, c: &Scalar, factors: &[&Element]) {
        fn go(field: Field, out: &mut Tensor, factors: &[&Element], key: &mut Vec<usize>, c: &Scalar) {
            match factors.split_first() {
                None => out.add_term(field, key.clone(), c),
                Some((x, rest)) => {
                    for (i, a) in x.terms() {
                        key.push(i);
                        go(field, out, rest, key, &field.mul(c, a));
                        key.pop();
                    }
                }
            }
        }
        go(field, self, factors, &mut Vec::new(), c);
    }

    /// Factorwise product `(Σ x₁⊗…)(Σ y₁⊗…)`.
    pub fn mul(&self, alg: &FinAlgebra, other: &Tensor) -> Tensor {
        let f = alg.field();
        let mut out = Tensor::zero();
        for (k1, a) in self.terms() {
            for (k2, b) in other.terms() {
                let factors: Vec<&Element> = k1.iter().zip(k2).map(|(&i, &j)| alg.product(i, j)).collect();
                if factors.iter().any(|e| e.is_zero()) {
                    continue;
                }
                out.add_pure(f, &f.mul(a, b), &factors);
            }
        }
        out
    }

    pub fn format(&self, alg: &FinAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(k, c)| {
                let t: Vec<&str> = k.iter().map(|&i| alg.label(i)).collect();
                if c.is_one() {
                    t.join("⊗")
                } else {
                    format!("{c}*{}", t.join("⊗"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl WeakHopf {
    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Δ of an arbitrary element.
    pub fn delta(&self, x: &Element) -> Tensor {
        let f = self.field();
        let mut out = Tensor::zero();
        for (i, c) in x.terms() {
            for (j, k, d) in &self.co.delta[i] {
                out.add_term(f, vec![*j, *k], &f.mul(c, d));
            }
        }
        out
    }

    pub fn counit(&self, x: &Element) -> Scalar {
        let f = self.field();
        x.terms()
            .fold(f.zero(), |acc, (i, c)| f.add(&acc, &f.mul(c, &self.co.counit[i])))
    }

    pub fn antipode(&self, x: &Element) -> Result<Element> {
        let s = self.co.antipode.as_ref().ok_or(Error::MissingAntipode)?;
        let f = self.field();
        let mut out = Element::zero();
        for (i, c) in x.terms() {
            out.add_scaled(f, c, &s[i]);
        }
        Ok(out)
    }

    /// Applies Δ to factor `pos` of every term, raising the arity by one.
    pub fn delta_at(&self, t: &Tensor, pos: usize) -> Tensor {
        let f = self.field();
        let mut out = Tensor::zero();
        for (key, c) in t.terms() {
            for (j, k, d) in &self.co.delta[key[pos]] {
                let mut nk = key[..pos].to_vec();
                nk.push(*j);
                nk.push(*k);
                nk.extend_from_slice(&key[pos + 1..]);
                out.add_term(f, nk, &f.mul(c, d));
            }
        }
        out
    }

    fn unit(&self) -> Result<&Element> {
        self.algebra.unit().ok_or(Error::MissingUnit)
    }

    fn check_dims(&self) -> Result<()> {
        let n = self.algebra.dim();
        for len in [self.co.delta.len(), self.co.counit.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        if let Some(s) = &self.co.antipode {
            if s.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
        }
        Ok(())
    }

    /// `ε_t(x) = ε(1₁ x) 1₂`
    pub fn target_counit(&self, x: &Element) -> Result<Element> {
        let f = self.field();
        let d1 = self.delta(self.unit()?);
        let mut out = Element::zero();
        for (k, c) in d1.terms() {
            let e = self.counit(&self.algebra.mul(&self.algebra.basis_element(k[0]), x));
            out.add_scaled(f, &f.mul(c, &e), &self.algebra.basis_element(k[1]));
        }
        Ok(out)
    }

    /// `ε_s(x) = 1₁ ε(x 1₂)`
    pub fn source_counit(&self, x: &Element) -> Result<Element> {
        let f = self.field();
        let d1 = self.delta(self.unit()?);
        let mut out = Element::zero();
        for (k, c) in d1.terms() {
            let e = self.counit(&self.algebra.mul(x, &self.algebra.basis_element(k[1])));
            out.add_scaled(f, &f.mul(c, &e), &self.algebra.basis_element(k[0]));
        }
        Ok(out)
    }

    /// Coassociativity and the counit law on every basis vector.
    pub fn check_coalgebra(&self) -> Result<Report> {
        self.check_dims()?;
        let alg = &self.algebra;
        let f = self.field();
        let mut report = Report::new("coalgebra").with_field(f);
        let mut coassoc = Check::new("coassociativity");
        let mut counit = Check::new("counit_law");
        for i in 0..alg.dim() {
            let d = self.delta(&alg.basis_element(i));
            let left = self.delta_at(&d, 0);
            let right = self.delta_at(&d, 1);
            if left != right {
                coassoc.fail(
                    [alg.label(i)],
                    format!("(Δ⊗id)Δ = {} but (id⊗Δ)Δ = {}", left.format(alg), right.format(alg)),
                );
            }
            let mut via_left = Element::zero();
            let mut via_right = Element::zero();
            for (k, c) in d.terms() {
                via_left.add_scaled(f, &f.mul(c, &self.co.counit[k[0]]), &alg.basis_element(k[1]));
                via_right.add_scaled(f, &f.mul(c, &self.co.counit[k[1]]), &alg.basis_element(k[0]));
            }
            let b = alg.basis_element(i);
            if via_left != b || via_right != b {
                counit.fail(
                    [alg.label(i)],
                    format!(
                        "(ε⊗id)Δ = {}, (id⊗ε)Δ = {}",
                        alg.format(&via_left),
                        alg.format(&via_right)
                    ),
                );
            }
        }
        report.push(coassoc);
        report.push(counit);
        Ok(report)
    }

    /// Weak bialgebra axioms: multiplicativity of Δ, the weak unit and weak
    /// counit axioms, plus the coalgebra laws. Exhaustive over basis tuples.
    pub fn check_weak_bialgebra(&self) -> Result<Report> {
        let unit = self.unit()?.clone();
        let alg = &self.algebra;
        let f = self.field();
        let n = alg.dim();
        let mut report = Report::new("weak_bialgebra").with_field(f);
        report.absorb("coalgebra", self.check_coalgebra()?);

        let deltas: Vec<Tensor> = (0..n).map(|i| self.delta(&alg.basis_element(i))).collect();
        let mut mult = Check::new("i_delta_multiplicative");
        for h in 0..n {
            for k in 0..n {
                let lhs = self.delta(alg.product(h, k));
                let rhs = deltas[h].mul(alg, &deltas[k]);
                if lhs != rhs {
                    mult.fail(
                        [alg.label(h), alg.label(k)],
                        format!("Δ(hk) = {} but Δ(h)Δ(k) = {}", lhs.format(alg), rhs.format(alg)),
                    );
                }
            }
        }
        report.push(mult);

        let d1 = self.delta(&unit);
        let d2 = self.delta_at(&d1, 0);
        let mut d1_then_1 = Tensor::zero();
        let mut one_then_d1 = Tensor::zero();
        for (k, c) in d1.terms() {
            let (a, b) = (alg.basis_element(k[0]), alg.basis_element(k[1]));
            d1_then_1.add_pure(f, c, &[&a, &b, &unit]);
            one_then_d1.add_pure(f, c, &[&unit, &a, &b]);
        }
        let first = d1_then_1.mul(alg, &one_then_d1);
        let second = one_then_d1.mul(alg, &d1_then_1);
        let mut weak_unit = Check::new("ii_weak_unit");
        if d2 != first {
            weak_unit.fail(
                ["1"],
                format!(
                    "Δ²(1) = {} but (Δ(1)⊗1)(1⊗Δ(1)) = {}",
                    d2.format(alg),
                    first.format(alg)
                ),
            );
        }
        if d2 != second {
            weak_unit.fail(
                ["1"],
                format!(
                    "Δ²(1) = {} but (1⊗Δ(1))(Δ(1)⊗1) = {}",
                    d2.format(alg),
                    second.format(alg)
                ),
            );
        }
        report.push(weak_unit);

        let eps = |x: &Element| self.counit(x);
        let mut weak_counit = Check::new("iii_weak_counit");
        for h in 0..n {
            for k in 0..n {
                let hk = alg.product(h, k);
                for l in 0..n {
                    let lhs = eps(&alg.mul(hk, &alg.basis_element(l)));
                    let mut mid = f.zero();
                    let mut right = f.zero();
                    for (k1, k2, c) in &self.co.delta[k] {
                        let a = eps(alg.product(h, *k1));
                        let b = eps(alg.product(*k2, l));
                        mid = f.add(&mid, &f.mul(c, &f.mul(&a, &b)));
                        let a = eps(alg.product(h, *k2));
                        let b = eps(alg.product(*k1, l));
                        right = f.add(&right, &f.mul(c, &f.mul(&a, &b)));
                    }
                    if lhs != mid || lhs != right {
                        weak_counit.fail(
                            [alg.label(h), alg.label(k), alg.label(l)],
                            format!("ε(hkl) = {lhs}, ε(hk₁)ε(k₂l) = {mid}, ε(hk₂)ε(k₁l) = {right}"),
                        );
                    }
                }
            }
        }
        report.push(weak_counit);
        report.dim("algebra", n);
        Ok(report)
    }

    /// The three antipode identities on every basis vector.
    pub fn check_antipode(&self) -> Result<Report> {
        self.check_dims()?;
        let s = self.co.antipode.as_ref().ok_or(Error::MissingAntipode)?;
        self.unit()?;
        let alg = &self.algebra;
        let f = self.field();
        let mut report = Report::new("antipode").with_field(f);
        let mut left = Check::new("i_x1_S_x2");
        let mut right = Check::new("ii_S_x1_x2");
        let mut sandwich = Check::new("iii_S_x1_x2_S_x3");
        for i in 0..alg.dim() {
            let x = alg.basis_element(i);
            let d = self.delta(&x);
            let mut l = Element::zero();
            let mut r = Element::zero();
            for (k, c) in d.terms() {
                l.add_scaled(f, c, &alg.mul(&alg.basis_element(k[0]), &s[k[1]]));
                r.add_scaled(f, c, &alg.mul(&s[k[0]], &alg.basis_element(k[1])));
            }
            let et = self.target_counit(&x)?;
            if l != et {
                left.fail(
                    [alg.label(i)],
                    format!("x₁S(x₂) = {} but ε(1₁x)1₂ = {}", alg.format(&l), alg.format(&et)),
                );
            }
            let es = self.source_counit(&x)?;
            if r != es {
                right.fail(
                    [alg.label(i)],
                    format!("S(x₁)x₂ = {} but 1₁ε(x1₂) = {}", alg.format(&r), alg.format(&es)),
                );
            }
            let d2 = self.delta_at(&d, 0);
            let mut sw = Element::zero();
            for (k, c) in d2.terms() {
                let t = alg.mul(&alg.mul(&s[k[0]], &alg.basis_element(k[1])), &s[k[2]]);
                sw.add_scaled(f, c, &t);
            }
            if sw != s[i] {
                sandwich.fail(
                    [alg.label(i)],
                    format!("S(x₁)x₂S(x₃) = {} but S(x) = {}", alg.format(&sw), alg.format(&s[i])),
                );
            }
        }
        report.push(left);
        report.push(right);
        report.push(sandwich);
        Ok(report)
    }

    /// Both checkers plus associativity and unit of the underlying algebra.
    pub fn check_all(&self) -> Result<Report> {
        let mut report = Report::new("weak_hopf").with_field(self.field());
        let mut alg = Report::new("algebra");
        alg.push(self.algebra.check_associativity());
        alg.push(self.algebra.check_unit());
        report.absorb("algebra", alg);
        report.absorb("bialgebra", self.check_weak_bialgebra()?);
        report.absorb("antipode", self.check_antipode()?);
        report.dim("algebra", self.algebra.dim());
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{builtin_i2, cyclic_group};
    use crate::walg::{dual_weak_hopf, groupoid_algebra};

    fn kg_i2() -> WeakHopf {
        groupoid_algebra(&builtin_i2(), Field::Rational)
    }

    #[test]
    fn kg_and_dual_pass_all_axioms() {
        let g = builtin_i2();
        let kg = kg_i2();
        let r = kg.check_all().unwrap();
        assert!(r.holds, "{r}");
        let d = dual_weak_hopf(&kg, &g).unwrap();
        let r = d.check_all().unwrap();
        assert!(r.holds, "{r}");
    }

    #[test]
    fn target_counit_of_kg() {
        let kg = kg_i2();
        let a = &kg.algebra;
        let ug = a.element_of("u_g").unwrap();
        assert_eq!(kg.target_counit(&ug).unwrap(), a.element_of("u_x").unwrap());
        for e in ["u_x", "u_y"] {
            let ue = a.element_of(e).unwrap();
            assert_eq!(kg.target_counit(&ue).unwrap(), ue);
        }
        let z2 = groupoid_algebra(&cyclic_group(2).unwrap(), Field::Rational);
        let ua = z2.algebra.element_of("u_a").unwrap();
        assert_eq!(z2.target_counit(&ua).unwrap(), z2.algebra.element_of("u_e").unwrap());
    }

    #[test]
    fn broken_coproduct_fails_multiplicativity() {
        let mut kg = kg_i2();
        let f = kg.field();
        let (g, gi) = (kg.algebra.index("u_g").unwrap(), kg.algebra.index("u_gi").unwrap());
        kg.co.delta[g] = vec![(g, gi, f.one())];
        let r = kg.check_weak_bialgebra().unwrap();
        assert!(!r.holds);
        assert!(r.check("i_delta_multiplicative").unwrap().has_witness(&["u_g", "u_gi"]));
    }

    #[test]
    fn identity_antipode_fails() {
        let mut kg = kg_i2();
        let f = kg.field();
        kg.co.antipode = Some((0..4).map(|i| Element::basis(f, i)).collect());
        let r = kg.check_antipode().unwrap();
        assert!(!r.holds);
        assert!(r.check("i_x1_S_x2").unwrap().has_witness(&["u_g"]));
    }

    #[test]
    fn missing_pieces_are_errors() {
        let mut kg = kg_i2();
        kg.co.antipode = None;
        assert!(matches!(kg.check_antipode(), Err(Error::MissingAntipode)));
        kg.algebra.set_unit(None);
        assert!(matches!(kg.check_weak_bialgebra(), Err(Error::MissingUnit)));
        assert!(matches!(kg.target_counit(&Element::zero()), Err(Error::MissingUnit)));
    }
}
