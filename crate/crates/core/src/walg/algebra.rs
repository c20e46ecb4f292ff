use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar};
use crate::report::Check;

/// A finitely supported linear combination of basis vectors, keyed by basis
/// index in the owning algebra. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(field: Field, i: usize) -> Self {
        let mut e = Element::zero();
        e.terms.insert(i, field.one());
        e
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (i, c) in terms {
            e.add_term(field, i, &c);
        }
        e
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        Element {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: Field, dim: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); dim];
        for (&i, c) in &self.terms {
            v[i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.terms.get(&i)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: Field, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(cur) => {
                *cur = field.add(cur, c);
                if cur.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c.clone());
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, field: Field, c: &Scalar, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.terms {
            self.add_term(field, i, &field.mul(c, x));
        }
    }

    pub fn plus(&self, field: Field, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(field, &field.one(), other);
        out
    }

    pub fn minus(&self, field: Field, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(field, &field.from_int(-1), other);
        out
    }

    pub fn scaled(&self, field: Field, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(field, c, self);
        out
    }

    /// Reindexes every basis vector through `f`, accumulating collisions.
    pub fn map_basis(&self, field: Field, mut f: impl FnMut(usize) -> usize) -> Element {
        let mut out = Element::zero();
        for (&i, c) in &self.terms {
            out.add_term(field, f(i), c);
        }
        out
    }
}

/// A finite-dimensional algebra given by labelled basis and structure
/// constants. Associativity and unit laws are checked, never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    field: Field,
    basis: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<Element>,
    unit: Option<Element>,
}

impl FinAlgebra {
    /// `table[i * n + j]` is the product of basis vectors `i` and `j`.
    pub fn new(field: Field, basis: Vec<String>, table: Vec<Element>, unit: Option<Element>) -> Result<Self> {
        let n = basis.len();
        if table.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: table.len(),
            });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.clone(), i).is_some() {
                return Err(Error::Duplicate {
                    kind: "basis label",
                    label: b.clone(),
                });
            }
        }
        for e in table.iter().chain(unit.iter()) {
            if let Some(bad) = e.support().find(|&i| i >= n) {
                return Err(Error::UnknownLabel {
                    kind: "basis index",
                    label: bad.to_string(),
                });
            }
        }
        Ok(FinAlgebra {
            field,
            basis,
            index,
            table,
            unit,
        })
    }

    /// Builds the table by evaluating `product` on every pair of basis indices.
    pub fn from_rule(
        field: Field,
        basis: Vec<String>,
        unit: Option<Element>,
        mut product: impl FnMut(usize, usize) -> Element,
    ) -> Result<Self> {
        let n = basis.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(product(i, j));
            }
        }
        FinAlgebra::new(field, basis, table, unit)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel {
            kind: "basis label",
            label: label.to_string(),
        })
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn set_unit(&mut self, unit: Option<Element>) {
        self.unit = unit;
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, i)
    }

    /// Product of basis vectors `i` and `j`.
    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.dim() + j]
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    /// Bilinear extension of the structure constants.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let f = self.field;
        let mut out = Element::zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                out.add_scaled(f, &f.mul(x, y), self.product(i, j));
            }
        }
        out
    }

    /// Like [`FinAlgebra::mul`], but rejects elements with foreign basis indices.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.mul(a, b))
    }

    pub fn owns(&self, a: &Element) -> Result<()> {
        match a.support().find(|&i| i >= self.dim()) {
            Some(i) => Err(Error::UnknownLabel {
                kind: "basis index",
                label: i.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Element from `(label, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, i64)]) -> Result<Element> {
        let mut e = Element::zero();
        for &(l, c) in terms {
            e.add_term(self.field, self.index(l)?, &self.field.from_int(c));
        }
        Ok(e)
    }

    pub fn element_of(&self, label: &str) -> Result<Element> {
        Ok(self.basis_element(self.index(label)?))
    }

    pub fn format(&self, e: &Element) -> String {
        format_element(&self.basis, e)
    }

    pub fn to_dense(&self, e: &Element) -> Vec<Scalar> {
        e.to_dense(self.field, self.dim())
    }

    /// `(xy)z = x(yz)` on every basis triple.
    pub fn check_associativity(&self) -> Check {
        let mut check = Check::new("associativity");
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let left = self.mul(ij, &self.basis_element(k));
                    let right = self.mul(&self.basis_element(i), self.product(j, k));
                    if left != right {
                        check.fail(
                            [self.label(i), self.label(j), self.label(k)],
                            format!("(xy)z = {} but x(yz) = {}", self.format(&left), self.format(&right)),
                        );
                    }
                }
            }
        }
        check
    }

    /// The stored unit is a two-sided identity on every basis vector.
    pub fn check_unit(&self) -> Check {
        let mut check = Check::new("unit");
        let Some(u) = &self.unit else {
            check.fail(["1"], "no unit recorded");
            return check;
        };
        for i in 0..self.dim() {
            let b = self.basis_element(i);
            if self.mul(u, &b) != b || self.mul(&b, u) != b {
                check.fail([self.label(i)], "1·b = b·1 = b fails");
            }
        }
        check
    }

    /// Solves for a two-sided identity. It is unique when it exists.
    pub fn find_unit(&self) -> Option<Element> {
        let f = self.field;
        let n = self.dim();
        if n == 0 {
            return Some(Element::zero());
        }
        // unknown u = Σ u_i b_i; equations (u b_j)_k = δ_jk and (b_j u)_k = δ_jk
        let mut rows: BTreeMap<Vec<Scalar>, Scalar> = BTreeMap::new();
        let mut consistent = true;
        for j in 0..n {
            for left in [true, false] {
                let mut eqs: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
                for i in 0..n {
                    let p = if left { self.product(i, j) } else { self.product(j, i) };
                    for (k, c) in p.terms() {
                        eqs.entry(k).or_insert_with(|| vec![f.zero(); n])[i] = c.clone();
                    }
                }
                if !eqs.contains_key(&j) {
                    consistent = false;
                }
                for (k, row) in eqs {
                    let rhs = if k == j { f.one() } else { f.zero() };
                    match rows.get(&row) {
                        Some(prev) if *prev != rhs => consistent = false,
                        _ => {
                            rows.insert(row, rhs);
                        }
                    }
                }
            }
        }
        if !consistent {
            return None;
        }
        let (lhs, rhs): (Vec<Vec<Scalar>>, Vec<Scalar>) = rows.into_iter().unzip();
        let m = Matrix::from_rows(f, lhs, n).expect("rows have length n");
        let x = m.solve(&rhs).expect("rhs matches rows")?;
        let u = Element::from_dense(&x);
        (0..n)
            .all(|i| {
                let b = self.basis_element(i);
                self.mul(&u, &b) == b && self.mul(&b, &u) == b
            })
            .then_some(u)
    }
}

pub fn format_element(labels: &[String], e: &Element) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (i, c)) in e.terms().enumerate() {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&labels[i]);
    }
    out
}
