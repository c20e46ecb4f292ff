//! The JSON instance format, the built-in instance library and the report
//! file written by `wh verify`.

pub mod library;
mod report_file;

pub use report_file::{ReportFile, ENGINE_VERSION};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::action::{ModuleAction, ModuleAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::Field;
use crate::groupoid::{Groupoid, Mor, MorphismSpec};
use crate::walg::{CoStructure, Element, FinAlgebra, WeakHopf};

/// An element written as `{basis label: coefficient}`, coefficients as
/// strings such as `"3/4"` or `"2"`.
pub type ElementSpec = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    /// `(a, b, ab)` for every composable pair.
    pub composition: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub basis: Vec<String>,
    pub unit: ElementSpec,
    /// `(b_i, b_j, b_i b_j)`; omitted pairs multiply to zero.
    pub mul: Vec<(String, String, ElementSpec)>,
}

/// Subspaces of B#KG#KG* written as `(object e, morphism g, morphism h)`,
/// standing for `B_e # u_g # ρ_h` with `B_e` the computed component of `e`,
/// and an element written as `(m, g, h)` terms standing for `m·1_B # u_g # ρ_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSpec {
    #[serde(default)]
    pub strata: BTreeMap<String, Vec<(String, String, String)>>,
    /// Names of the strata whose sum is expected to be ker φ.
    #[serde(default)]
    pub kernel: Vec<String>,
    /// Expected identity element of the subalgebra spanned by A1.
    #[serde(default)]
    pub identity: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    pub field: Field,
    pub groupoid: GroupoidSpec,
    pub algebra: AlgebraSpec,
    /// `(morphism, basis label, morphism · basis vector)`; every pair once.
    pub action: Vec<(String, String, ElementSpec)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceSpec>,
}

/// Resolved reference data: strata as lists of `(e, g, h)` indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reference {
    pub strata: BTreeMap<String, Vec<(Mor, Mor, Mor)>>,
    pub kernel: Vec<String>,
    pub identity: Vec<(Mor, Mor, Mor)>,
}

/// A parsed and cross-referenced instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub field: Field,
    pub groupoid: Groupoid,
    pub algebra: FinAlgebra,
    pub action: ModuleAction,
    pub reference: Option<Reference>,
    file: InstanceFile,
}

fn parse_element(field: Field, b: &FinAlgebra, spec: &ElementSpec) -> Result<Element> {
    let mut e = Element::zero();
    for (label, c) in spec {
        e.add_term(field, b.index(label)?, &field.parse(c)?);
    }
    Ok(e)
}

fn write_element(b: &FinAlgebra, e: &Element) -> ElementSpec {
    e.terms()
        .map(|(i, c)| (b.label(i).to_string(), c.to_string()))
        .collect()
}

fn resolve_triples(g: &Groupoid, terms: &[(String, String, String)]) -> Result<Vec<(Mor, Mor, Mor)>> {
    terms
        .iter()
        .map(|(a, b, c)| Ok((g.id(a)?, g.id(b)?, g.id(c)?)))
        .collect()
}

impl Instance {
    pub fn from_file(file: InstanceFile) -> Result<Self> {
        let field = file.field.check()?;
        let groupoid = Groupoid::new(
            &file.groupoid.objects,
            &file.groupoid.morphisms,
            &file.groupoid.composition,
        )?;
        let spec = &file.algebra;
        let probe = FinAlgebra::new(
            field,
            spec.basis.clone(),
            vec![Element::zero(); spec.basis.len().pow(2)],
            None,
        )?;
        let n = probe.dim();
        let mut table: Vec<Option<Element>> = vec![None; n * n];
        for (a, b, prod) in &spec.mul {
            let (i, j) = (probe.index(a)?, probe.index(b)?);
            if table[i * n + j].is_some() {
                return Err(Error::Duplicate {
                    kind: "product",
                    label: format!("({a}, {b})"),
                });
            }
            table[i * n + j] = Some(parse_element(field, &probe, prod)?);
        }
        let unit = parse_element(field, &probe, &spec.unit)?;
        let table = table.into_iter().map(Option::unwrap_or_default).collect();
        let algebra = FinAlgebra::new(field, spec.basis.clone(), table, Some(unit))?;
        let triples = file
            .action
            .iter()
            .map(|(m, l, e)| Ok((m.clone(), l.clone(), parse_element(field, &algebra, e)?)))
            .collect::<Result<Vec<_>>>()?;
        let action = ModuleAction::from_triples(&groupoid, &algebra, triples)?;
        let reference = match &file.reference {
            None => None,
            Some(r) => {
                let mut strata = BTreeMap::new();
                for (k, terms) in &r.strata {
                    strata.insert(k.clone(), resolve_triples(&groupoid, terms)?);
                }
                for k in &r.kernel {
                    if !strata.contains_key(k) {
                        return Err(Error::UnknownLabel {
                            kind: "reference stratum",
                            label: k.clone(),
                        });
                    }
                }
                Some(Reference {
                    strata,
                    kernel: r.kernel.clone(),
                    identity: resolve_triples(&groupoid, &r.identity)?,
                })
            }
        };
        Ok(Instance {
            name: file.name.clone(),
            field,
            groupoid,
            algebra,
            action,
            reference,
            file,
        })
    }

    /// Builds the instance file for already constructed data.
    pub fn from_parts(
        name: &str,
        groupoid: Groupoid,
        algebra: FinAlgebra,
        action: ModuleAction,
        reference: Option<ReferenceSpec>,
    ) -> Result<Self> {
        let unit = algebra.unit().ok_or(Error::MissingUnit)?;
        let n = algebra.dim();
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = algebra.product(i, j);
                if !p.is_zero() {
                    mul.push((
                        algebra.label(i).to_string(),
                        algebra.label(j).to_string(),
                        write_element(&algebra, p),
                    ));
                }
            }
        }
        let mut triples = Vec::new();
        for m in groupoid.ids() {
            for i in 0..n {
                triples.push((
                    groupoid.label(m).to_string(),
                    algebra.label(i).to_string(),
                    write_element(&algebra, action.on_basis(m, i)),
                ));
            }
        }
        let file = InstanceFile {
            name: name.to_string(),
            field: algebra.field(),
            groupoid: GroupoidSpec {
                objects: groupoid.object_labels(),
                morphisms: groupoid.specs(),
                composition: groupoid.composition_triples(),
            },
            algebra: AlgebraSpec {
                basis: algebra.basis().to_vec(),
                unit: write_element(&algebra, unit),
                mul,
            },
            action: triples,
            reference,
        };
        Instance::from_file(file)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        Instance::from_file(serde_json::from_str(text)?)
    }

    pub fn file(&self) -> &InstanceFile {
        &self.file
    }

    /// Pretty-printed JSON with a trailing newline, as written by `wh builtin`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.file).expect("instance files serialize");
        s.push('\n');
        s
    }

    /// SHA-256 of the compact JSON of the instance. Identical in-memory
    /// instances have identical digests.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(&self.file).expect("instance files serialize");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn module_algebra(&self) -> Result<ModuleAlgebra> {
        ModuleAlgebra::new(self.groupoid.clone(), self.algebra.clone(), self.action.clone())
    }
}

/// `(b_j, b_k, c)`: the term `c b_j ⊗ b_k` of a coproduct.
pub type CoproductTerm = (String, String, String);

/// A weak Hopf algebra given by explicit tables, for `wh hopf-check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakHopfFile {
    pub name: String,
    pub field: Field,
    pub basis: Vec<String>,
    pub unit: ElementSpec,
    /// `(b_i, b_j, b_i b_j)`; omitted pairs multiply to zero.
    pub mul: Vec<(String, String, ElementSpec)>,
    /// `(b_i, [(b_j, b_k, c), ...])` meaning `Δ(b_i) = Σ c b_j ⊗ b_k`.
    pub delta: Vec<(String, Vec<CoproductTerm>)>,
    /// `ε(b_i)`; omitted basis vectors have counit zero.
    pub counit: ElementSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(String, ElementSpec)>>,
}

impl WeakHopfFile {
    pub fn to_weak_hopf(&self) -> Result<WeakHopf> {
        let field = self.field.check()?;
        let n = self.basis.len();
        let probe = FinAlgebra::new(field, self.basis.clone(), vec![Element::zero(); n * n], None)?;
        let mut table = vec![Element::zero(); n * n];
        for (a, b, p) in &self.mul {
            table[probe.index(a)? * n + probe.index(b)?] = parse_element(field, &probe, p)?;
        }
        let unit = parse_element(field, &probe, &self.unit)?;
        let algebra = FinAlgebra::new(field, self.basis.clone(), table, Some(unit))?;
        let mut delta = vec![Vec::new(); n];
        for (x, terms) in &self.delta {
            let i = algebra.index(x)?;
            for (a, b, c) in terms {
                delta[i].push((algebra.index(a)?, algebra.index(b)?, field.parse(c)?));
            }
        }
        let mut counit = vec![field.zero(); n];
        for (x, c) in &self.counit {
            counit[algebra.index(x)?] = field.parse(c)?;
        }
        let antipode = match &self.antipode {
            None => None,
            Some(list) => {
                let mut s = vec![None; n];
                for (x, e) in list {
                    s[algebra.index(x)?] = Some(parse_element(field, &algebra, e)?);
                }
                Some(s.into_iter().map(Option::unwrap_or_default).collect())
            }
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

    /// The tables of an existing weak Hopf algebra.
    pub fn from_weak_hopf(name: &str, h: &WeakHopf) -> Result<Self> {
        let a = &h.algebra;
        let n = a.dim();
        let unit = a.unit().ok_or(Error::MissingUnit)?;
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = a.product(i, j);
                if !p.is_zero() {
                    mul.push((a.label(i).to_string(), a.label(j).to_string(), write_element(a, p)));
                }
            }
        }
        let delta = (0..n)
            .map(|i| {
                let terms = h.co.delta[i]
                    .iter()
                    .map(|(j, k, c)| (a.label(*j).to_string(), a.label(*k).to_string(), c.to_string()))
                    .collect();
                (a.label(i).to_string(), terms)
            })
            .collect();
        let counit = (0..n)
            .filter(|&i| !h.co.counit[i].is_zero())
            .map(|i| (a.label(i).to_string(), h.co.counit[i].to_string()))
            .collect();
        let antipode = h.co.antipode.as_ref().map(|s| {
            (0..n)
                .map(|i| (a.label(i).to_string(), write_element(a, &s[i])))
                .collect()
        });
        Ok(WeakHopfFile {
            name: name.to_string(),
            field: a.field(),
            basis: a.basis().to_vec(),
            unit: write_element(a, unit),
            mul,
            delta,
            counit,
            antipode,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip_through_json() {
        for name in library::BUILTINS {
            let inst = library::builtin(name).unwrap();
            let again = Instance::parse_json(&inst.to_json()).unwrap();
            assert_eq!(inst.digest(), again.digest(), "{name}");
            assert_eq!(inst.algebra.table(), again.algebra.table());
            assert_eq!(inst.action, again.action);
        }
    }

    #[test]
    fn malformed_json_is_an_error() {
        assert!(matches!(Instance::parse_json("{ not json"), Err(Error::Json(_))));
    }

    #[test]
    fn unknown_references_are_errors() {
        let inst = library::builtin("z2-trivial").unwrap();
        let mut file = inst.file().clone();
        file.action[0].0 = "nope".into();
        assert!(matches!(
            Instance::from_file(file),
            Err(Error::UnknownLabel { kind: "morphism", .. })
        ));
    }

    #[test]
    fn weak_hopf_file_round_trip() {
        let g = crate::groupoid::builtin_i2();
        let kg = crate::walg::groupoid_algebra(&g, Field::Rational);
        let file = WeakHopfFile::from_weak_hopf("KG(I2)", &kg).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: WeakHopfFile = serde_json::from_str(&text).unwrap();
        let h = back.to_weak_hopf().unwrap();
        assert_eq!(h, kg);
        assert!(h.check_all().unwrap().holds);
    }

    #[test]
    fn digest_depends_on_content() {
        let a = library::builtin("ex2.8").unwrap();
        let b = library::builtin("ex2.8-gf2").unwrap();
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
    }
}
