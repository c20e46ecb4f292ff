use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::Instance;
use crate::duality::{Analysis, ClaimId, Reading};
use crate::error::Result;
use crate::exactmath::Field;
use crate::report::Report;

pub const ENGINE_VERSION: &str = concat!("wh-core ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    pub name: String,
    pub digest: String,
    pub field: Field,
}

/// The document written by `wh verify`. Built only from ordered
/// collections, so identical inputs serialize to identical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportFile {
    pub engine: String,
    pub instance: InstanceInfo,
    pub reading: Reading,
    pub conventions: Vec<String>,
    pub hypotheses_hold: bool,
    pub hypotheses: Vec<Report>,
    pub strata: BTreeMap<String, usize>,
    pub dimensions: BTreeMap<String, usize>,
    pub holds: bool,
    pub claims: Vec<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Report>,
}

pub fn conventions(reading: Reading) -> Vec<String> {
    vec![
        "composition: gh is defined iff t(g) = s(h); s(g) = g g^-1, t(g) = g^-1 g".into(),
        "target counit: eps_t(x) = eps(1_1 x) 1_2, so eps_t(u_g) = u_{s(g)} and g.1_B = s(g).1_B".into(),
        "B#KG: (a#u_m)(b#u_s) = a(m.b)#u_{ms} if (m,s) composable, else 0".into(),
        "B#KG#KG*: (a#u_m#rho_n)(b#u_s#rho_t) = sum over Delta(rho_n) = rho_p (x) rho_q of (a#u_m)(rho_p -> b#u_s) # rho_q rho_t, i.e. a(m.b)#u_{ms}#rho_t when st = n".into(),
        "phi(a#u_g#rho_h)(b#u_l) = (a#u_g)(b#u_l) if l = h, else 0; phi lands in all linear endomorphisms of B#KG".into(),
        format!("membership: {}", reading.describe()),
        "implicit l with a in B_l: (l,g) composable for some l iff component(a) = s(g); (g,l) composable for some l iff some morphism runs from t(g) to component(a)".into(),
        "strata are spans of classified basis vectors b#u_g#rho_h of B#KG#KG*; a vector matching several strata or none is Unclassified".into(),
        "identity candidates: y_object_sum = sum over objects e of e.1_B#u_e#sum_{s(n)=e} rho_n; y_morphism_sum = sum over all morphisms l of l.1_B#u_{t(l)}#sum_{s(n)=t(l)} rho_n".into(),
        "claims are marked conditional when the instance fails a hypothesis (groupoid axioms, module algebra axioms, component decomposition, total classification)".into(),
    ]
}

impl ReportFile {
    pub fn build(instance: &Instance, analysis: &Analysis, claims: &[ClaimId]) -> Result<Self> {
        let mut ids = claims.to_vec();
        ids.sort();
        ids.dedup();
        let claims = ids.iter().map(|&c| analysis.verify(c)).collect::<Result<Vec<_>>>()?;
        let reference = match &instance.reference {
            Some(r) => Some(analysis.reference_comparison(r)?),
            None => None,
        };
        let mut dimensions = BTreeMap::new();
        dimensions.insert("B".to_string(), analysis.ma.b.dim());
        dimensions.insert("G".to_string(), analysis.ma.groupoid.len());
        dimensions.insert("B#KG".to_string(), analysis.bsm.dim());
        dimensions.insert("B#KG#KG*".to_string(), analysis.dim());
        dimensions.insert("ker_phi".to_string(), analysis.kernel_image.kernel_dim());
        dimensions.insert("im_phi".to_string(), analysis.kernel_image.image_dim());
        Ok(ReportFile {
            engine: ENGINE_VERSION.to_string(),
            instance: InstanceInfo {
                name: instance.name.clone(),
                digest: instance.digest(),
                field: instance.field,
            },
            reading: analysis.reading(),
            conventions: conventions(analysis.reading()),
            hypotheses_hold: analysis.hypotheses_hold(),
            hypotheses: analysis.hypotheses(),
            strata: analysis.strata_dims(),
            dimensions,
            holds: claims.iter().all(|r| r.holds),
            claims,
            reference,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} on `{}` over {}",
            self.engine, self.instance.name, self.instance.field
        );
        let _ = writeln!(out, "digest {}", self.instance.digest);
        let _ = writeln!(out, "reading: {}", self.reading.describe());
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "hypotheses: {}",
            if self.hypotheses_hold {
                "HOLD"
            } else {
                "FAIL (claims are conditional)"
            }
        );
        for h in &self.hypotheses {
            for c in h.failed() {
                let _ = writeln!(out, "  {}.{} FAIL ({} violations)", h.subject, c.name, c.violations);
            }
        }
        let _ = writeln!(out);
        let _ = write!(out, "strata:");
        for (k, v) in &self.strata {
            let _ = write!(out, " {k}={v}");
        }
        let _ = writeln!(out);
        let _ = write!(out, "dimensions:");
        for (k, v) in &self.dimensions {
            let _ = write!(out, " {k}={v}");
        }
        let _ = writeln!(out);
        for c in &self.claims {
            let _ = writeln!(out);
            let _ = write!(out, "{c}");
        }
        if let Some(r) = &self.reference {
            let _ = writeln!(out);
            let _ = write!(out, "{r}");
        }
        out
    }
}
