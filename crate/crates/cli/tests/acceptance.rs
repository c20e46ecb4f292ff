//! Acceptance run: one PASS/FAIL line per criterion. Run with
//! `cargo test -p wh-cli --test acceptance -- --nocapture` to see the lines.
//!
//! Criterion 4 fails on `i2-swap` (y does not annihilate A2 from the left)
//! and criterion 8 fails on the worked example, whose action is not a module
//! algebra. The test records those outcomes instead of hiding them, and fails
//! if any other criterion fails or if either of these starts passing.

use std::process::Command;
use std::time::{Duration, Instant};

use wh_core::action::{derive_dfap_action, skew_groupoid_ring};
use wh_core::duality::{Analysis, ClaimId, ClassLabel, Reading};
use wh_core::exactmath::Field;
use wh_core::instance::{library, Instance, ReportFile};
use wh_core::walg::{dual_weak_hopf, groupoid_algebra};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn analysis(name: &str) -> (Instance, Analysis) {
    let inst = library::builtin(name).unwrap();
    let an = Analysis::new(inst.module_algebra().unwrap(), Reading::Source).unwrap();
    (inst, an)
}

fn failed_checks(r: &wh_core::report::Report) -> String {
    r.failed()
        .map(|c| format!("{}.{}", r.subject, c.name))
        .collect::<Vec<_>>()
        .join(", ")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for (name, g) in library::library_groupoids().unwrap() {
        assert!(g.len() <= 12);
        for field in [Field::Rational, Field::Prime { p: 2 }] {
            let kg = groupoid_algebra(&g, field);
            let dual = dual_weak_hopf(&kg, &g).unwrap();
            for (which, h) in [("KG", &kg), ("KG*", &dual)] {
                count += 1;
                let r = h.check_all().unwrap();
                if !r.holds {
                    failures.push(format!("{which}({name}) over {field}: {}", failed_checks(&r)));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(10);
    Outcome::new(
        pass,
        format!(
            "{count} weak Hopf algebras checked in {elapsed:.2?} (limit 10s); {}",
            failures.join("; ")
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, n) in [("z2-trivial", 2usize), ("z3-trivial", 3)] {
        let (_, an) = analysis(name);
        let rank = an.phi.flatten().rank();
        let ker = an.kernel_image.kernel_dim();
        let ok = ker == 0 && rank == n * n && an.kernel_image.image_dim() == n * n;
        pass &= ok;
        parts.push(format!("{name}: ker={ker} rank={rank} n^2={}", n * n));
    }
    Outcome::new(pass, parts.join("; "))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (_, an) = analysis("i2-swap");
    let r = an.verify(ClaimId::Thm22).unwrap();
    let elapsed = start.elapsed();
    let names = [
        "kernel_equals_a3_to_a6",
        "a1_meets_kernel_trivially",
        "a2_meets_kernel_trivially",
        "a7_meets_kernel_trivially",
        "a8_meets_kernel_trivially",
        "a9_meets_kernel_trivially",
        "a10_meets_kernel_trivially",
    ];
    let ok = names.iter().all(|n| r.check(n).is_some_and(|c| c.holds));
    Outcome::new(
        ok && elapsed < Duration::from_secs(5),
        format!(
            "dim ker = {}, dim span(A3..A6) = {}, {elapsed:.2?} (limit 5s) {}",
            an.kernel_image.kernel_dim(),
            an.span(&[ClassLabel::A3, ClassLabel::A4, ClassLabel::A5, ClassLabel::A6])
                .dim(),
            failed_checks(&r)
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut used = Vec::new();
    for name in library::BUILTINS {
        let (_, an) = analysis(name);
        if !an.classification_check().holds {
            continue;
        }
        used.push(name);
        for claim in [ClaimId::Prop23, ClaimId::Prop24, ClaimId::Prop25] {
            let r = an.verify(claim).unwrap();
            if !r.holds {
                failures.push(format!("{name}: {}", failed_checks(&r)));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "instances with total classification: {}; {}",
            used.join(", "),
            failures.join("; ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut complement_on = Vec::new();
    for name in library::BUILTINS {
        let (_, an) = analysis(name);
        let rem = an.verify(ClaimId::Rem27).unwrap();
        if !rem.check("rank_nullity").is_some_and(|c| c.holds) {
            failures.push(format!("{name}: rank_nullity"));
        }
        if an.hypotheses_hold() {
            complement_on.push(name);
            let thm = an.verify(ClaimId::Thm26).unwrap();
            if !thm.check("kernel_complement").is_some_and(|c| c.holds) {
                failures.push(format!("{name}: kernel_complement"));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "rank-nullity on all {} instances; ker phi + span(A1,A2,A7..A10) direct and whole on {} (the others leave vectors unclassified); {}",
            library::BUILTINS.len(),
            complement_on.join(", "),
            failures.join("; ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["ex2.8", "ex2.8-gf2"] {
        let (inst, an) = analysis(name);
        let rf = ReportFile::build(&inst, &an, &ClaimId::ALL).unwrap();
        let complete = rf.claims.len() == ClaimId::ALL.len() && rf.reference.is_some() && an.dim() == 48;
        let diagnosed = rf.hypotheses_hold || rf.hypotheses.iter().any(|h| h.failed().next().is_some());
        let reference = rf.reference.as_ref().unwrap();
        let compared = reference.check("kernel_equals_reference").is_some();
        pass &= complete && diagnosed && compared;
        let violated: Vec<String> = rf
            .hypotheses
            .iter()
            .flat_map(|h| h.failed().map(move |c| format!("{}.{}", h.subject, c.name)))
            .collect();
        parts.push(format!(
            "{name}: domain {}, hypotheses {}, reference kernel {} [{}]",
            an.dim(),
            if rf.hypotheses_hold { "hold" } else { "violated" },
            if reference.holds { "matches" } else { "differs" },
            violated.join(", ")
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(10);
    Outcome::new(pass, format!("{}; {elapsed:.2?} (limit 10s)", parts.join("; ")))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for name in ["i2-swap", "z2-trivial", "z3-trivial", "z2-swap"] {
        let (_, an) = analysis(name);
        let r = an.verify(ClaimId::Thm29).unwrap();
        for check in ["d1_is_kernel", "direct_sum", "dimension_count", "psi_b0_equals_a1"] {
            if !r.check(check).is_some_and(|c| c.holds) {
                failures.push(format!("{name}: {check}"));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("i2-swap, z2-trivial, z3-trivial, z2-swap; {}", failures.join("; ")),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut skew_skipped = Vec::new();
    for name in library::BUILTINS {
        let (_, an) = analysis(name);
        if !an.bsm.algebra.check_associativity().holds {
            failures.push(format!("{name}: B#KG"));
        }
        if !an.dsm.algebra.check_associativity().holds {
            failures.push(format!("{name}: B#KG#KG*"));
        }
        match derive_dfap_action(&an.ma, &an.decomposition) {
            Ok((dfap, _)) => {
                let skew = skew_groupoid_ring(&an.ma, &dfap).unwrap();
                if !skew.algebra.check_associativity().holds {
                    failures.push(format!("{name}: skew groupoid ring"));
                }
            }
            Err(_) => skew_skipped.push(name),
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "all instances; skew ring undefined (inhomogeneous B) for {}; {}",
            skew_skipped.join(", "),
            failures.join("; ")
        ),
    )
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let wh = env!("CARGO_BIN_EXE_wh");
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["i2-swap", "ex2.8"] {
        let input = dir.path().join(format!("{name}.json"));
        let status = Command::new(wh)
            .args(["builtin", name, "--out"])
            .arg(&input)
            .status()
            .unwrap();
        assert!(status.success());
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("{name}.{run}.report.json"));
            Command::new(wh)
                .arg("verify")
                .arg(&input)
                .arg("--json")
                .arg(&out)
                .env("WH_COLOR", "0")
                .output()
                .unwrap();
            outputs.push(std::fs::read(&out).unwrap());
        }
        let same = outputs[0] == outputs[1];
        pass &= same;
        parts.push(format!("{name}: {} bytes, identical={same}", outputs[0].len()));
    }
    Outcome::new(pass, parts.join("; "))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (
            1,
            "weak Hopf axioms of KG and KG* on the library groupoids",
            criterion_1,
        ),
        (2, "classical duality for Z/2 and Z/3", criterion_2),
        (3, "kernel of phi on i2-swap", criterion_3),
        (
            4,
            "subalgebra, identity and annihilation on totally classified instances",
            criterion_4,
        ),
        (5, "kernel complement and rank-nullity", criterion_5),
        (6, "worked example over Q and GF(2)", criterion_6),
        (7, "skew groupoid ring sequence", criterion_7),
        (8, "associativity of the constructed algebras", criterion_8),
        (9, "deterministic verify --json", criterion_9),
    ];
    // Criteria whose failure is a property of the mathematics, not of the engine.
    let known_failures = [4, 8];
    let mut unexpected = Vec::new();
    for (n, title, run) in criteria {
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n}: {verdict} - {title} - {}",
            o.detail.trim_end_matches("; ")
        );
        if o.pass == known_failures.contains(&n) {
            unexpected.push(n);
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with unexpected outcome: {unexpected:?}"
    );
}
