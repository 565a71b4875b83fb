use nilary_core::grid::{run_grid, search_counterexample, CaseStatus, GridSpec, SearchStatus, Target};
use nilary_core::registry::{list_registry, run_check, Verdict};
use nilary_core::Caps;

fn grid(rings: &[&str], groups: &[&str]) -> GridSpec {
    GridSpec {
        exprs: rings
            .iter()
            .flat_map(|r| groups.iter().map(move |g| format!("{r}[{g}]")))
            .collect(),
        ..GridSpec::default()
    }
}

#[test]
fn lemma_on_delta_over_36_instances() {
    let g = grid(
        &["Z2", "Z3", "Z4", "Z6", "Z8", "Z9"],
        &["C2", "C3", "C4", "C2 x C2", "C6", "S3"],
    );
    let r = run_grid(&["L1.8".into()], &g).unwrap();
    assert_eq!(r.reports.len(), 36);
    assert_eq!(r.summary.refuted, 0);
    assert_eq!(r.summary.undecided, 0);
    // Δ(G) nilpotent exactly for Z2, Z4, Z8 with 2-groups and Z3, Z9 with C3.
    let nilpotent: Vec<&str> = r
        .reports
        .iter()
        .filter(|r| r.hypothesis == Some(true))
        .map(|r| r.instance.as_str())
        .collect();
    assert_eq!(
        nilpotent,
        [
            "Z2[C2]", "Z2[C4]", "Z2[C2 x C2]", "Z3[C3]", "Z4[C2]", "Z4[C4]", "Z4[C2 x C2]", "Z8[C2]",
            "Z8[C4]", "Z8[C2 x C2]", "Z9[C3]"
        ]
    );
}

#[test]
fn final_theorem_instances() {
    let g = GridSpec {
        exprs: ["Z2[C2]", "Z2[C2 x C2]", "Z2[C4]", "Z3[C3]", "Z2[D4]", "Z2[Q8]"]
            .map(String::from)
            .to_vec(),
        ..GridSpec::default()
    };
    let r = run_grid(&["T-equiv".into(), "P-FGp".into()], &g).unwrap();
    assert_eq!(r.summary.confirmed, 12);
    for rep in r.reports.iter().filter(|r| r.id == "T-equiv") {
        let w = rep.witness.as_ref().unwrap();
        assert_eq!(w["nilary"], true);
        assert_eq!(w["right_primary"], true);
        assert_eq!(w["left_primary"], true);
    }
}

#[test]
fn worked_examples() {
    let caps = Caps::default();
    let r = run_check("E2.14", "Z3[C6]", &caps).unwrap();
    assert_eq!(r.verdict, Verdict::Confirmed);
    assert_eq!(r.witness.unwrap()["e"], "2+2x^3");

    let r = run_check("E-prime", "Z4[C2]", &caps).unwrap();
    assert_eq!(r.verdict, Verdict::Confirmed);
    let w = r.witness.unwrap();
    assert_eq!(w["isomorphism_verified"], true);
    assert_eq!(w["I[G]_size"], 4);

    let r = run_check("L-prime-gr", "Z3[C2]", &caps).unwrap();
    assert_eq!(r.verdict, Verdict::Confirmed);
    assert_eq!(r.hypothesis, Some(false));
}

#[test]
fn registry_lists_every_anchor() {
    let reg = list_registry();
    assert_eq!(reg.len(), 28);
    assert!(reg.iter().any(|e| e.id == "L1.8"));
}

#[test]
fn conjecture_probe_decides() {
    let g = GridSpec {
        exprs: vec!["Z3[S3]".into(), "Z2[C2]".into(), "Z6[C2]".into()],
        ..GridSpec::default()
    };
    let r = search_counterexample(Target::Conjecture1, &g).unwrap();
    assert_eq!(r.cases[0].hypothesis, Some(true));
    assert!(matches!(r.cases[0].status, CaseStatus::Confirmed | CaseStatus::Counterexample));
    assert_eq!(r.cases[2].status, CaseStatus::Vacuous);
    assert_ne!(r.status, SearchStatus::Vacuous);
}
