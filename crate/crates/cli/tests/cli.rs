use std::path::{Path, PathBuf};
use std::process::Command;

use mlat::monadic::Axiom;
use mlat_cli::doc::{LatticeDoc, SpaceDoc};
use mlat_cli::StructureDoc;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mlat")).args(args).output().expect("binary runs");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().expect("exit code"), text)
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = Command::new(env!("CARGO_BIN_EXE_mlat")).args(&all).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), v)
}

fn file(name: &str) -> String {
    data(name).to_str().unwrap().to_owned()
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", &file("chain3_simple.json")]).0, 0);
    assert_eq!(run(&["check", &file("chain2_full.json")]).0, 0);
    assert_eq!(run(&["check", &file("mkf3_example.json")]).0, 0);
    assert_eq!(run(&["check", &file("bad_nabla.json")]).0, 1);
    assert_eq!(run(&["check", &file("not_mq.json")]).0, 1);
    assert_eq!(run(&["check", &file("pentagon.json")]).0, 1);
    assert_eq!(run(&["check", &file("cycle.json")]).0, 1);
    assert_eq!(run(&["check", &file("malformed.json")]).0, 2);
    assert_eq!(run(&["check", &file("does_not_exist.json")]).0, 2);
    assert_eq!(run(&["check", &file("identity_map.json")]).0, 0);
    assert_eq!(run(&["check", &file("collapse_map.json")]).0, 1);
    assert_eq!(run(&["check", &file("simple_hom.json")]).0, 0);
}

#[test]
fn parse_errors_name_the_position() {
    let (code, text) = run(&["check", &file("malformed.json")]);
    assert_eq!(code, 2);
    assert!(text.contains("line 4"), "{text}");
}

#[test]
fn unknown_kind_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("k.json");
    std::fs::write(&p, r#"{"kind":"poset","elements":[]}"#).unwrap();
    let (code, v) = run_json(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("unknown variant"));
}

#[test]
fn monadic_check_reports_every_axiom() {
    let (code, v) = run_json(&["check", &file("chain3_simple.json")]);
    assert_eq!(code, 0);
    let axioms = v["axioms"].as_array().unwrap();
    assert_eq!(axioms.len(), 11);
    assert!(axioms.iter().all(|a| a["result"] == "pass"));
}

#[test]
fn bottom_not_fixed_fails_m1() {
    let (code, v) = run_json(&["check", &file("bad_nabla.json")]);
    assert_eq!(code, 1);
    let m1 = v["axioms"].as_array().unwrap().iter().find(|a| a["name"] == "M1").unwrap();
    assert_eq!(m1["result"], "fail");
}

#[test]
fn space_check_reports_mq() {
    let (code, v) = run_json(&["check", &file("chain2_full.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["flags"]["mq_space"], true);
    assert_eq!(v["flags"]["mk_frame"], true);
}

/// Failure witnesses printed by `check` fail again when evaluated directly.
#[test]
fn witnesses_reverify() {
    for name in ["bad_nabla.json", "pentagon.json"] {
        let (_, v) = run_json(&["check", &file(name)]);
        let StructureDoc::Lattice(ld) = StructureDoc::load(&data(name)).unwrap() else { panic!() };
        let ll = ld.build().unwrap();
        let l = &ll.lattice;
        let idx = |w: &Value| -> Vec<usize> {
            w.as_array().unwrap().iter().map(|s| l.order().index_of(s.as_str().unwrap()).unwrap()).collect()
        };
        let mut seen = 0;
        for c in v["lattice"].as_array().unwrap() {
            if c["result"] == "fail" {
                assert_eq!(c["name"], "distributive");
                let w = idx(&c["witness"]);
                let (x, y, z) = (w[0], w[1], w[2]);
                assert_ne!(l.meet(x, l.join(y, z)), l.join(l.meet(x, y), l.meet(x, z)));
                seen += 1;
            }
        }
        for c in v["axioms"].as_array().unwrap() {
            if c["result"] == "fail" {
                let ax = Axiom::ALL.iter().find(|a| a.to_string() == c["name"]).unwrap();
                let w = idx(&c["witness"]);
                assert!(!ax.holds_at(l, ll.nabla.as_ref().unwrap(), ll.delta.as_ref().unwrap(), &w));
                seen += 1;
            }
        }
        assert!(seen > 0, "{name} has no failure");
    }
}

#[test]
fn dualize_lattice_gives_two_point_chain() {
    let (code, v) = run_json(&["dualize", &file("chain3_simple.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["sigma_isomorphism"], true);
    let doc: StructureDoc = serde_json::from_value(v["document"].clone()).unwrap();
    let StructureDoc::Space(sd) = doc else { panic!("expected a space") };
    assert_eq!(sd.elements.len(), 2);
    assert_eq!(sd.leq.len(), 1);
    assert_eq!(sd.classes.len(), 1);
}

#[test]
fn dualize_space_gives_simple_three_chain() {
    let (code, v) = run_json(&["dualize", &file("chain2_full.json")]);
    assert_eq!(code, 0);
    let doc: StructureDoc = serde_json::from_value(v["document"].clone()).unwrap();
    let StructureDoc::Lattice(ld) = doc else { panic!("expected a lattice") };
    let m = ld.build().unwrap().monadic().unwrap().unwrap();
    assert_eq!(m.len(), 3);
    assert!(m.is_simple_pair());
}

#[test]
fn dualize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("x.json");
    let back = dir.path().join("l.json");
    assert_eq!(run(&["dualize", &file("chain4_simple.json"), "--out", space.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["dualize", space.to_str().unwrap(), "--out", back.to_str().unwrap()]).0, 0);
    let StructureDoc::Lattice(ld) = StructureDoc::load(&back).unwrap() else { panic!() };
    let m = ld.build().unwrap().monadic().unwrap().unwrap();
    assert_eq!(m.len(), 4);
    assert!(m.is_simple_pair());
    assert_eq!(m.lattice().join_irreducibles().count(), 3);
}

#[test]
fn dualize_rejects_invalid_input_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.json");
    let (code, _) = run(&["dualize", &file("not_mq.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!out.exists());
    let (code, _) = run(&["dualize", &file("bad_nabla.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!out.exists());
}

#[test]
fn classify_named_instances() {
    let (code, v) = run_json(&["classify", &file("chain3_simple.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"]["verdict"], "simple");
    assert_eq!(v["classification"]["congruences"], 2);

    let (_, v) = run_json(&["classify", &file("chain4_simple.json")]);
    assert_eq!(v["classification"]["verdict"], "si_not_simple");
    assert_eq!(v["classification"]["branch"]["branch"], "b'");
    assert_eq!(v["classification"]["congruences"], 3);

    let (_, v) = run_json(&["classify", &file("chain3_identity.json")]);
    assert_eq!(v["classification"]["verdict"], "neither");
    assert_eq!(v["classification"]["routes"]["agree"], true);
}

#[test]
fn classify_space_matches_its_dual() {
    let (_, a) = run_json(&["classify", &file("chain2_full.json")]);
    let (_, b) = run_json(&["classify", &file("chain3_simple.json")]);
    assert_eq!(a["classification"]["verdict"], b["classification"]["verdict"]);
}

#[test]
fn congruence_counts() {
    let (code, v) = run_json(&["congruences", &file("chain4_simple.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["saturated_sets"], 3);
    assert_eq!(v["congruences"], 3);
    assert_eq!(v["order_reversing_bijection"], true);

    let (_, v) = run_json(&["congruences", &file("chain2.json")]);
    assert_eq!(v["saturated_sets"], 2);
    assert_eq!(v["congruences"], 2);
}

#[test]
fn q_congruences_of_the_simple_quantifier() {
    let (code, v) = run_json(&["congruences", "--q", &file("chain3_quantifier.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["family"], "i-saturated");
    let sets: Vec<usize> =
        v["table"].as_array().unwrap().iter().map(|r| r["set"].as_array().unwrap().len()).collect();
    assert_eq!(sets, [0, 1, 2]);
}

#[test]
fn congruence_cap_is_a_resource_error() {
    let (code, _) = run(&["congruences", "--max-size", "3", &file("chain4_simple.json")]);
    assert_eq!(code, 2);
}

#[test]
fn raising_a_cap_warns() {
    let (code, text) = run(&["congruences", "--max-size", "40", &file("chain4_simple.json")]);
    assert_eq!(code, 0);
    assert!(text.contains("warning"));
}

#[test]
fn enumerate_spaces_two_points() {
    let (code, v) = run_json(&["enumerate", "spaces", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
    assert_eq!(v["counts"]["mq_space"], 6);
}

#[test]
fn enumerate_m_lattices() {
    let (_, v) = run_json(&["enumerate", "m-lattices", "2"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
    assert_eq!(v["verdicts"]["simple"], 2);
    assert_eq!(v["verdicts"]["neither"], 2);
    let (_, v) = run_json(&["enumerate", "m-lattices", "1"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    let (_, v) = run_json(&["enumerate", "spaces", "1"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
}

#[test]
fn enumerate_over_cap() {
    assert_eq!(run(&["enumerate", "spaces", "6"]).0, 2);
}

#[test]
fn verify_is_green_and_deterministic() {
    let (code, a) = run(&["verify", "3", "--jobs", "1"]);
    assert_eq!(code, 0, "{a}");
    assert!(a.contains("falsifications: 0"));
    let (_, b) = run(&["verify", "3", "--jobs", "3"]);
    assert_eq!(a, b);
    let (code, v) = run_json(&["verify", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["falsifications"], 0);
}

#[test]
fn injected_fault_is_caught() {
    let (code, v) = run_json(&["verify", "2", "--inject-bug"]);
    assert_eq!(code, 3);
    assert!(v["falsifications"].as_u64().unwrap() > 0);
    let congruences = v["groups"]["congruences"].as_array().unwrap();
    assert!(congruences.iter().any(|s| s["failed"].as_u64().unwrap() > 0 && !s["witnesses"].as_array().unwrap().is_empty()));
}

#[test]
fn morphism_duals() {
    let (code, v) = run_json(&["morphism", &file("simple_hom.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["dual"]["mq_function"], true);
    assert_eq!(v["dual"]["round_trip"], true);

    let (code, v) = run_json(&["morphism", &file("identity_map.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["flags"]["mq_function"], true);
    assert_eq!(v["flags"]["mk_function_pointwise"], false);
    assert_eq!(v["dual"]["m_homomorphism"], true);

    let (code, v) = run_json(&["morphism", &file("collapse_map.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["flags"]["mq_function"], false);
    assert!(v.get("dual").is_none());
}

#[test]
fn corpus_round_trips() {
    let mut n = 0;
    for e in std::fs::read_dir(data("")).unwrap() {
        let p = e.unwrap().path();
        let Ok(d) = StructureDoc::load(&p) else { continue };
        assert_eq!(StructureDoc::parse(&d.to_pretty()).unwrap(), d, "{}", p.display());
        n += 1;
    }
    assert!(n >= 10);
}

#[test]
fn generated_documents_round_trip() {
    for n in 1..=3 {
        for (_, v) in [run_json(&["enumerate", "spaces", &n.to_string()]), run_json(&["enumerate", "m-lattices", &n.to_string()])] {
            for e in v["entries"].as_array().unwrap() {
                let raw = e.get("space").or_else(|| e.get("lattice")).unwrap();
                let d: StructureDoc = serde_json::from_value(raw.clone()).unwrap();
                assert_eq!(StructureDoc::parse(&d.to_pretty()).unwrap(), d);
                match &d {
                    StructureDoc::Space(sd) => {
                        let x = sd.build().unwrap();
                        assert_eq!(SpaceDoc::from_space(&x), *sd);
                    }
                    StructureDoc::Lattice(ld) => {
                        let m = ld.build().unwrap().monadic().unwrap().unwrap();
                        assert_eq!(LatticeDoc::from_monadic(&m), *ld);
                    }
                    StructureDoc::Map(_) => unreachable!(),
                }
            }
        }
    }
}
