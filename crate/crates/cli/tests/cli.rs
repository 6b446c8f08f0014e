use std::path::Path;
use std::process::Command;

fn dw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dw")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn selftest_passes() {
    let (code, out, _) = dw(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn general_engine_and_sum_only() {
    let (code, out, _) = dw(&[
        "invariant", "--spine", "L41", "--group", "Z4", "--cocycle", "paper_omega", "--general-engine", "--sum-only",
    ]);
    assert_eq!((code, out.as_str()), (0, "2*1 + 2*t\n"));
}

#[test]
fn moves_chain_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, after_l, _) = dw(&["move", "l", "--spine", "L41", "--cell", "c2", "--pos", "0,2"]);
    assert_eq!(code, 0);
    let f = write(dir.path(), "l.json", &after_l);
    assert_eq!(dw(&["spine", "validate", &f]).0, 0);
    let (_, sites, _) = dw(&["move", "sites", "--spine", &f]);
    let edge = sites.lines().find_map(|l| l.strip_prefix("t --edge ")).unwrap().to_string();
    let (code, after_t, _) = dw(&["move", "t", "--spine", &f, "--edge", &edge]);
    assert_eq!(code, 0);
    let g = write(dir.path(), "t.json", &after_t);
    for spine in ["L41", f.as_str(), g.as_str()] {
        let (_, out, _) = dw(&["invariant", "--spine", spine, "--group", "Z4", "--cocycle", "paper_omega", "--sum-only"]);
        assert_eq!(out, "2*1 + 2*t\n", "{spine}");
        assert_eq!(dw(&["colourings", "count", "--spine", spine, "--group", "Z4"]).1, "4\n");
    }
}

#[test]
fn solved_generators_pass_the_checker() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = dw(&["cocycle", "solve", "--group", "Z4", "--coeff", "Z4"]);
    assert_eq!(code, 0);
    let mut blocks: Vec<String> = vec![];
    for line in out.lines() {
        if line.starts_with("# generator") {
            blocks.push(String::new());
        } else if let Some(b) = blocks.last_mut() {
            b.push_str(line);
            b.push('\n');
        }
    }
    assert!(!blocks.is_empty());
    for (i, b) in blocks.iter().enumerate() {
        let f = write(dir.path(), &format!("w{i}.txt"), b);
        let (code, out, _) = dw(&["cocycle", "check", "--group", "Z4", "--coeff", "Z4", "--cocycle", &f]);
        assert_eq!(code, 0, "{out}");
        let (code, _, _) = dw(&["invariant", "--spine", "L52", "--group", "Z4", "--coeff", "Z4", "--cocycle", &f]);
        assert_eq!(code, 0);
    }
}

#[test]
fn broken_cochain_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.txt", "1 1 1 -> 1\n");
    let (code, out, err) = dw(&["cocycle", "check", "--group", "Z4", "--cocycle", &f]);
    assert_eq!(code, 2);
    assert!(out.contains("respects_Q: false"));
    assert!(err.contains("condition"));
    // Not a cocycle, so no invariant.
    let (code, _, err) = dw(&["invariant", "--spine", "L41", "--group", "Z4", "--cocycle", &f]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(dw(&["move", "t", "--spine", "L41", "--edge", "e1"]).0, 3);
    assert_eq!(dw(&["colourings", "count", "--spine", "nope", "--group", "Z4"]).0, 2);
    assert_eq!(dw(&["group", "show", "Q8"]).0, 2);
    assert_eq!(dw(&["invariant", "--spine", "L41", "--group", "Z3", "--cocycle", "paper_omega"]).0, 2);
    assert_eq!(dw(&["move", "l", "--spine", "L41", "--cell", "c1", "--pos", "x"]).0, 2);
    assert_eq!(dw(&["bogus"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.json", "{not json");
    assert_eq!(dw(&["spine", "validate", &f]).0, 2);
}

#[test]
fn group_table_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let (code, table, _) = dw(&["group", "show", "Z2xZ2"]);
    assert_eq!(code, 0);
    let f = write(dir.path(), "klein.txt", &table);
    assert_eq!(dw(&["colourings", "count", "--spine", "L41", "--group", &f]).1, "4\n");
    assert_eq!(dw(&["colourings", "count", "--spine", "L41", "--group", "Z2xZ2"]).1, "4\n");
}

#[test]
fn catalog_and_h3() {
    let (_, list, _) = dw(&["spine", "catalog"]);
    assert!(list.lines().any(|l| l.starts_with("L41\t")));
    let (code, json, _) = dw(&["spine", "catalog", "S3"]);
    assert_eq!(code, 0);
    assert!(json.contains("\"name\""));
    let (_, h, _) = dw(&["cocycle", "h3", "--group", "Z4", "--coeff", "Z2"]);
    assert!(h.starts_with("H3(Z4; Z2) = "));
}

#[test]
fn system_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dw_core::FiniteGroup::cyclic(4).unwrap();
    let sys = dw_core::gsystem::system_from_cocycle(&g, &dw_core::Cochain3::example_z4()).unwrap();
    let f = write(dir.path(), "sys.json", &sys.to_json());
    let (code, out, err) = dw(&["invariant", "--spine", "L41", "--group", "Z4", "--system", &f, "--sum-only"]);
    assert_eq!((code, out.as_str()), (0, "2*1 + 2*t\n"), "{err}");
}
