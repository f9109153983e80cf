use std::io::Write as _;
use std::process::{Command, Stdio};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_vknots"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

const VT: &str = "O1+O2+U1+U2+";

#[test]
fn parse_echoes_canonical_gauss_codes() {
    let (code, out, _) = run(&["parse", "U1+U2+O1+O2+"]);
    assert_eq!((code, out.as_str()), (0, "O1+O2+U1+U2+\n"));
    let (code, out, _) = run(&["parse", "X-(1,2,2,1)"]);
    assert_eq!((code, out.as_str()), (0, "O1-U1-\n"));
}

#[test]
fn parse_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vknots"))
        .args(["parse", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"O1+U1+\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, b"O1+U1+\n");
}

#[test]
fn invariants_json_is_frozen_for_the_virtual_trefoil() {
    let (code, out, _) = run(&["invariants", VT]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"writhe\":2,\"oddWrithe\":2,\"normal\":false,\"lkN\":2,\"f\":[[-4,1],[-6,1],[-10,-1]]}\n"
    );
}

#[test]
fn invariants_omit_knot_fields_for_links() {
    let (code, out, _) = run(&["invariants", "O1+O2+|U1+U2+"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"writhe\":2,\"normal\":true,\"f\":[[-2,-1],[-10,-1]]}\n");
}

#[test]
fn invariants_accept_explicit_cut_systems() {
    let (code, out, _) = run(&["invariants", VT, "--cuts", "[[0,1,1],[0,3,1]]"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"lkN\":2"), "{out}");
    let (code, _, err) = run(&["invariants", VT, "--cuts", "[[0,0,1],[0,1,1]]"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn cover_json_is_frozen_for_the_virtual_trefoil() {
    let (code, out, _) = run(&["cover", VT]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        concat!(
            "{\"cover\":\"O1+U2+O3+U4+|U1+O2+U3+O4+\",\"normal\":true,",
            "\"provenance\":{\"1\":{\"layer\":\"base\",\"source\":1},\"2\":{\"layer\":\"base\",\"source\":2},",
            "\"3\":{\"layer\":\"star\",\"source\":1},\"4\":{\"layer\":\"star\",\"source\":2}},",
            "\"runs\":[{\"circle\":0,\"index\":0,\"layer\":\"base\",\"coverCircle\":1},",
            "{\"circle\":0,\"index\":0,\"layer\":\"star\",\"coverCircle\":0},",
            "{\"circle\":0,\"index\":1,\"layer\":\"base\",\"coverCircle\":0},",
            "{\"circle\":0,\"index\":1,\"layer\":\"star\",\"coverCircle\":1}]}\n"
        )
    );
}

#[test]
fn check_cut_distinguishes_valid_from_invalid() {
    let (code, out, _) = run(&["check-cut", VT, "--cuts", "[[0,1,1],[0,3,1]]"]);
    assert_eq!((code, out.as_str()), (0, "{\"valid\":true,\"total\":2}\n"));
    let (code, out, _) = run(&["check-cut", VT, "--cuts", "[[0,0,1],[0,1,1]]"]);
    assert_eq!((code, out.as_str()), (2, "{\"valid\":false,\"total\":2}\n"));
}

#[test]
fn cut_path_reports_moves_or_exits_3() {
    let (code, out, _) = run(&[
        "cut-path", VT, "--from", "[[0,1,1],[0,3,1]]", "--to", "[[0,0,1],[0,2,1]]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"found\":true,\"path\":[{\"kind\":\"I_insert\",\"gap\":[0,0]},{\"kind\":\"I_insert\",\"gap\":[0,2]},{\"kind\":\"III_delete\",\"chord\":1}]}\n"
    );
    let (code, out, _) = run(&[
        "cut-path", VT, "--from", "[[0,1,1],[0,3,1]]", "--to", "[[0,0,1],[0,2,1]]",
        "--depth", "1",
    ]);
    assert_eq!((code, out.as_str()), (3, "{\"found\":false}\n"));
}

#[test]
fn walk_output_is_frozen_and_deterministic() {
    let (code, out, _) = run(&["walk", "O1+U1+", "--steps", "4", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        concat!(
            "{\"result\":\"O1+U1+O2+O3+U3+U2+\",\"trace\":{\"seed\":5,\"steps\":[",
            "{\"move\":\"r1_insert\",\"circle\":0,\"gap\":1,\"sign\":\"+\",\"dir\":\"tail_first\",\"chord\":2},",
            "{\"move\":\"r2_insert\",\"gap1\":[0,3],\"gap2\":[0,1],\"variant\":\"parallel\",\"sign\":\"-\",\"chords\":[3,4]},",
            "{\"move\":\"r2_remove\",\"chords\":[3,4]},",
            "{\"move\":\"r1_insert\",\"circle\":0,\"gap\":0,\"sign\":\"+\",\"dir\":\"tail_first\",\"chord\":3}]}}\n"
        )
    );
    let again = run(&["walk", "O1+U1+", "--steps", "4", "--seed", "5"]);
    assert_eq!(again.1, out);
}

#[test]
fn verify_passes_and_repeats_byte_for_byte() {
    let (code, out, err) = run(&["verify", "cor-even", "--trials", "5", "--seed", "3"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "{\"suite\":\"cor-even\",\"trials\":5,\"failures\":[]}\n");
    assert!(err.contains("cor-even: 5 trials"), "{err}");
    let again = run(&["verify", "cor-even", "--trials", "5", "--seed", "3"]);
    assert_eq!(again.1, out);
}

#[test]
fn verify_rejects_unknown_suites_as_usage() {
    let (code, _, err) = run(&["verify", "nonsense"]);
    assert_eq!(code, 64);
    assert!(err.contains("thm-lkN-equals-odd-writhe"), "{err}");
}

#[test]
fn ingest_writes_a_frozen_csv_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("batch.csv");
    std::fs::write(&path, "O1+O2+U1+U2+\nvt,O1+O2+U1+U2+\ntref,O1+U2+O3+U1+O2+U3+\n").unwrap();
    let (code, out, _) = run(&["ingest", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "name,oddWrithe,lkN,f,normal\n\
         row1,2,2,A^-4 + A^-6 - A^-10,false\n\
         vt,2,2,A^-4 + A^-6 - A^-10,false\n\
         tref,0,0,A^-4 + A^-12 - A^-16,true\n"
    );
}

#[test]
fn file_arguments_round_trip_and_missing_files_exit_66() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("knot.txt");
    std::fs::write(&path, "O1+O2+U1+U2+\n").unwrap();
    let arg = format!("@{}", path.display());
    let (code, out, _) = run(&["parse", &arg]);
    assert_eq!((code, out.as_str()), (0, "O1+O2+U1+U2+\n"));
    assert_eq!(run(&["parse", "@/no/such/file"]).0, 66);
    assert_eq!(run(&["ingest", "/no/such/file.csv"]).0, 66);
    assert_eq!(run(&["invariants", VT, "--cuts", "/no/such/cuts.json"]).0, 66);
}

#[test]
fn malformed_content_exits_2() {
    assert_eq!(run(&["parse", "O1*"]).0, 2);
    assert_eq!(run(&["parse", "X-(1,2,2)"]).0, 2);
    assert_eq!(run(&["invariants", VT, "--cuts", "[[0,1]]"]).0, 2);
}

#[test]
fn state_limit_exits_69() {
    let code: String = (1..=21).map(|i| format!("O{i}+U{i}+")).collect();
    let (status, _, err) = run(&["invariants", &code]);
    assert_eq!(status, 69, "{err}");
    assert!(err.contains("21"), "{err}");
    assert_eq!(run(&["invariants", &code, "--state-limit", "21"]).0, 0);
}

#[test]
fn usage_errors_exit_64_and_help_exits_0() {
    assert_eq!(run(&[]).0, 64);
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["invariants", VT, "--state-limit", "many"]).0, 64);
}
