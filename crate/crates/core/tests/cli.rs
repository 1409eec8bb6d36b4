use alfeld::cli::main_with;

fn run(args: &[&str]) -> (u8, String) {
    let mut out = Vec::new();
    let code = main_with(std::iter::once("alfeld").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn dims_table_has_the_c1_row() {
    let (code, csv) = run(&["--csv", "dims", "--n", "3", "--r-max", "5", "--k", "0"]);
    assert_eq!(code, 0);
    assert!(csv.lines().any(|l| l == "Md,false,0,5,3,68,68,PASS"), "{csv}");
}

#[test]
fn commute_reports_fifteen_identities() {
    let (code, json) = run(&["commute", "--diagram", "two", "--r", "5", "--seed", "1", "--cases", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 15);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn reports_are_reproducible() {
    let a = run(&["exactness", "--n", "2", "--r", "3", "--seq", "ring"]);
    let b = run(&["exactness", "--n", "2", "--r", "3", "--seq", "ring"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert!(!a.1.contains("timings"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dims", "--n", "3"]).0, 2);
    assert_eq!(run(&["dofs", "--space", "Md9", "--r", "5"]).0, 2);
    assert_eq!(run(&["global", "--mesh", "cube6", "--seq", "1", "--r", "5", "--exact-rank"]).0, 2);
    assert_eq!(run(&["global", "--mesh", "nowhere.mesh", "--seq", "1", "--r", "5"]).0, 2);
    // Mc1 at r = 4 is accepted but its list overcounts.
    assert_eq!(run(&["dofs", "--space", "Mc1", "--r", "4"]).0, 1);
}

#[test]
fn potential_round_trip() {
    let dir = std::env::temp_dir().join(format!("alfeld-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("w.txt");
    let out = dir.join("rho.txt");
    std::fs::write(&input, "form n=3 k=1\nsigma=1 exp=0,1,0 coeff=1\nsigma=2 exp=1,0,0 coeff=1\n").unwrap();
    let (code, _) = run(&["potential", "--in", input.to_str().unwrap(), "--target", "Md:k0:r3", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let rho = alfeld::polyforms::parse_form(&std::fs::read_to_string(&out).unwrap()).unwrap().into_pieces(4).unwrap();
    assert!(rho.pieces.iter().all(|p| p.d() == rho.pieces[0].d()));

    std::fs::write(&input, "form n=3 k=1\nsigma=1 exp=0,1,0 coeff=1\n").unwrap();
    assert_eq!(run(&["potential", "--in", input.to_str().unwrap(), "--target", "Md:k0:r3"]).0, 1);
    std::fs::remove_dir_all(&dir).ok();
}
