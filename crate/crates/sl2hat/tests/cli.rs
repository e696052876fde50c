use sl2hat::cli::{run, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE};

fn sl2hat(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sl2hat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn dims_table_formats() {
    let (code, out, _) = sl2hat(&["dims", "--k0", "1", "--k1", "0", "--depth", "3", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k0,k1,d,w,dim_M,rank_M1,dim_L,count_conditions,match"));
    assert!(lines.all(|l| l.ends_with(",true")));
    let (code, out, _) = sl2hat(&["dims", "--k0", "0", "--k1", "1", "--depth", "2", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(rows.as_array().is_some_and(|r| !r.is_empty()));
}

#[test]
fn verify_prints_json_lines() {
    let (code, out, err) = sl2hat(&["verify", "--suite", "leading-terms", "--max-level", "1"]);
    assert_eq!(code, EXIT_PASS, "{err}");
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
    assert!(err.contains("passed"));
    let (code, out, _) =
        sl2hat(&["verify", "--suite", "relations", "--k0", "1", "--k1", "0", "--depth", "1", "--failures-only"]);
    assert_eq!((code, out.as_str()), (EXIT_PASS, ""));
}

#[test]
fn qseries_by_formula_id() {
    let (code, out, _) = sl2hat(&["qseries", "--formula", "11.1.14", "--n", "2", "--truncate", "6"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("1 + q + q^2 + 2*q^3"), "{out}");
    let (code, out, _) = sl2hat(&["qseries", "--formula", "P", "--s0", "1", "--s1", "1", "--truncate", "5"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("1 - 2*q + 2*q^4"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sl2hat(&["qseries", "--formula", "11.1.11", "--k0", "1", "--k1", "1"]).0, EXIT_USAGE);
    assert_eq!(sl2hat(&["qseries", "--formula", "11.1.99", "--n", "1"]).0, EXIT_USAGE);
    assert_eq!(sl2hat(&["verify", "--suite", "nonsense"]).0, EXIT_USAGE);
    assert_eq!(sl2hat(&["dims", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(sl2hat(&["embeddings", "--pi", "q(-1)", "--k", "1"]).0, EXIT_USAGE);
    assert_eq!(sl2hat(&["--help"]).0, EXIT_PASS);
    assert_ne!(EXIT_MISMATCH, EXIT_USAGE);
}

#[test]
fn enumerate_and_leading_term() {
    let (code, out, _) = sl2hat(&["enumerate", "--degree", "-2", "--negative", "--max-length", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 9);
    let (code, out, _) = sl2hat(&["leading-term", "--k0", "1", "--k1", "0", "--i", "-1", "--n", "-2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("y(-1)h(-1)"), "{out}");
}

#[test]
fn embeddings_report() {
    let (code, out, _) = sl2hat(&["embeddings", "--pi", "y(-2)^2 x(-2)^2 y(-1)", "--k", "2"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pair_classes"][0]["families"], serde_json::json!([5, 6]));
}
