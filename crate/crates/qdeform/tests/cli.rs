use qdeform::run_with_env;

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, None)
}

fn run_env(args: &[&str], tol: Option<&str>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_env(args.iter().copied(), tol, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn triangle_text_pyramid() {
    let (code, out, _) = run(&["triangle", "--q", "1.5", "--rows", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "1 1.875 1.968 1.875 1");
}

#[test]
fn triangle_json_is_exact_at_q0() {
    let (code, out, _) = run(&["triangle", "--q", "0", "--rows", "3", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""mode":"exact""#));
}

#[test]
fn eval_prints_value() {
    let (code, out, _) = run(&["eval", "qnum(10)", "--q", "0", "--exact"]);
    assert_eq!((code, out.as_str()), (0, "1023\n"));
}

#[test]
fn parse_error_points_at_column() {
    let (code, _, err) = run(&["eval", "qln(2", "--q", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 6"), "{err}");
}

#[test]
fn numbers_csv() {
    let (code, out, _) = run(&["numbers", "--q", "0", "--from", "-2", "--to", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x,x_q\n-2,-0.75\n-1,-0.5\n0,0\n1,1\n2,3\n");
}

#[test]
fn classify_limits() {
    assert_eq!(run(&["classify", "--q", "1.5"]).1, "asymptotic limit=2\n");
    assert_eq!(run(&["classify", "--q", "2"]).1, "fixed limit=1\n");
}

#[test]
fn check_refutes_k_pair() {
    let (code, out, _) = run(&["check", "--family", "k", "--param", "1", "--samples", "50"]);
    assert_eq!(code, 0);
    let refuted = out.lines().find(|l| l.contains("refuted-as-written")).unwrap();
    assert!(refuted.contains(r#""holds":false"#));
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(run(&["triangle", "--rows", "0", "--q", "0"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run_env(&["check", "--family", "q"], Some("nope")).0, 2);
}
