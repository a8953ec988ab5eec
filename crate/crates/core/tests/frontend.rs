mod common;

use filtra::frontend::{cli, parse, print_document, Item, ParseErrorKind};

use common::*;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let status = cli::run(std::iter::once("filtra").chain(args.iter().copied()), &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &str, file: &str) -> String {
    format!("{}/tests/{dir}/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn kind(text: &str) -> ParseErrorKind {
    parse(text).expect_err("document should not parse").kind
}

const HEAD: &str = "bundle E axes 1 degree (1)\n  base x\n  coord Y weight (1)\n  chart U\n  chart V\n";

fn with_rule(rule: &str) -> String {
    format!("{HEAD}  transition U -> V {{\n    x' = x;\n    {rule}\n  }}\n")
}

#[test]
fn golden_documents_reprint_stably() {
    for (name, text) in golden_corpus() {
        let doc = parse(&text).unwrap_or_else(|e| panic!("{name}:{e}"));
        let printed = print_document(&doc);
        assert_eq!(parse(&printed).unwrap(), doc, "{name}");
    }
}

#[test]
fn printed_rules_are_canonical() {
    let gr = print_document(&golden("deg2_gr.flt"));
    assert!(gr.contains("Z' = -1/(2*x^3)*Y^2 + 1/x*Z"), "{gr}");
    let j1 = print_document(&golden("jet_scalar_j1.flt"));
    assert!(j1.contains("bundle J1E axes 2 degree (0,1)"), "{j1}");
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse(&with_rule("Y' = x*Y + ;")).unwrap_err();
    assert_eq!(e.line, 8);
    assert!(matches!(e.kind, ParseErrorKind::Syntax { .. }), "{e}");
    assert!(e.to_string().starts_with("8:"), "{e}");
}

#[test]
fn rule_errors() {
    assert_eq!(kind(&with_rule("Y' = x/Y;")), ParseErrorKind::FiberDenominator);
    assert_eq!(kind(&with_rule("Y' = Y/(x - x);")), ParseErrorKind::DivisionByZero);
    assert_eq!(kind(&with_rule("Y' = q*Y;")), ParseErrorKind::UndeclaredSymbol("q".into()));
    assert_eq!(kind(&with_rule("Y' = Y; Y' = Y;")), ParseErrorKind::DuplicateRule("Y".into()));
    assert_eq!(kind(&format!("{HEAD}  transition U -> V {{ x' = x; }}\n")), ParseErrorKind::MissingRule("Y".into()));
    let fiber_in_base = format!("{HEAD}  transition U -> V {{ x' = x + Y; Y' = Y; }}\n");
    assert_eq!(kind(&fiber_in_base), ParseErrorKind::BaseRuleDependsOnFiber("x".into()));
}

#[test]
fn document_errors() {
    let e = with_rule("Y' = Y;");
    assert_eq!(kind(&format!("{e}{e}")), ParseErrorKind::DuplicateObject("E".into()));
    assert_eq!(kind("morphism f : A -> A { }"), ParseErrorKind::UnknownBundle("A".into()));
    assert!(matches!(kind("bundle E axes 1 degree (1) base x coord Y weight (1) chart U $"), ParseErrorKind::UnexpectedChar('$')));
}

#[test]
fn comments_and_semicolon_identifiers() {
    let doc = parse("# nothing\nbundle E axes 2 degree (0,1) # trailing\n  base x\n  coord y;x weight (0,1)\n  chart U\n")
        .unwrap();
    let b = doc.bundle("E").unwrap();
    assert_eq!(b.frame.fiber_names(), vec!["y;x".to_string()]);
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", &path("fixtures", "pass.flt")]).0, 0);
    let (status, out, _) = run(&["check", &path("fixtures", "fail.flt")]);
    assert_eq!(status, 1);
    assert!(out.contains("FAIL"), "{out}");
    let (status, _, err) = run(&["check", &path("fixtures", "parse_error.flt")]);
    assert_eq!(status, 2);
    assert!(err.contains("8:"), "{err}");
    assert_eq!(run(&["check", &path("fixtures", "absent.flt")]).0, 2);
    assert_eq!(run(&["check"]).0, 2);
}

#[test]
fn functor_commands() {
    let (status, out, _) = run(&["gr", &path("golden", "deg2.flt")]);
    assert_eq!(status, 0);
    let expected = golden_bundle("deg2_gr.flt", "GrE");
    let got = parse(&out).unwrap();
    assert!(got.bundle("Gr_E").unwrap().equal_up_to_naming(&expected), "{out}");

    let (status, out, _) = run(&["jet", "--order", "2", &path("golden", "jet_scalar.flt"), "--object", "E"]);
    assert_eq!(status, 0);
    assert!(parse(&out).unwrap().bundle("J2_E").unwrap().equal_up_to_naming(&golden_bundle("jet_scalar_j2.flt", "J2E")));

    // two bundles and no --object
    assert_eq!(run(&["jet", &path("golden", "jet_scalar.flt")]).0, 2);
    assert_eq!(run(&["lin", &path("golden", "affine.flt"), "--object", "missing"]).0, 2);
}

#[test]
fn morphism_commands() {
    let (status, out, _) = run(&["gr", &path("golden", "gr_phi.flt"), "--object", "phi"]);
    assert_eq!(status, 0);
    let doc = parse(&out).unwrap();
    let names: Vec<&str> = doc.items.iter().map(Item::name).collect();
    assert_eq!(names, vec!["Gr_R2", "Gr_phi"]);
    match doc.get("Gr_phi") {
        Some(Item::Morphism(m)) => assert!(m.is_identity()),
        other => panic!("{other:?}"),
    }
    assert_eq!(run(&["dualvert", &path("golden", "gr_phi.flt"), "--object", "phi"]).0, 2);
}

#[test]
fn graded_commands() {
    let file = path("golden", "filtrations.flt");
    let (status, out, _) = run(&["rank", &file, "--object", "P"]);
    assert_eq!(status, 0);
    assert_eq!(out.trim(), "rank P: (1,1)");
    let (status, out, _) = run(&["gens", &file, "--object", "Q"]);
    assert_eq!(status, 0);
    assert!(out.contains("weight 1: z1"), "{out}");
    assert!(out.contains("weight 2:"), "{out}");
}

#[test]
fn tower_check_command() {
    let file = path("golden", "towers.flt");
    assert_eq!(run(&["tower-check", &file, "--object", "H"]).0, 0);
    let (status, out, _) = run(&["tower-check", &file, "--object", "T"]);
    assert_eq!(status, 1);
    assert!(out.contains("L2[z1', z2]"), "{out}");
    assert_eq!(run(&["tower-check", &file, "--object", "C"]).0, 1);
    assert_eq!(run(&["tower-check", &path("golden", "deg2.flt")]).0, 0);
}

#[test]
fn machine_output() {
    let (status, out, _) = run(&["check", &path("fixtures", "fail.flt"), "--format", "machine"]);
    assert_eq!(status, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "filtra-machine/1");
    assert_eq!(v["kind"], "check");
    assert_eq!(v["passed"], false);
    let findings = v["reports"][0]["findings"].as_array().unwrap();
    assert!(findings.iter().any(|f| f["passed"] == false && f["check"].is_string()));

    let (_, out, _) = run(&["gr", &path("golden", "deg2.flt"), "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "document");
    let b = &v["items"][0];
    assert_eq!(b["kind"], "bundle");
    assert_eq!(b["degree"], serde_json::json!([2]));
    assert_eq!(b["rank"], serde_json::json!([1, 1]));
    assert_eq!(b["transitions"][0]["rules"][2]["coordinate"], "Z");

    let (_, out, _) = run(&["rank", &path("golden", "filtrations.flt"), "--object", "Triv", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rank"], serde_json::json!([0, 0, 0]));
}

#[test]
fn schema_lists_every_payload_kind() {
    let text = std::fs::read_to_string(format!("{}/schema/machine-v1.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(schema["properties"]["schema"]["const"], filtra::frontend::machine::SCHEMA);
    let kinds = schema["properties"]["kind"]["enum"].as_array().unwrap();
    for (args, kind) in [
        (vec!["check", &path("fixtures", "pass.flt")[..]], "check"),
        (vec!["gr", &path("fixtures", "pass.flt")[..]], "document"),
    ] {
        let mut args = args;
        args.extend(["--format", "machine"]);
        let (_, out, _) = run(&args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], kind);
        assert!(kinds.contains(&v["kind"]));
    }
}
