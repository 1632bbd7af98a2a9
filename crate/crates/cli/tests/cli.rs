use cyclowitt::WittElement;
use cyclowitt_cli::{parse_witt, run, Outcome};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("cyclowitt").chain(args.iter().copied()))
}

fn stdout(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["mul", "phi(8)", "phi(4)"]), "2*phi(8)\n");
    assert_eq!(stdout(&["frob", "2", "phi(4)"]), "2*phi(2)\n");
    assert_eq!(
        stdout(&["lambda", "5"]),
        "1 - t*phi(5) + t^2*(phi(5) + 2*phi(1)) - t^3*phi(5) + t^4\n"
    );
    assert_eq!(stdout(&["versch", "3", "phi(2) - 1"]), "-phi(3) + phi(6)\n");
    assert_eq!(stdout(&["tm", "2", "phi(4)"]), "-2\n");
    assert_eq!(stdout(&["trace", "phi(6)"]), "1\n");
    assert_eq!(stdout(&["f0", "phi(12)"]), "4\n");
    assert_eq!(stdout(&["inner", "phi(3)", "phi(3)"]), "2\n");
    assert_eq!(stdout(&["integral", "-4 + phi(2)"]), "-4\n");
    assert_eq!(stdout(&["wittclass", "0,-1;1,0"]), "phi(4)\n");
    assert_eq!(stdout(&["charpoly", "0,-1;1,0"]), "1 + t^2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["mul", "phi(0)", "1"]).code, 2);
    assert!(cli(&["mul", "phi(0)", "1"]).stderr.contains("offset 0"));
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&[]).code, 2);
    assert_eq!(cli(&["versch", "0", "phi(2)"]).code, 2);
    assert_eq!(cli(&["spec", "--rig", "int"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
    assert_eq!(cli(&["--version"]).code, 0);
    // Eigenvalue 2 is not a root of unity.
    assert_eq!(cli(&["wittclass", "2"]).code, 1);
    assert_eq!(
        cli(&["sections", "--rows", "2", "--cols", "2", "--bound", "2"]).code,
        0
    );
}

#[test]
fn finite_rig_commands() {
    assert_eq!(
        stdout(&["spec", "--rig", "zmod:12"]),
        "spec(zmod:12): 2 prime(s)\n{0, 2, 4, 6, 8, 10}\n{0, 3, 6, 9}\n"
    );
    assert!(
        stdout(&["radical", "--rig", "zmod:12", "--ideal", "4"]).ends_with("{0, 2, 4, 6, 8, 10}\n")
    );
    for s in 0..6 {
        assert_eq!(
            cli(&["theorem1", "--rig", "zmod:6", "--s", &s.to_string()]).code,
            0
        );
    }
    assert_eq!(cli(&["theorem1", "--rig", "zmod:6", "--s", "7"]).code, 2);
}

#[test]
fn rig_table_file() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/z4.txt");
    let out = cli(&["spec", "--table", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "spec(z4): 1 prime(s)\n{0, 2}\n");
}

#[test]
fn json_is_stable_and_sorted() {
    for args in [
        &["--json", "lambda", "7"][..],
        &["--json", "ramanujan", "--n", "6", "--m-max", "6"],
        &["--json", "gamma-filtration", "--level", "8", "--depth", "2"],
        &["--json", "theorem1", "--rig", "zmod:12", "--s", "2"],
        &["--json", "zeta", "--m", "6", "--cutoff", "1000"],
        &[
            "--json", "sections", "--rows", "2", "--cols", "2", "--bound", "1",
        ],
    ] {
        let a = stdout(args);
        assert_eq!(a, stdout(args));
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
    let big = stdout(&[
        "--json",
        "mul",
        "123456789012345678901234567890*phi(2)",
        "phi(2)",
    ]);
    assert!(big.contains("123456789012345678901234567890"), "{big}");
    assert!(!big.contains("e+"));
}

fn element() -> impl Strategy<Value = WittElement> {
    prop::collection::vec((1u64..200, -10_000i64..10_000), 0..8).prop_map(|pairs| {
        let mut a = WittElement::zero();
        for (n, c) in pairs {
            a.add_term(n, BigInt::from(c));
        }
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(a in element()) {
        prop_assert_eq!(parse_witt(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn parser_never_panics(s in "[-+*0-9phi() ]{0,24}") {
        let _ = parse_witt(&s);
    }
}
