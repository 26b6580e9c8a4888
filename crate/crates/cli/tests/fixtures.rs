//! The fixture files agree with the built-in zoo and with freshly computed results.

use serde_json::{json, Value};
use stabmod_cli::{commands, load_code, CodeFile, Options};
use stabmod_core::zoo;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn fixtures_match_the_zoo() {
    for name in zoo::NAMES {
        let (file, code) = load_code(&fixture(name)).unwrap();
        let (_, built) = load_code(&format!("zoo:{name}")).unwrap();
        assert_eq!(code.sigma(), built.sigma(), "{name}");
        assert_eq!(file.digest(), CodeFile::from_code(name, &built).digest(), "{name}");
    }
}

#[test]
fn stored_expectations_are_recomputed() {
    let opts = Options { torus_max: 2, ..Options::default() };
    for name in zoo::NAMES {
        let path = fixture(name);
        let (file, _) = load_code(&path).unwrap();
        let expected = file.expected.clone().expect("fixture has expectations");

        let check = commands::check(&path, &opts).unwrap();
        assert_eq!(check.result["lagrangian"], expected["lagrangian"], "{name}");

        let charges = commands::charges(&path, &opts).unwrap();
        let got = if charges.partial.is_empty() {
            let r = &charges.result;
            json!({ "finite": r["finite"], "order": r["order"], "invariant_factors": r["invariant_factors"] })
        } else {
            Value::Null
        };
        assert_eq!(got, expected["charges"], "{name}");
    }
}

#[test]
fn digest_ignores_expectations() {
    let (mut file, _) = load_code(&fixture("toric")).unwrap();
    let before = file.digest();
    file.expected = None;
    assert_eq!(file.digest(), before);
    file.sigma[0][0] = "1".into();
    assert_ne!(file.digest(), before);
}
