//! Loads a relation spec from JSON and runs the oracle-backed verification
//! the `verify` subcommand uses.

use linrel::cli::{commands, RelationSpecFile};
use linrel::ToleranceConfig;

const SPEC: &str = r#"{
  "mode": "graph_basis", "n1": 2, "n2": 1, "label": "two-to-one",
  "matrices": {"basis": [[[1.0, 0.0], [0.0, 0.0]],
                         [[0.0, 0.0], [1.0, 0.0]],
                         [[2.0, 0.0], [0.0, 1.0]]]}
}"#;

fn main() {
    let cfg = ToleranceConfig::default();
    let spec = RelationSpecFile::from_json_str(SPEC).expect("valid spec");
    let report = commands::cmd_verify(&spec, &cfg, 1).expect("verification runs");
    println!("{}", serde_json::to_string_pretty(&report.json).unwrap());
    println!("failures: {:?}", report.failures);
}
