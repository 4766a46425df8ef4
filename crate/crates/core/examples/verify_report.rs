//! Runs the verification suites from a TOML config and prints the JSON report.

use superflag::suites::{self, Config};

const CONFIG: &str = r#"
max_size = 2
suites = ["osp_defining", "bwb"]
osp_defining = [[1, 1]]
bwb = [[2, 1]]
"#;

fn main() -> superflag::Result<()> {
    let report = suites::run_all(&Config::from_toml(CONFIG)?)?;
    println!("{report}\n");
    println!(
        "{}",
        serde_json::to_string_pretty(&report.to_json()).unwrap()
    );
    Ok(())
}
