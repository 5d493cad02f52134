//! Running scenario files from the library, as the command-line tool does.
//!
//! `cargo run --example scenario -- scenarios/planted_scan.json`

use std::path::PathBuf;

use lacunary_pn::scenario::{parse_scenario, run_parsed, run_scenario, Format, RunOptions};

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let files: Vec<PathBuf> = match std::env::args().nth(1) {
        Some(p) => vec![p.into()],
        None => ["squares_indicator.json", "alternating.json", "truncated.json"]
            .iter()
            .map(|f| dir.join(f))
            .collect(),
    };
    for f in files {
        match run_scenario(&f, &RunOptions::default()) {
            Ok(out) => println!("{}: {} (exit code {})", f.display(), out.status(), out.exit_code()),
            Err(e) => println!("{}: {e} (exit code {})", f.display(), e.exit_code()),
        }
    }

    let text = r#"{
      "space": {"dim": 1, "mu": {"form": "exponential", "params": {"rate": 2}}, "tnorm": "min"},
      "scheme": {"kind": "polynomial", "p": 2},
      "oracle": {"kind": "finite", "bound": 100000},
      "sequence": {"kind": "reciprocal", "params": {"scale": 3}},
      "task": {"check": {"mode": "theta", "L": 0, "grid": {"eps": [1, 0.1], "alpha": [0.5], "blocks": 12}}}
    }"#;
    let scenario = parse_scenario(text).expect("valid scenario");
    let opts = RunOptions {
        format: Some(Format::Csv),
        ..Default::default()
    };
    let out = run_parsed(&scenario, &opts).expect("runs");
    print!("{}", out.rendered.lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("\n...");

    let broken = text.replace("\"min\"", "\"max\"");
    if let Err(e) = parse_scenario(&broken) {
        println!("{e}");
    }
}
