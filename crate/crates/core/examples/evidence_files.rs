//! Reading an evidence file, writing it back, and driving the command-line
//! front end in-process.
//!
//! Run with `cargo run --example evidence_files`.

use evidential::cli::run_command;
use evidential::evidence::EvidenceDocument;

fn main() -> evidential::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sources.json");
    let doc = EvidenceDocument::parse(&std::fs::read_to_string(path).expect("bundled data file"))?;
    for e in &doc.entries {
        println!("[{}]\n{}", e.name, e.mass()?);
    }
    assert_eq!(EvidenceDocument::parse(&doc.to_json())?, doc);

    for args in [
        vec!["combine", path, "--decimal", "3"],
        vec!["condition", path, "--entry", "sensor", "--geometric", "1,2"],
        vec!["discount", path, "--eps", "1/10", "--entry", "witness"],
    ] {
        let out = run_command(&args);
        println!(
            "$ evidential {}\n{}(exit {})\n",
            args.join(" "),
            out.stdout,
            out.code
        );
    }
    Ok(())
}
