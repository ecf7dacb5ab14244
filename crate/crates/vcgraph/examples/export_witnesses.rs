//! Writes the built-in witness tables as JSON documents, one file per table.
//!
//! Usage: `cargo run --example export_witnesses -- <output-dir>`
//! The repository's `data/witnesses/` directory is generated this way, and a
//! test asserts the files stay in sync with the built-ins.

use vcgraph::witness::{builtin_witnesses, export_witness};

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "data/witnesses".to_string());
    std::fs::create_dir_all(&dir).expect("create output directory");
    for w in builtin_witnesses() {
        let tag = w.graph.family_tag();
        let name = format!(
            "{}-{}.json",
            tag.family_name(),
            tag.params()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join("-")
        );
        let path = std::path::Path::new(&dir).join(name);
        let mut doc = serde_json::to_string_pretty(&export_witness(&w)).unwrap();
        doc.push('\n');
        std::fs::write(&path, doc).expect("write witness file");
        println!("wrote {}", path.display());
    }
}
