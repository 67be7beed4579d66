//! Batch report over the bundled fixture table, printed as CSV.
//!
//! ```text
//! cargo run --example table_report [-- path/to/table.tsv]
//! ```

use vknot::cli::{build_report, render_report, ReportFormat};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable table"),
        None => include_str!("../data/fixtures.tsv").to_string(),
    };
    let report = build_report(&text);
    print!("{}", render_report(&report, ReportFormat::Csv));
    for e in &report.errors {
        eprintln!("line {}: {}", e.line, e.message);
    }
    eprintln!("{:?}", report.summary());
}
