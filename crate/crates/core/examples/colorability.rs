//! Diagram-level checkerboard test and the invariant obstructions.
//!
//! ```text
//! cargo run --example colorability -- "O1+O2+U1+U2+"
//! ```

use vknot::colorability::{self, diagram_colorable, DiagramColorability};
use vknot::GaussCode;

fn main() {
    let codes: Vec<String> = match std::env::args().nth(1) {
        Some(c) => vec![c],
        None => ["", "O1+U2+O3+U1+O2+U3+", "O1+O2+U1+U2+", "O1+O2-U1+O3+U2-O4-U3+U4-", "O1-U2+U1-U3-O2+O4+O3-U4+"]
            .map(String::from)
            .to_vec(),
    };
    for text in codes {
        let code: GaussCode = text.parse().expect("Gauss code");
        match diagram_colorable(&code) {
            DiagramColorability::Colorable(w) => {
                let arcs: String = w.iter().map(|&b| if b { '1' } else { '0' }).collect();
                println!("{:?}: diagram colorable, arc bits {arcs}", code.to_string());
            }
            DiagramColorability::NotColorableDiagram => {
                println!("{:?}: this diagram has no checkerboard", code.to_string())
            }
        }
        let verdict = colorability::criteria_verdict(&code).unwrap();
        println!("  {}", verdict.to_json());
    }
}
