//! Chord parity and odd writhe of a few knots.

use vknot::parity::{self, ChordDiagram};
use vknot::GaussCode;

fn main() {
    for text in ["O1+O2+U1+U2+", "O1+U2+O3+U1+O2+U3+", "O1-U2+O3+U1-O2+U3+"] {
        let code: GaussCode = text.parse().unwrap();
        let chords = ChordDiagram::new(&code).unwrap();
        let odd: Vec<String> = code
            .signs()
            .keys()
            .map(|&c| format!("{c}:{}", if chords.is_odd(c).unwrap() { "odd" } else { "even" }))
            .collect();
        println!("{text:<22} {}  J = {}", odd.join(" "), parity::odd_writhe(&code).unwrap());
    }
}
