//! A seeded Reidemeister walk, printing each diagram and its invariants.
//!
//! ```text
//! cargo run --example move_fuzz -- 12 7
//! ```

use vknot::moves::{random_walk_with, MoveKind, WalkConfig};
use vknot::{arrow, parity, GaussCode};

fn main() {
    let mut args = std::env::args().skip(1);
    let steps = args.next().map_or(12, |s| s.parse().expect("step count"));
    let seed = args.next().map_or(7, |s| s.parse().expect("seed"));
    let start: GaussCode = "O1-U2+O3+U1-O2+U3+".parse().unwrap();
    let config = WalkConfig { kinds: MoveKind::ALL.to_vec(), max_crossings: 8 };

    for code in random_walk_with(&start, steps, seed, &config) {
        println!(
            "{:<40} w={:>2} J={} <D>_NA = {}",
            code.to_string(),
            code.writhe(),
            parity::odd_writhe(&code).unwrap(),
            arrow::arrow_normalized(&code).unwrap()
        );
    }
}
