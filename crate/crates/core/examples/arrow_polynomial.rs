//! Arrow polynomial of a Gauss code, with its state sum laid out.
//!
//! ```text
//! cargo run --example arrow_polynomial -- "O1-U2+O3+U1-O2+U3+"
//! ```

use vknot::arrow::{self, SmoothingChoice};
use vknot::GaussCode;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "O1-U2+O3+U1-O2+U3+".into());
    let code: GaussCode = text.parse().expect("Gauss code");

    println!("code        {code}");
    println!("writhe      {}", code.writhe());
    for mask in 0..1u64 << code.crossing_count() {
        let state = arrow::trace_state(&code, SmoothingChoice(mask));
        let words: Vec<String> = state
            .circles
            .iter()
            .map(|w| w.sides().iter().map(|s| format!("{s:?}")).collect::<String>())
            .collect();
        println!(
            "state {mask:>3}  A^{:<3} circles {:?}  <S> = {}",
            state.alpha as i32 - state.beta as i32,
            words,
            state.state_monomial().unwrap()
        );
    }
    println!("bracket     {}", arrow::arrow_bracket(&code).unwrap());
    let normalized = arrow::arrow_normalized(&code).unwrap();
    println!("normalized  {normalized}");
    println!("K_n = 1     {}", normalized.substitute_k_one());
    println!("AS          {:?}", arrow::as_set(&code).unwrap());
}
