//! Exhaustive search over one-component Gauss codes with a given number of
//! crossings for those whose normalized arrow polynomial equals a target.
//!
//! Used to transcribe table knots whose arrow polynomials are known but
//! whose codes are not. Matches are reduced modulo relabeling and rotation,
//! and restricted to diagrams without R1/R2-removable crossings.
//!
//! ```text
//! cargo run --release --example fixture_search -- 4 "A^4 + A^-4 + 1 - (A^4 + A^-4 + 2)*K1^2 + 2*K2"
//! ```

use std::collections::BTreeMap;

use vknot::colorability::{diagram_colorable, DiagramColorability};
use vknot::moves::{enumerate_sites, MoveKind};
use vknot::{arrow, parity, ArrowPoly, GaussCode, Passage, Role, Sign};

/// All perfect matchings of `0..2n`, as lists of (first, second) positions.
fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![vec![]];
    }
    let first = points[0];
    let mut out = Vec::new();
    for k in 1..points.len() {
        let rest: Vec<usize> = points[1..].iter().copied().filter(|&p| p != points[k]).collect();
        for mut m in matchings(&rest) {
            m.insert(0, (first, points[k]));
            out.push(m);
        }
    }
    out
}

/// Rotation-and-relabeling invariant key of a one-component code.
fn canonical_key(code: &GaussCode) -> String {
    let comp = &code.components()[0];
    let n = comp.len();
    (0..n.max(1))
        .map(|r| {
            let rotated: Vec<Passage> = (0..n).map(|i| comp[(i + r) % n]).collect();
            let c = GaussCode::new(vec![rotated], code.signs().clone()).unwrap();
            c.renumbered().to_string()
        })
        .min()
        .unwrap_or_default()
}

pub fn search(crossings: usize, target: &ArrowPoly) -> Vec<GaussCode> {
    let points: Vec<usize> = (0..2 * crossings).collect();
    let mut found: BTreeMap<String, GaussCode> = BTreeMap::new();
    for m in matchings(&points) {
        for orient in 0..1u32 << crossings {
            for signs in 0..1u32 << crossings {
                let mut comp = vec![Passage::new(0, Role::Over); 2 * crossings];
                let mut sign_map = BTreeMap::new();
                for (c, &(a, b)) in m.iter().enumerate() {
                    let label = c as u32 + 1;
                    let (ra, rb) = if orient >> c & 1 == 0 { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
                    comp[a] = Passage::new(label, ra);
                    comp[b] = Passage::new(label, rb);
                    sign_map.insert(label, if signs >> c & 1 == 0 { Sign::Pos } else { Sign::Neg });
                }
                let code = GaussCode::new(vec![comp], sign_map).unwrap();
                if !enumerate_sites(&code, MoveKind::R1Remove).is_empty()
                    || !enumerate_sites(&code, MoveKind::R2Remove).is_empty()
                {
                    continue;
                }
                if arrow::arrow_normalized(&code).unwrap() == *target {
                    found.entry(canonical_key(&code)).or_insert(code.renumbered());
                }
            }
        }
    }
    found.into_values().collect()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (crossings, target) = match args.as_slice() {
        [_, n, poly] => (n.parse().expect("crossing count"), poly.parse::<ArrowPoly>().expect("polynomial")),
        _ => (3, "A^-8 - A^-8*K1^2 + K1^2".parse().unwrap()),
    };
    println!("target: {target}");
    for code in search(crossings, &target) {
        let j = parity::odd_writhe(&code).unwrap();
        let colorable = matches!(diagram_colorable(&code), DiagramColorability::Colorable(_));
        println!("{code}\twrithe={} J={j} diagram_colorable={colorable}", code.writhe());
    }
}
