//! Checkerboard colorability.
//!
//! A diagram is checkerboard colorable exactly when its underlying 4-valent
//! graph admits an alternate orientation: around every classical crossing the
//! four edge ends point in, out, in, out. With one GF(2) unknown per arc
//! (1 = reverse the arc), each crossing contributes three linear equations.
//!
//! [`criteria_verdict`] combines the diagram-level solver with three
//! obstructions that hold for every diagram of the link: a nonzero odd writhe
//! (C1), an odd k-degree in the normalized arrow polynomial (C2) and a summand
//! `A^s K_{i1}^{j1} ... K_{iv}^{jv}` with `2 i_v > sum i_t j_t` (C3).

use serde::{Deserialize, Serialize};

use crate::arrow::{self, ArrowError};
use crate::gauss::{Diagram, GaussCode, Port};
use crate::parity;
use crate::poly::{ArrowPoly, KMonomial};

/// Dense GF(2) row: coefficient bits plus right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    bits: Vec<u64>,
    rhs: bool,
}

impl Row {
    fn new(vars: usize) -> Self {
        Row { bits: vec![0; vars.div_ceil(64)], rhs: false }
    }

    fn toggle(&mut self, var: usize) {
        self.bits[var / 64] ^= 1 << (var % 64);
    }

    fn get(&self, var: usize) -> bool {
        self.bits[var / 64] >> (var % 64) & 1 == 1
    }

    fn xor_with(&mut self, other: &Row) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }

    fn lowest_var(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Linear system over GF(2) in arc-reversal unknowns.
#[derive(Clone, Debug)]
pub struct AlternationSystem {
    vars: usize,
    rows: Vec<Row>,
}

/// Arc end at a port: the arc and whether it points into the crossing under
/// the diagram orientation.
fn end_at(diagram: &Diagram, crossing: usize, port: Port) -> (usize, bool) {
    let end = diagram.crossings[crossing].port(port);
    (end.arc, end.incoming)
}

impl AlternationSystem {
    pub fn new(diagram: &Diagram) -> Self {
        let vars = diagram.arc_count();
        let mut rows = Vec::with_capacity(3 * diagram.crossing_count());
        for c in 0..diagram.crossing_count() {
            // status(SW) = status(NE), status(NW) = status(SE), status(SW) != status(SE)
            for (p, q, differ) in [(Port::SW, Port::NE, false), (Port::NW, Port::SE, false), (Port::SW, Port::SE, true)] {
                let (a, ha) = end_at(diagram, c, p);
                let (b, hb) = end_at(diagram, c, q);
                let mut row = Row::new(vars);
                row.toggle(a);
                row.toggle(b);
                row.rhs = ha ^ hb ^ differ;
                rows.push(row);
            }
        }
        AlternationSystem { vars, rows }
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn equation_count(&self) -> usize {
        self.rows.len()
    }

    /// Gaussian elimination with pivots taken at the lowest arc index.
    /// Free unknowns are set to 0.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next = 0;
        for var in 0..self.vars {
            let Some(r) = (next..rows.len()).find(|&r| rows[r].get(var)) else {
                continue;
            };
            rows.swap(next, r);
            let pivot = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next && row.get(var) {
                    row.xor_with(&pivot);
                }
            }
            pivots.push((next, var));
            next += 1;
        }
        if rows[next..].iter().any(|r| r.rhs) {
            return None;
        }
        let mut solution = vec![false; self.vars];
        for (r, var) in pivots {
            debug_assert_eq!(rows[r].lowest_var(), Some(var));
            solution[var] = rows[r].rhs;
        }
        Some(solution)
    }
}

/// Arc reversals (indexed like [`Diagram`] arcs) realizing an alternate orientation.
pub type Witness = Vec<bool>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramColorability {
    Colorable(Witness),
    NotColorableDiagram,
}

pub fn diagram_colorable(code: &GaussCode) -> DiagramColorability {
    let diagram = code.diagram();
    match AlternationSystem::new(&diagram).solve() {
        Some(w) => DiagramColorability::Colorable(w),
        None => DiagramColorability::NotColorableDiagram,
    }
}

/// True iff reversing the marked arcs makes every crossing alternate in/out
/// in the cyclic order NE, NW, SW, SE.
pub fn verify_witness(code: &GaussCode, witness: &[bool]) -> bool {
    let diagram = code.diagram();
    if witness.len() != diagram.arc_count() {
        return false;
    }
    (0..diagram.crossing_count()).all(|c| {
        let status = |port| {
            let (arc, incoming) = end_at(&diagram, c, port);
            incoming ^ witness[arc]
        };
        let cycle = [status(Port::NE), status(Port::NW), status(Port::SW), status(Port::SE)];
        (0..4).all(|i| cycle[i] != cycle[(i + 1) % 4])
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "criterion")]
pub enum Obstruction {
    /// Nonzero odd writhe.
    C1 { odd_writhe: i32 },
    /// A summand of odd k-degree.
    C2 { k_degree: u32, summand: String },
    /// A summand whose largest index `i_v` satisfies `2 i_v > k-degree`.
    C3 { max_index: u32, k_degree: u32, summand: String },
}

impl Obstruction {
    pub fn criterion(&self) -> &'static str {
        match self {
            Obstruction::C1 { .. } => "C1",
            Obstruction::C2 { .. } => "C2",
            Obstruction::C3 { .. } => "C3",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Obstruction::C1 { odd_writhe } => format!("odd writhe J = {odd_writhe}"),
            Obstruction::C2 { k_degree, summand } => format!("summand {summand} has odd k-degree {k_degree}"),
            Obstruction::C3 { max_index, k_degree, summand } => {
                format!("summand {summand}: 2*{max_index} > k-degree {k_degree}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorabilityVerdict {
    /// The given diagram is checkerboard colorable.
    Colorable { witness: Witness },
    /// No diagram of the link is checkerboard colorable.
    NotColorable { obstructions: Vec<Obstruction> },
    /// The given diagram is not colorable and no obstruction applies.
    Unknown,
}

impl ColorabilityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ColorabilityVerdict::Colorable { .. } => "Colorable",
            ColorabilityVerdict::NotColorable { .. } => "NotColorable",
            ColorabilityVerdict::Unknown => "Unknown",
        }
    }

    pub fn obstructions(&self) -> &[Obstruction] {
        match self {
            ColorabilityVerdict::NotColorable { obstructions } => obstructions,
            _ => &[],
        }
    }

    /// `{verdict, witness?, obstructions?: [{criterion, detail}]}`
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            ColorabilityVerdict::Colorable { witness } => json!({
                "verdict": self.name(),
                "witness": witness.iter().map(|&b| b as u8).collect::<Vec<_>>(),
            }),
            ColorabilityVerdict::NotColorable { obstructions } => json!({
                "verdict": self.name(),
                "obstructions": obstructions
                    .iter()
                    .map(|o| json!({ "criterion": o.criterion(), "detail": o.detail() }))
                    .collect::<Vec<_>>(),
            }),
            ColorabilityVerdict::Unknown => json!({ "verdict": self.name(), "diagram_check": "failed" }),
        }
    }
}

fn summand_text(a_exp: i32, mono: &KMonomial) -> String {
    ArrowPoly::term(1, a_exp, mono.clone()).to_string()
}

/// C2 and C3 obstructions carried by a normalized arrow polynomial.
pub fn arrow_obstructions(normalized: &ArrowPoly) -> Vec<Obstruction> {
    let mut c2 = Vec::new();
    let mut c3 = Vec::new();
    for (a_exp, mono, _) in normalized.terms() {
        let k_degree = mono.k_degree();
        if k_degree % 2 == 1 {
            c2.push(Obstruction::C2 { k_degree, summand: summand_text(a_exp, mono) });
        }
        if let Some(max_index) = mono.max_index() {
            if 2 * max_index > k_degree {
                c3.push(Obstruction::C3 { max_index, k_degree, summand: summand_text(a_exp, mono) });
            }
        }
    }
    c2.extend(c3);
    c2
}

/// Obstructions first; then the diagram-level solver; otherwise unknown.
pub fn criteria_verdict(code: &GaussCode) -> Result<ColorabilityVerdict, ArrowError> {
    let normalized = arrow::arrow_normalized(code)?;
    Ok(verdict_from_parts(code, &normalized))
}

/// As [`criteria_verdict`] with the normalized arrow polynomial already computed.
pub fn verdict_from_parts(code: &GaussCode, normalized: &ArrowPoly) -> ColorabilityVerdict {
    let mut obstructions = Vec::new();
    if let Ok(j) = parity::odd_writhe(code) {
        if j != 0 {
            obstructions.push(Obstruction::C1 { odd_writhe: j });
        }
    }
    obstructions.extend(arrow_obstructions(normalized));
    if !obstructions.is_empty() {
        return ColorabilityVerdict::NotColorable { obstructions };
    }
    match diagram_colorable(code) {
        DiagramColorability::Colorable(witness) => ColorabilityVerdict::Colorable { witness },
        DiagramColorability::NotColorableDiagram => ColorabilityVerdict::Unknown,
    }
}
