//! Oriented state expansion and the arrow polynomial.
//!
//! Each classical crossing is smoothed either in the oriented way (no cusps)
//! or in the disoriented way, which joins the two incoming ends (a sink cusp)
//! and the two outgoing ends (a source cusp). Every state circle carries a
//! cyclic word of cusp sides; adjacent cusps on the same side cancel, and a
//! reduced word of length `2n` contributes the variable `K_n`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::gauss::{Diagram, GaussCode, Port, Sign};
use crate::poly::{ArrowPoly, KMonomial};

/// Default bound on the number of classical crossings accepted by the state sum.
pub const DEFAULT_CROSSING_LIMIT: usize = 24;

const PARALLEL_THRESHOLD: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrowError {
    #[error("diagram has {crossings} classical crossings, limit is {limit}")]
    TooLarge { crossings: usize, limit: usize },
    #[error("reduced cusp word has odd length {0}")]
    OddLength(usize),
}

/// Side of the traversal on which a cusp's acute angle lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

/// Sink: both arrows enter the cusp. Source: both leave.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CuspKind {
    Sink,
    Source,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub side: Side,
    /// Crossing label the cusp came from.
    pub crossing: u32,
    pub kind: CuspKind,
}

/// Cyclic sequence of cusps along one state circle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CuspWord(pub Vec<Cusp>);

impl CuspWord {
    pub fn sides(&self) -> Vec<Side> {
        self.0.iter().map(|c| c.side).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Same circle traversed the other way.
    pub fn reversed(&self) -> CuspWord {
        CuspWord(self.0.iter().rev().map(|c| Cusp { side: c.side.flip(), ..*c }).collect())
    }

    pub fn reduced(&self) -> CuspWord {
        reduce_word(self)
    }
}

/// Bit `c` set means crossing `c` (in diagram order) takes the disoriented smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SmoothingChoice(pub u64);

impl SmoothingChoice {
    pub fn all_oriented() -> Self {
        SmoothingChoice(0)
    }

    pub fn is_disoriented(self, crossing: usize) -> bool {
        self.0 >> crossing & 1 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTrace {
    /// Smoothings with coefficient `A`.
    pub alpha: u32,
    /// Smoothings with coefficient `A^-1`.
    pub beta: u32,
    pub circles: Vec<CuspWord>,
}

impl StateTrace {
    /// `<S>`: product of the circle variables of the non-trivial circles.
    pub fn state_monomial(&self) -> Result<KMonomial, ArrowError> {
        let mut pairs = Vec::new();
        for w in &self.circles {
            let m = circle_variable(&reduce_word(w))?;
            pairs.extend(m.exponents().iter().copied());
        }
        Ok(KMonomial::from_pairs(pairs))
    }
}

/// Port joined to `port` by the smoothing, and the side letter of the cusp
/// created when the tracer passes from `port` to the partner (None for no cusp).
fn smoothing_partner(sign: Sign, port: Port, disoriented: bool) -> (Port, Option<(Side, CuspKind)>) {
    if disoriented {
        match port {
            Port::SW => (Port::SE, Some((Side::R, CuspKind::Sink))),
            Port::SE => (Port::SW, Some((Side::L, CuspKind::Sink))),
            Port::NW => (Port::NE, Some((Side::L, CuspKind::Source))),
            Port::NE => (Port::NW, Some((Side::R, CuspKind::Source))),
        }
    } else {
        // over-in to under-out, under-in to over-out
        let partner = match (sign, port) {
            (Sign::Pos, Port::SW) | (Sign::Neg, Port::SW) => Port::NW,
            (Sign::Pos, Port::NW) | (Sign::Neg, Port::NW) => Port::SW,
            (_, Port::SE) => Port::NE,
            (_, Port::NE) => Port::SE,
        };
        (partner, None)
    }
}

/// Which smoothing carries the coefficient `A`.
fn is_a_smoothing(sign: Sign, disoriented: bool) -> bool {
    match sign {
        Sign::Pos => !disoriented,
        Sign::Neg => disoriented,
    }
}

/// Precomputed successor tables for circle tracing.
struct Tracer<'a> {
    diagram: &'a Diagram,
    /// For each arc, the (crossing, port) at its head and at its tail.
    head: Vec<(usize, Port)>,
    tail: Vec<(usize, Port)>,
}

impl<'a> Tracer<'a> {
    fn new(diagram: &'a Diagram) -> Self {
        let n = diagram.passage_count();
        let mut head = vec![(0, Port::SW); n];
        let mut tail = vec![(0, Port::SW); n];
        for (c, info) in diagram.crossings.iter().enumerate() {
            for port in Port::ALL {
                let end = info.port(port);
                if end.incoming {
                    head[end.arc] = (c, port);
                } else {
                    tail[end.arc] = (c, port);
                }
            }
        }
        Tracer { diagram, head, tail }
    }

    fn arc_at(&self, crossing: usize, port: Port) -> usize {
        self.diagram.crossings[crossing].port(port).arc
    }

    fn trace(&self, choice: SmoothingChoice, mut emit: impl FnMut(&[Cusp])) -> (u32, u32) {
        let d = self.diagram;
        let mut alpha = 0;
        let mut beta = 0;
        for (c, info) in d.crossings.iter().enumerate() {
            if is_a_smoothing(info.sign, choice.is_disoriented(c)) {
                alpha += 1;
            } else {
                beta += 1;
            }
        }

        let n = d.passage_count();
        let mut visited = vec![false; n];
        let mut word: Vec<Cusp> = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            word.clear();
            let mut arc = start;
            let mut forward = true;
            loop {
                visited[arc] = true;
                let (c, port) = if forward { self.head[arc] } else { self.tail[arc] };
                let info = &d.crossings[c];
                let (out_port, cusp) = smoothing_partner(info.sign, port, choice.is_disoriented(c));
                if let Some((side, kind)) = cusp {
                    word.push(Cusp { side, crossing: info.label, kind });
                }
                arc = self.arc_at(c, out_port);
                forward = !out_port.is_incoming();
                if arc == start && forward {
                    break;
                }
            }
            emit(&word);
        }
        for _ in 0..d.empty_components {
            emit(&[]);
        }
        (alpha, beta)
    }
}

/// Traces the circles of one smoothing state.
///
/// Circles are listed in order of their first arc; each is traversed starting
/// forward along that arc.
pub fn trace_state(code: &GaussCode, choice: SmoothingChoice) -> StateTrace {
    let diagram = code.diagram();
    let tracer = Tracer::new(&diagram);
    let mut circles = Vec::new();
    let (alpha, beta) = tracer.trace(choice, |w| circles.push(CuspWord(w.to_vec())));
    StateTrace { alpha, beta, circles }
}

/// Every state of the diagram, in bitmask order.
pub fn all_states(code: &GaussCode) -> Result<Vec<StateTrace>, ArrowError> {
    let n = code.crossing_count();
    check_limit(n, 16)?;
    Ok((0..1u64 << n).map(|m| trace_state(code, SmoothingChoice(m))).collect())
}

/// Cancels adjacent equal sides cyclically until none remain.
pub fn reduce_word(word: &CuspWord) -> CuspWord {
    let mut stack: Vec<Cusp> = Vec::with_capacity(word.len());
    for &c in &word.0 {
        match stack.last() {
            Some(top) if top.side == c.side => {
                stack.pop();
            }
            _ => stack.push(c),
        }
    }
    let mut lo = 0;
    let mut hi = stack.len();
    while hi - lo >= 2 && stack[lo].side == stack[hi - 1].side {
        lo += 1;
        hi -= 1;
    }
    CuspWord(stack[lo..hi].to_vec())
}

fn reduced_len(word: &[Cusp]) -> usize {
    let mut stack: Vec<Side> = Vec::with_capacity(word.len());
    for c in word {
        if stack.last() == Some(&c.side) {
            stack.pop();
        } else {
            stack.push(c.side);
        }
    }
    let mut lo = 0;
    let mut hi = stack.len();
    while hi - lo >= 2 && stack[lo] == stack[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    hi - lo
}

/// Variable of a reduced circle: `1` for no cusps, `K_n` for `2n` cusps.
pub fn circle_variable(reduced: &CuspWord) -> Result<KMonomial, ArrowError> {
    variable_for_len(reduced.len())
}

fn variable_for_len(len: usize) -> Result<KMonomial, ArrowError> {
    if len % 2 == 1 {
        return Err(ArrowError::OddLength(len));
    }
    Ok(if len == 0 { KMonomial::one() } else { KMonomial::var((len / 2) as u32) })
}

fn check_limit(crossings: usize, limit: usize) -> Result<(), ArrowError> {
    if crossings > limit {
        Err(ArrowError::TooLarge { crossings, limit })
    } else {
        Ok(())
    }
}

type StateKey = (i32, u32, KMonomial);

fn accumulate(tracer: &Tracer, range: std::ops::Range<u64>) -> Result<HashMap<StateKey, u64>, ArrowError> {
    let mut acc: HashMap<StateKey, u64> = HashMap::new();
    let mut ks: Vec<u32> = Vec::new();
    for m in range {
        ks.clear();
        let mut circles = 0u32;
        let mut odd = None;
        let (alpha, beta) = tracer.trace(SmoothingChoice(m), |w| {
            circles += 1;
            let len = reduced_len(w);
            if len % 2 == 1 {
                odd = Some(len);
            } else if len > 0 {
                ks.push((len / 2) as u32);
            }
        });
        if let Some(len) = odd {
            return Err(ArrowError::OddLength(len));
        }
        let mono = KMonomial::from_pairs(ks.iter().map(|&i| (i, 1)));
        *acc.entry((alpha as i32 - beta as i32, circles, mono)).or_default() += 1;
    }
    Ok(acc)
}

fn merge(mut a: HashMap<StateKey, u64>, b: HashMap<StateKey, u64>) -> HashMap<StateKey, u64> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// `d^k` expanded: `(-1)^k sum_i C(k, i) A^(2k - 4i)`.
fn loop_power(k: u32) -> Vec<(i32, BigInt)> {
    let mut binom = BigInt::from(1);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    (0..=k)
        .map(|i| {
            let term = (2 * k as i32 - 4 * i as i32, &binom * sign);
            binom = &binom * (k - i) / (i + 1);
            term
        })
        .collect()
}

/// Unnormalized arrow polynomial with the default crossing limit.
pub fn arrow_bracket(code: &GaussCode) -> Result<ArrowPoly, ArrowError> {
    arrow_bracket_with_limit(code, DEFAULT_CROSSING_LIMIT)
}

/// `sum_S A^(alpha - beta) d^(|S| - 1) <S>` over all `2^n` states.
pub fn arrow_bracket_with_limit(code: &GaussCode, limit: usize) -> Result<ArrowPoly, ArrowError> {
    let n = code.crossing_count();
    check_limit(n, limit.min(63))?;
    let diagram = code.diagram();
    let tracer = Tracer::new(&diagram);
    let total = 1u64 << n;

    let acc = if n >= PARALLEL_THRESHOLD {
        let chunk = 1u64 << (n - 8);
        (0..256u64)
            .into_par_iter()
            .map(|i| accumulate(&tracer, i * chunk..(i + 1) * chunk))
            .try_reduce(HashMap::new, |a, b| Ok(merge(a, b)))?
    } else {
        accumulate(&tracer, 0..total)?
    };

    let mut powers: HashMap<u32, Vec<(i32, BigInt)>> = HashMap::new();
    let mut out = ArrowPoly::zero();
    for ((a_exp, circles, mono), count) in acc {
        let dp = powers.entry(circles - 1).or_insert_with(|| loop_power(circles - 1));
        for (shift, c) in dp.iter() {
            out.add_term(c * count, a_exp + shift, mono.clone());
        }
    }
    Ok(out)
}

/// `(-A^3)^(-writhe) <D>_A`
pub fn arrow_normalized(code: &GaussCode) -> Result<ArrowPoly, ArrowError> {
    arrow_normalized_with_limit(code, DEFAULT_CROSSING_LIMIT)
}

pub fn arrow_normalized_with_limit(code: &GaussCode, limit: usize) -> Result<ArrowPoly, ArrowError> {
    let w = code.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(arrow_bracket_with_limit(code, limit)?.scale(sign, -3 * w))
}

/// Set of k-degrees of the normalized arrow polynomial.
pub fn as_set(code: &GaussCode) -> Result<BTreeSet<u32>, ArrowError> {
    Ok(arrow_normalized(code)?.k_degree_set())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> GaussCode {
        s.parse().unwrap()
    }

    fn word(s: &str) -> CuspWord {
        CuspWord(
            s.chars()
                .enumerate()
                .map(|(i, ch)| Cusp {
                    side: if ch == 'L' { Side::L } else { Side::R },
                    crossing: i as u32,
                    kind: if i % 2 == 0 { CuspKind::Sink } else { CuspKind::Source },
                })
                .collect(),
        )
    }

    fn sides(w: &CuspWord) -> String {
        w.sides().iter().map(|s| if *s == Side::L { 'L' } else { 'R' }).collect()
    }

    #[test]
    fn unknot_state() {
        let t = trace_state(&code(""), SmoothingChoice::all_oriented());
        assert_eq!(t.alpha, 0);
        assert_eq!(t.beta, 0);
        assert_eq!(t.circles, vec![CuspWord::default()]);
    }

    #[test]
    fn trefoil_seifert_state() {
        let t = trace_state(&code("O1+U2+O3+U1+O2+U3+"), SmoothingChoice::all_oriented());
        assert_eq!((t.alpha, t.beta), (3, 0));
        assert_eq!(t.circles.len(), 2);
        assert!(t.circles.iter().all(CuspWord::is_empty));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(sides(&reduce_word(&word("LLRR"))), "");
        assert_eq!(sides(&reduce_word(&word("LRLR"))), "LRLR");
        assert_eq!(sides(&reduce_word(&word("LRLL"))), "LR");
        assert_eq!(sides(&reduce_word(&word("RLLR"))), "");
        assert_eq!(sides(&reduce_word(&word(""))), "");
    }

    #[test]
    fn circle_variables() {
        assert_eq!(circle_variable(&word("")).unwrap(), KMonomial::one());
        assert_eq!(circle_variable(&word("LR")).unwrap(), KMonomial::var(1));
        assert_eq!(circle_variable(&word("LRLRLR")).unwrap(), KMonomial::var(3));
        assert_eq!(circle_variable(&word("LRL")), Err(ArrowError::OddLength(3)));
    }

    #[test]
    fn loop_power_matches_repeated_product() {
        let d = ArrowPoly::loop_value();
        for k in 0..6 {
            let mut p = ArrowPoly::zero();
            for (a, c) in loop_power(k) {
                p.add_term(c, a, KMonomial::one());
            }
            assert_eq!(p, d.pow(k));
        }
    }

    #[test]
    fn unknot_bracket_is_one() {
        assert_eq!(arrow_bracket(&code("")).unwrap(), ArrowPoly::one());
    }

    #[test]
    fn virtualized_trefoil() {
        let c = code("O1-U2+O3+U1-O2+U3+");
        let expected: ArrowPoly = "-A^-5 + K1^2*A^-5 - K1^2*A^3".parse().unwrap();
        assert_eq!(arrow_bracket(&c).unwrap(), expected);
        assert_eq!(arrow_normalized(&c).unwrap().to_string(), "A^-8 - A^-8*K1^2 + K1^2");
        assert_eq!(as_set(&c).unwrap(), BTreeSet::from([0, 2]));
    }

    #[test]
    fn classical_trefoil_has_no_cusped_summands() {
        assert_eq!(as_set(&code("O1+U2+O3+U1+O2+U3+")).unwrap(), BTreeSet::from([0]));
    }

    #[test]
    fn limit_is_enforced() {
        let c = code("O1+U1+O2+U2+O3+U3+");
        assert_eq!(
            arrow_bracket_with_limit(&c, 2),
            Err(ArrowError::TooLarge { crossings: 3, limit: 2 })
        );
    }

    #[test]
    fn parallel_path_agrees_with_sequential() {
        // 12 kinks: unknot with writhe 12, bracket (-A^3)^12
        let text: String = (1..=12).map(|i| format!("O{i}+U{i}+")).collect();
        let c = code(&text);
        assert_eq!(arrow_bracket(&c).unwrap(), ArrowPoly::a_pow(36));
        assert_eq!(arrow_normalized(&c).unwrap(), ArrowPoly::one());
    }
}
