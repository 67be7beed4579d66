//! Test-only oracles. Nothing here goes through the cusp tracer or the
//! port tables of the library; the bracket oracle works on edge labels
//! around each crossing and counts loops with union-find.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vknot::arrow::Side;
use vknot::{ArrowPoly, GaussCode, Role, Sign};

pub const FIXTURES: &str = include_str!("../../data/fixtures.tsv");

/// Laurent polynomial in `A` with small integer coefficients.
pub type Laurent = BTreeMap<i32, i64>;

pub fn fixture(name: &str) -> GaussCode {
    let (lines, errors) = vknot::cli::parse_table(FIXTURES);
    assert!(errors.is_empty(), "{errors:?}");
    lines.into_iter().find(|l| l.name == name).unwrap_or_else(|| panic!("no fixture {name}")).code
}

pub fn code(text: &str) -> GaussCode {
    text.parse().unwrap()
}

/// Seeded random codes with up to `max_crossings` crossings and one or two components.
pub fn random_codes(seed: u64, count: usize, max_crossings: usize) -> Vec<GaussCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_crossings);
            let comps = if rng.gen_bool(0.75) { 1 } else { 2 };
            vknot::moves::random_code(&mut rng, n, comps)
        })
        .collect()
}

/// The `K_n = 1` image of a polynomial, as a plain Laurent polynomial.
pub fn to_laurent(p: &ArrowPoly) -> Laurent {
    let mut out = Laurent::new();
    for (a, _, c) in p.terms() {
        *out.entry(a).or_insert(0) += c.to_i64().expect("coefficient fits");
    }
    out.retain(|_, c| *c != 0);
    out
}

fn laurent_mul(p: &Laurent, q: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (a, x) in p {
        for (b, y) in q {
            *out.entry(a + b).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Each crossing as four edge labels counterclockwise from the incoming
/// under-strand: `[a, b, c, d]`. For a positive crossing the over-strand
/// leaves through `b`; for a negative one it enters through `b`.
fn crossing_edges(code: &GaussCode) -> (Vec<[usize; 4]>, usize) {
    let mut edge_in: BTreeMap<(u32, bool), usize> = BTreeMap::new();
    let mut edge_out: BTreeMap<(u32, bool), usize> = BTreeMap::new();
    let mut edges = 0;
    for comp in code.components() {
        let m = comp.len();
        let base = edges;
        for (i, p) in comp.iter().enumerate() {
            let over = p.role == Role::Over;
            edge_out.insert((p.crossing, over), base + i);
            edge_in.insert((p.crossing, over), base + (i + m - 1) % m);
        }
        edges += m;
    }
    let crossings = code
        .signs()
        .iter()
        .map(|(&c, &s)| {
            let a = edge_in[&(c, false)];
            let cc = edge_out[&(c, false)];
            let (over_in, over_out) = (edge_in[&(c, true)], edge_out[&(c, true)]);
            match s {
                Sign::Pos => [a, over_out, cc, over_in],
                Sign::Neg => [a, over_in, cc, over_out],
            }
        })
        .collect();
    (crossings, edges)
}

fn empty_components(code: &GaussCode) -> usize {
    code.components().iter().filter(|c| c.is_empty()).count()
}

/// Loop count of every state, indexed by the bitmask of B-smoothings.
fn state_loops(code: &GaussCode) -> Vec<(u32, u32, usize)> {
    let (xs, edges) = crossing_edges(code);
    let n = xs.len();
    (0..1u64 << n)
        .map(|mask| {
            let mut uf = UnionFind::new(edges);
            for (i, &[a, b, c, d]) in xs.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    uf.union(a, b);
                    uf.union(c, d);
                } else {
                    uf.union(a, d);
                    uf.union(b, c);
                }
            }
            let b = mask.count_ones();
            (n as u32 - b, b, uf.classes() + empty_components(code))
        })
        .collect()
}

/// Unoriented Kauffman bracket `sum A^(a-b) d^(loops-1)` with `d = -A^2 - A^-2`.
pub fn kauffman_bracket(code: &GaussCode) -> Laurent {
    let d: Laurent = BTreeMap::from([(2, -1), (-2, -1)]);
    let mut out = Laurent::new();
    for (a, b, loops) in state_loops(code) {
        let mut term: Laurent = BTreeMap::from([(a as i32 - b as i32, 1)]);
        for _ in 1..loops {
            term = laurent_mul(&term, &d);
        }
        for (e, c) in term {
            *out.entry(e).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Genus of the diagram's ribbon surface, for a connected one-component code.
/// Zero exactly when the code is realizable in the plane.
pub fn knot_genus(code: &GaussCode) -> usize {
    let n = code.crossing_count();
    let states = state_loops(code);
    let all_a = states[0].2;
    let all_b = states[states.len() - 1].2;
    (n + 2 - all_a - all_b) / 2
}

/// Deletes one adjacent equal pair at `i` and `i+1` (cyclically).
fn delete_pair(w: &mut Vec<Side>, i: usize) {
    let j = (i + 1) % w.len();
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    w.remove(hi);
    w.remove(lo);
}

fn cancellable(w: &[Side]) -> Vec<usize> {
    let n = w.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n).filter(|&i| w[i] == w[(i + 1) % n]).collect()
}

pub fn reduce_leftmost(word: &[Side]) -> Vec<Side> {
    let mut w = word.to_vec();
    while let Some(&i) = cancellable(&w).first() {
        delete_pair(&mut w, i);
    }
    w
}

pub fn reduce_random<R: Rng>(word: &[Side], rng: &mut R) -> Vec<Side> {
    let mut w = word.to_vec();
    loop {
        let sites = cancellable(&w);
        let Some(&i) = sites.choose(rng) else { return w };
        delete_pair(&mut w, i);
    }
}

/// Smallest rotation, so cyclic words can be compared.
pub fn cyclic_canon(w: &[Side]) -> Vec<Side> {
    (0..w.len().max(1))
        .map(|r| w.iter().cycle().skip(r).take(w.len()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}
