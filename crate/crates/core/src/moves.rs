//! Classical Reidemeister moves as rewrites of Gauss codes.
//!
//! Virtual moves and the detour move leave Gauss codes unchanged, so only the
//! three classical moves are modelled. Since any two arcs of a virtual diagram
//! can be brought next to each other by detour moves, an R1 kink may be added
//! at any gap and an R2 bigon between any two gaps.
//!
//! An R3 triangle is formed by a top strand `T`, a middle strand `M` and a
//! bottom strand `B`, with crossings `TM`, `TB`, `MB` whose passages are
//! pairwise adjacent on each strand. The move reverses the order of the two
//! passages on each strand. Writing `o_T = 1` when `T` meets `TM` before `TB`,
//! `o_M = 1` when `M` meets `TM` before `MB` and `o_B = 1` when `B` meets `TB`
//! before `MB`, a triangle is realizable iff
//! `s_TM s_TB = (-1)^(o_M + o_B)` and `s_TB s_MB = (-1)^(o_T + o_M)`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gauss::{GaussCode, Passage, Role, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Add, MoveKind::R2Remove, MoveKind::R3];
    pub const R2_R3: [MoveKind; 3] = [MoveKind::R2Add, MoveKind::R2Remove, MoveKind::R3];

    /// Change in crossing count.
    pub fn crossing_delta(self) -> i32 {
        match self {
            MoveKind::R1Add => 1,
            MoveKind::R1Remove => -1,
            MoveKind::R2Add => 2,
            MoveKind::R2Remove => -2,
            MoveKind::R3 => 0,
        }
    }
}

/// Insertion point before `index` in a component; `index < len`, or 0 for an empty component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gap {
    pub component: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveStep {
    R1Add { gap: Gap, over_first: bool, sign: Sign, label: u32 },
    R1Remove { label: u32 },
    /// Inserts `O a, O b` at `over_gap` and `U a, U b` (parallel) or
    /// `U b, U a` (antiparallel) at `under_gap`; `a` gets `sign_a`, `b` the opposite.
    /// When both gaps coincide, `over_block_first` orders the two blocks.
    R2Add {
        over_gap: Gap,
        under_gap: Gap,
        antiparallel: bool,
        sign_a: Sign,
        labels: (u32, u32),
        over_block_first: bool,
    },
    R2Remove { labels: (u32, u32) },
    R3 { top_middle: u32, top_bottom: u32, middle_bottom: u32 },
}

impl MoveStep {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveStep::R1Add { .. } => MoveKind::R1Add,
            MoveStep::R1Remove { .. } => MoveKind::R1Remove,
            MoveStep::R2Add { .. } => MoveKind::R2Add,
            MoveStep::R2Remove { .. } => MoveKind::R2Remove,
            MoveStep::R3 { .. } => MoveKind::R3,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move {0:?} does not apply to this code")]
    InvalidSite(MoveStep),
}

fn gaps(code: &GaussCode) -> Vec<Gap> {
    code.components()
        .iter()
        .enumerate()
        .flat_map(|(ci, comp)| (0..comp.len().max(1)).map(move |index| Gap { component: ci, index }))
        .collect()
}

/// Positions of all passages: (crossing, role) -> (component, index).
fn position_map(code: &GaussCode) -> BTreeMap<(u32, Role), (usize, usize)> {
    let mut map = BTreeMap::new();
    for (ci, comp) in code.components().iter().enumerate() {
        for (i, p) in comp.iter().enumerate() {
            map.insert((p.crossing, p.role), (ci, i));
        }
    }
    map
}

/// True when `b` immediately follows `a` along a component.
fn follows(code: &GaussCode, a: (usize, usize), b: (usize, usize)) -> bool {
    let len = code.components()[a.0].len();
    a.0 == b.0 && a != b && (a.1 + 1) % len == b.1
}

fn adjacent(code: &GaussCode, a: (usize, usize), b: (usize, usize)) -> bool {
    follows(code, a, b) || follows(code, b, a)
}

pub fn enumerate_sites(code: &GaussCode, kind: MoveKind) -> Vec<MoveStep> {
    let fresh = code.max_label() + 1;
    let signs = [Sign::Pos, Sign::Neg];
    match kind {
        MoveKind::R1Add => {
            let mut out = Vec::new();
            for gap in gaps(code) {
                for over_first in [true, false] {
                    for sign in signs {
                        out.push(MoveStep::R1Add { gap, over_first, sign, label: fresh });
                    }
                }
            }
            out
        }
        MoveKind::R1Remove => code
            .signs()
            .keys()
            .filter(|&&c| r1_removable(code, c))
            .map(|&label| MoveStep::R1Remove { label })
            .collect(),
        MoveKind::R2Add => {
            let mut out = Vec::new();
            let all = gaps(code);
            for &over_gap in &all {
                for &under_gap in &all {
                    let orders: &[bool] = if over_gap == under_gap { &[true, false] } else { &[true] };
                    for &over_block_first in orders {
                        for antiparallel in [false, true] {
                            for sign_a in signs {
                                out.push(MoveStep::R2Add {
                                    over_gap,
                                    under_gap,
                                    antiparallel,
                                    sign_a,
                                    labels: (fresh, fresh + 1),
                                    over_block_first,
                                });
                            }
                        }
                    }
                }
            }
            out
        }
        MoveKind::R2Remove => {
            let labels: Vec<u32> = code.signs().keys().copied().collect();
            let mut out = Vec::new();
            for (i, &a) in labels.iter().enumerate() {
                for &b in &labels[i + 1..] {
                    if r2_removable(code, a, b) {
                        out.push(MoveStep::R2Remove { labels: (a, b) });
                    }
                }
            }
            out
        }
        MoveKind::R3 => {
            let labels: Vec<u32> = code.signs().keys().copied().collect();
            let pos = position_map(code);
            let mut out = Vec::new();
            for &tm in &labels {
                for &tb in &labels {
                    for &mb in &labels {
                        if r3_valid(code, &pos, tm, tb, mb).is_some() {
                            out.push(MoveStep::R3 { top_middle: tm, top_bottom: tb, middle_bottom: mb });
                        }
                    }
                }
            }
            out
        }
    }
}

fn r1_removable(code: &GaussCode, c: u32) -> bool {
    match (code.position(c, Role::Over), code.position(c, Role::Under)) {
        (Some(o), Some(u)) => adjacent(code, o, u),
        _ => false,
    }
}

fn r2_removable(code: &GaussCode, a: u32, b: u32) -> bool {
    if a == b {
        return false;
    }
    let (Some(sa), Some(sb)) = (code.sign(a), code.sign(b)) else {
        return false;
    };
    if sa == sb {
        return false;
    }
    let pos = position_map(code);
    adjacent(code, pos[&(a, Role::Over)], pos[&(b, Role::Over)])
        && adjacent(code, pos[&(a, Role::Under)], pos[&(b, Role::Under)])
}

/// Two adjacent positions, as (component, index) pairs, swapped by a third move.
type Segment = ((usize, usize), (usize, usize));

/// Returns the three segments when the triangle is realizable.
fn r3_valid(
    code: &GaussCode,
    pos: &BTreeMap<(u32, Role), (usize, usize)>,
    tm: u32,
    tb: u32,
    mb: u32,
) -> Option<[Segment; 3]> {
    if tm == tb || tm == mb || tb == mb {
        return None;
    }
    let (t1, t2) = (*pos.get(&(tm, Role::Over))?, *pos.get(&(tb, Role::Over))?);
    let (m1, m2) = (*pos.get(&(tm, Role::Under))?, *pos.get(&(mb, Role::Over))?);
    let (b1, b2) = (*pos.get(&(tb, Role::Under))?, *pos.get(&(mb, Role::Under))?);
    let orders = |x, y| -> Vec<bool> {
        let mut v = Vec::new();
        if follows(code, x, y) {
            v.push(true);
        }
        if follows(code, y, x) {
            v.push(false);
        }
        v
    };
    let s = |c| code.sign(c).map(Sign::value);
    let (s_tm, s_tb, s_mb) = (s(tm)?, s(tb)?, s(mb)?);
    let parity = |x: bool, y: bool| if x == y { 1 } else { -1 };
    for &ot in &orders(t1, t2) {
        for &om in &orders(m1, m2) {
            for &ob in &orders(b1, b2) {
                if s_tm * s_tb == parity(om, ob) && s_tb * s_mb == parity(ot, om) {
                    return Some([(t1, t2), (m1, m2), (b1, b2)]);
                }
            }
        }
    }
    None
}

fn insert_blocks(comp: &mut Vec<Passage>, mut blocks: Vec<(usize, Vec<Passage>)>) {
    // descending index keeps earlier indices valid
    blocks.sort_by_key(|b| std::cmp::Reverse(b.0));
    for (index, block) in blocks {
        comp.splice(index..index, block);
    }
}

pub fn apply(code: &GaussCode, step: &MoveStep) -> Result<GaussCode, MoveError> {
    let invalid = || MoveError::InvalidSite(step.clone());
    let mut components: Vec<Vec<Passage>> = code.components().to_vec();
    let mut signs = code.signs().clone();
    let gap_ok = |g: &Gap| {
        g.component < components.len() && g.index < components[g.component].len().max(1)
    };
    match step {
        MoveStep::R1Add { gap, over_first, sign, label } => {
            if !gap_ok(gap) || signs.contains_key(label) || *label == 0 {
                return Err(invalid());
            }
            let (r1, r2) = if *over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
            insert_blocks(
                &mut components[gap.component],
                vec![(gap.index, vec![Passage::new(*label, r1), Passage::new(*label, r2)])],
            );
            signs.insert(*label, *sign);
        }
        MoveStep::R1Remove { label } => {
            if !r1_removable(code, *label) {
                return Err(invalid());
            }
            for comp in &mut components {
                comp.retain(|p| p.crossing != *label);
            }
            signs.remove(label);
        }
        MoveStep::R2Add { over_gap, under_gap, antiparallel, sign_a, labels: (a, b), over_block_first } => {
            if !gap_ok(over_gap)
                || !gap_ok(under_gap)
                || a == b
                || *a == 0
                || *b == 0
                || signs.contains_key(a)
                || signs.contains_key(b)
            {
                return Err(invalid());
            }
            let over = vec![Passage::new(*a, Role::Over), Passage::new(*b, Role::Over)];
            let under = if *antiparallel {
                vec![Passage::new(*b, Role::Under), Passage::new(*a, Role::Under)]
            } else {
                vec![Passage::new(*a, Role::Under), Passage::new(*b, Role::Under)]
            };
            if over_gap == under_gap {
                let block = if *over_block_first { [over, under].concat() } else { [under, over].concat() };
                insert_blocks(&mut components[over_gap.component], vec![(over_gap.index, block)]);
            } else if over_gap.component == under_gap.component {
                insert_blocks(
                    &mut components[over_gap.component],
                    vec![(over_gap.index, over), (under_gap.index, under)],
                );
            } else {
                insert_blocks(&mut components[over_gap.component], vec![(over_gap.index, over)]);
                insert_blocks(&mut components[under_gap.component], vec![(under_gap.index, under)]);
            }
            signs.insert(*a, *sign_a);
            signs.insert(*b, sign_a.flip());
        }
        MoveStep::R2Remove { labels: (a, b) } => {
            if !r2_removable(code, *a, *b) {
                return Err(invalid());
            }
            for comp in &mut components {
                comp.retain(|p| p.crossing != *a && p.crossing != *b);
            }
            signs.remove(a);
            signs.remove(b);
        }
        MoveStep::R3 { top_middle, top_bottom, middle_bottom } => {
            let pos = position_map(code);
            let segments =
                r3_valid(code, &pos, *top_middle, *top_bottom, *middle_bottom).ok_or_else(invalid)?;
            for (x, y) in segments {
                let px = components[x.0][x.1];
                components[x.0][x.1] = components[y.0][y.1];
                components[y.0][y.1] = px;
            }
        }
    }
    Ok(GaussCode::from_parts_unchecked(components, signs))
}

/// A step undoing `step` on the code it produces from `before`.
pub fn inverse(before: &GaussCode, step: &MoveStep) -> Result<MoveStep, MoveError> {
    let after = apply(before, step)?;
    match step {
        MoveStep::R1Add { label, .. } => Ok(MoveStep::R1Remove { label: *label }),
        MoveStep::R2Add { labels, .. } => Ok(MoveStep::R2Remove { labels: *labels }),
        MoveStep::R3 { .. } => Ok(step.clone()),
        MoveStep::R1Remove { label } => {
            let (c, sign) = (*label, before.sign(*label).unwrap());
            enumerate_sites(&after, MoveKind::R1Add)
                .into_iter()
                .map(|s| match s {
                    MoveStep::R1Add { gap, over_first, .. } => MoveStep::R1Add { gap, over_first, sign, label: c },
                    other => other,
                })
                .find(|s| apply(&after, s).is_ok_and(|back| same_up_to_rotation(&back, before)))
                .ok_or_else(|| MoveError::InvalidSite(step.clone()))
        }
        MoveStep::R2Remove { labels: (a, b) } => {
            let sa = before.sign(*a).unwrap();
            enumerate_sites(&after, MoveKind::R2Add)
                .into_iter()
                .flat_map(|s| match s {
                    MoveStep::R2Add { over_gap, under_gap, antiparallel, over_block_first, .. } => {
                        [(*a, *b, sa), (*b, *a, sa.flip())]
                            .into_iter()
                            .map(|(x, y, sx)| MoveStep::R2Add {
                                over_gap,
                                under_gap,
                                antiparallel,
                                sign_a: sx,
                                labels: (x, y),
                                over_block_first,
                            })
                            .collect::<Vec<_>>()
                    }
                    other => vec![other],
                })
                .find(|s| apply(&after, s).is_ok_and(|back| same_up_to_rotation(&back, before)))
                .ok_or_else(|| MoveError::InvalidSite(step.clone()))
        }
    }
}

fn same_up_to_rotation(a: &GaussCode, b: &GaussCode) -> bool {
    a.signs() == b.signs()
        && a.components().len() == b.components().len()
        && a.components().iter().zip(b.components()).all(|(x, y)| {
            x.len() == y.len() && (x.is_empty() || (0..x.len()).any(|r| x.iter().cycle().skip(r).take(x.len()).eq(y.iter())))
        })
}

/// Equality up to relabeling crossings and rotating each component.
pub fn equivalent_up_to_relabeling(a: &GaussCode, b: &GaussCode) -> bool {
    if a.components().len() != b.components().len() || a.crossing_count() != b.crossing_count() {
        return false;
    }
    if a.components().iter().zip(b.components()).any(|(x, y)| x.len() != y.len()) {
        return false;
    }
    match_components(a, b, 0, &BTreeMap::new())
}

fn match_components(a: &GaussCode, b: &GaussCode, ci: usize, map: &BTreeMap<u32, u32>) -> bool {
    if ci == a.components().len() {
        return true;
    }
    let (x, y) = (&a.components()[ci], &b.components()[ci]);
    if x.is_empty() {
        return match_components(a, b, ci + 1, map);
    }
    'rot: for r in 0..y.len() {
        let mut m = map.clone();
        for (i, p) in x.iter().enumerate() {
            let q = y[(i + r) % y.len()];
            if p.role != q.role || a.sign(p.crossing) != b.sign(q.crossing) {
                continue 'rot;
            }
            match m.get(&p.crossing) {
                Some(&t) if t != q.crossing => continue 'rot,
                Some(_) => {}
                None => {
                    if m.values().any(|&t| t == q.crossing) {
                        continue 'rot;
                    }
                    m.insert(p.crossing, q.crossing);
                }
            }
        }
        if match_components(a, b, ci + 1, &m) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug)]
pub struct WalkConfig {
    pub kinds: Vec<MoveKind>,
    /// Additions that would exceed this many crossings are skipped.
    pub max_crossings: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig { kinds: MoveKind::ALL.to_vec(), max_crossings: 10 }
    }
}

/// Random walk with the default configuration; returns the start and every visited code.
pub fn random_walk(code: &GaussCode, steps: usize, seed: u64) -> Vec<GaussCode> {
    random_walk_with(code, steps, seed, &WalkConfig::default())
}

pub fn random_walk_with(code: &GaussCode, steps: usize, seed: u64, config: &WalkConfig) -> Vec<GaussCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut walk = vec![code.clone()];
    for _ in 0..steps {
        let current = walk.last().unwrap();
        let n = current.crossing_count() as i32;
        let mut options: Vec<Vec<MoveStep>> = config
            .kinds
            .iter()
            .filter(|k| n + k.crossing_delta() <= config.max_crossings as i32)
            .map(|&k| enumerate_sites(current, k))
            .filter(|sites| !sites.is_empty())
            .collect();
        let Some(sites) = options.choose_mut(&mut rng) else {
            walk.push(current.clone());
            continue;
        };
        let step = sites.swap_remove(rng.gen_range(0..sites.len()));
        let next = apply(current, &step).expect("enumerated sites apply");
        walk.push(next);
    }
    walk
}

/// Uniformly shuffled Gauss code with `crossings` crossings split into
/// `components` non-empty components (fewer if there are too few passages).
pub fn random_code<R: Rng>(rng: &mut R, crossings: usize, components: usize) -> GaussCode {
    let mut passages: Vec<Passage> = (1..=crossings as u32)
        .flat_map(|c| [Passage::new(c, Role::Over), Passage::new(c, Role::Under)])
        .collect();
    passages.shuffle(rng);
    let signs: BTreeMap<u32, Sign> = (1..=crossings as u32)
        .map(|c| (c, if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }))
        .collect();
    let k = components.clamp(1, passages.len().max(1));
    let mut cuts: Vec<usize> = (1..passages.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    let mut comps = Vec::new();
    let mut start = 0;
    for cut in cuts.into_iter().chain(std::iter::once(passages.len())) {
        comps.push(passages[start..cut].to_vec());
        start = cut;
    }
    GaussCode::new(comps, signs).expect("generated code is valid").renumbered()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> GaussCode {
        s.parse().unwrap()
    }

    #[test]
    fn kink_removal() {
        let c = code("O1+U1+");
        let sites = enumerate_sites(&c, MoveKind::R1Remove);
        assert_eq!(sites, vec![MoveStep::R1Remove { label: 1 }]);
        assert_eq!(apply(&c, &sites[0]).unwrap(), GaussCode::unknot());
    }

    #[test]
    fn kink_add_then_remove() {
        let u = GaussCode::unknot();
        let adds = enumerate_sites(&u, MoveKind::R1Add);
        assert_eq!(adds.len(), 4);
        for s in adds {
            let k = apply(&u, &s).unwrap();
            let back = apply(&k, &inverse(&u, &s).unwrap()).unwrap();
            assert_eq!(back, u);
        }
    }

    #[test]
    fn remove_inverse_restores_rotation() {
        let c = code("U1+O2-U3-O1+U2-O3-");
        for kind in [MoveKind::R1Remove, MoveKind::R2Remove] {
            for s in enumerate_sites(&c, kind) {
                let after = apply(&c, &s).unwrap();
                let inv = inverse(&c, &s).unwrap();
                assert!(equivalent_up_to_relabeling(&apply(&after, &inv).unwrap(), &c));
            }
        }
        // wrap-around kink
        let w = code("U1+O2+U2+O1+");
        let s = MoveStep::R1Remove { label: 1 };
        let after = apply(&w, &s).unwrap();
        assert_eq!(after.to_string(), "O2+U2+");
        let back = apply(&after, &inverse(&w, &s).unwrap()).unwrap();
        assert!(equivalent_up_to_relabeling(&back, &w));
    }

    #[test]
    fn r2_patterns() {
        let c = code("O1+O2-U1+U2-");
        assert_eq!(enumerate_sites(&c, MoveKind::R2Remove), vec![MoveStep::R2Remove { labels: (1, 2) }]);
        let same_sign = code("O1+O2+U1+U2+");
        assert!(enumerate_sites(&same_sign, MoveKind::R2Remove).is_empty());
        let stale = MoveStep::R2Remove { labels: (1, 2) };
        assert_eq!(apply(&same_sign, &stale), Err(MoveError::InvalidSite(stale.clone())));
    }

    #[test]
    fn r3_on_braid_triangle() {
        let c = code("O1+O2+;U1+O3+;U2+U3+");
        let sites = enumerate_sites(&c, MoveKind::R3);
        assert!(!sites.is_empty());
        for s in &sites {
            let after = apply(&c, s).unwrap();
            assert_eq!(apply(&after, &inverse(&c, s).unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn relabel_equivalence() {
        assert!(equivalent_up_to_relabeling(&code("O1+U2-O2-U1+"), &code("O5-U3+O3+U5-")));
        assert!(!equivalent_up_to_relabeling(&code("O1+U2-O2-U1+"), &code("O1+U2+O2+U1+")));
        assert!(equivalent_up_to_relabeling(&code(""), &code("")));
    }

    #[test]
    fn walks_are_deterministic_and_valid() {
        let c = code("O1+U2+O3+U1+O2+U3+");
        let a = random_walk(&c, 15, 7);
        let b = random_walk(&c, 15, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
        for x in &a {
            assert!(x.crossing_count() <= 10);
            assert_eq!(GaussCode::new(x.components().to_vec(), x.signs().clone()).as_ref(), Ok(x));
        }
    }

    #[test]
    fn random_codes_have_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..6 {
            for k in 1..3 {
                let c = random_code(&mut rng, n, k);
                assert_eq!(c.crossing_count(), n);
                assert!(c.components().len() <= k.max(1));
            }
        }
    }
}
