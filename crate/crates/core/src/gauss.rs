//! Signed oriented Gauss codes and the 4-valent graph structure derived from them.
//!
//! Text grammar:
//!
//! ```text
//! code      := component (';' component)*
//! component := token*
//! token     := ('O' | 'U') uint ('+' | '-')
//! ```
//!
//! Whitespace between tokens is ignored. The empty string is the unknot.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// One pass of a component through a classical crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passage {
    pub crossing: u32,
    pub role: Role,
}

impl Passage {
    pub fn new(crossing: u32, role: Role) -> Self {
        Passage { crossing, role }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("crossing {0} has two {1:?} passages")]
    DuplicateRole(u32, Role),
    #[error("the two passages of crossing {0} carry different signs")]
    SignMismatch(u32),
    #[error("crossing {0} has only one passage")]
    DanglingCrossing(u32),
    #[error("crossing {0} has no sign")]
    MissingSign(u32),
}

/// A validated signed Gauss code of a virtual link.
///
/// Each crossing id occurs exactly twice, once `Over` and once `Under`, and
/// carries a sign. Components are cyclic; empty components are unknotted
/// circles without classical crossings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussCode {
    components: Vec<Vec<Passage>>,
    signs: BTreeMap<u32, Sign>,
}

impl GaussCode {
    pub fn new(
        components: Vec<Vec<Passage>>,
        signs: BTreeMap<u32, Sign>,
    ) -> Result<Self, GaussError> {
        let mut seen: BTreeMap<u32, (bool, bool)> = BTreeMap::new();
        for p in components.iter().flatten() {
            let entry = seen.entry(p.crossing).or_default();
            let slot = match p.role {
                Role::Over => &mut entry.0,
                Role::Under => &mut entry.1,
            };
            if *slot {
                return Err(GaussError::DuplicateRole(p.crossing, p.role));
            }
            *slot = true;
        }
        for (&c, &(o, u)) in &seen {
            if !(o && u) {
                return Err(GaussError::DanglingCrossing(c));
            }
            if !signs.contains_key(&c) {
                return Err(GaussError::MissingSign(c));
            }
        }
        let signs = signs.into_iter().filter(|(c, _)| seen.contains_key(c)).collect();
        let components = if components.is_empty() { vec![Vec::new()] } else { components };
        Ok(GaussCode { components, signs })
    }

    /// The unknot: one component, no crossings.
    pub fn unknot() -> Self {
        GaussCode { components: vec![Vec::new()], signs: BTreeMap::new() }
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn signs(&self) -> &BTreeMap<u32, Sign> {
        &self.signs
    }

    pub fn sign(&self, crossing: u32) -> Option<Sign> {
        self.signs.get(&crossing).copied()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn passage_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn writhe(&self) -> i32 {
        self.signs.values().map(|s| s.value()).sum()
    }

    /// Crossing switch at every crossing: roles swapped and signs negated.
    pub fn mirror(&self) -> GaussCode {
        let components = self
            .components
            .iter()
            .map(|comp| comp.iter().map(|p| Passage::new(p.crossing, p.role.flip())).collect())
            .collect();
        let signs = self.signs.iter().map(|(&c, &s)| (c, s.flip())).collect();
        GaussCode { components, signs }
    }

    /// Relabels crossings 1, 2, ... in order of first appearance.
    pub fn renumbered(&self) -> GaussCode {
        let mut map = BTreeMap::new();
        for p in self.components.iter().flatten() {
            let next = map.len() as u32 + 1;
            map.entry(p.crossing).or_insert(next);
        }
        let components = self
            .components
            .iter()
            .map(|comp| comp.iter().map(|p| Passage::new(map[&p.crossing], p.role)).collect())
            .collect();
        let signs = self.signs.iter().map(|(c, &s)| (map[c], s)).collect();
        GaussCode { components, signs }
    }

    pub fn max_label(&self) -> u32 {
        self.signs.keys().next_back().copied().unwrap_or(0)
    }

    /// Position of a passage as (component, index).
    pub fn position(&self, crossing: u32, role: Role) -> Option<(usize, usize)> {
        self.components.iter().enumerate().find_map(|(ci, comp)| {
            comp.iter().position(|p| p.crossing == crossing && p.role == role).map(|i| (ci, i))
        })
    }

    /// Builds a code without validation; callers guarantee the invariants.
    pub(crate) fn from_parts_unchecked(
        components: Vec<Vec<Passage>>,
        signs: BTreeMap<u32, Sign>,
    ) -> Self {
        debug_assert!(GaussCode::new(components.clone(), signs.clone()).is_ok());
        GaussCode { components, signs }
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::new(self)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for p in comp {
                write!(f, "{}{}{}", p.role.letter(), p.crossing, self.signs[&p.crossing].symbol())?;
            }
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_code(text)
    }
}

pub fn parse_code(text: &str) -> Result<GaussCode, GaussError> {
    let bytes = text.as_bytes();
    let syntax = |offset: usize, message: &str| GaussError::Syntax { offset, message: message.to_string() };

    let mut components = vec![Vec::new()];
    let mut token_signs: BTreeMap<u32, Sign> = BTreeMap::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b == b';' {
            components.push(Vec::new());
            i += 1;
            continue;
        }
        let role = match b {
            b'O' => Role::Over,
            b'U' => Role::Under,
            _ => return Err(syntax(i, "expected 'O', 'U' or ';'")),
        };
        let start = i + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(syntax(start, "expected crossing number"));
        }
        let crossing: u32 = text[start..end].parse().map_err(|_| syntax(start, "crossing number out of range"))?;
        if crossing == 0 {
            return Err(syntax(start, "crossing numbers start at 1"));
        }
        let sign = match bytes.get(end) {
            Some(b'+') => Sign::Pos,
            Some(b'-') => Sign::Neg,
            _ => return Err(syntax(end, "expected '+' or '-'")),
        };
        if let Some(&prev) = token_signs.get(&crossing) {
            if prev != sign {
                return Err(GaussError::SignMismatch(crossing));
            }
        }
        token_signs.insert(crossing, sign);
        components.last_mut().unwrap().push(Passage::new(crossing, role));
        i = end + 1;
    }
    GaussCode::new(components, token_signs)
}

/// Planar port of a crossing drawn with both strands pointing up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    SW = 0,
    SE = 1,
    NW = 2,
    NE = 3,
}

impl Port {
    pub const ALL: [Port; 4] = [Port::SW, Port::SE, Port::NW, Port::NE];

    pub fn is_incoming(self) -> bool {
        matches!(self, Port::SW | Port::SE)
    }
}

/// The arc end attached to a port.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PortEnd {
    /// Global passage index (see [`Diagram`]).
    pub passage: usize,
    pub arc: usize,
    /// True when the diagram orientation points into the crossing.
    pub incoming: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub label: u32,
    pub sign: Sign,
    /// Global passage index of the over passage.
    pub over: usize,
    pub under: usize,
    /// Indexed by `Port as usize`.
    pub ports: [PortEnd; 4],
}

impl CrossingInfo {
    pub fn port(&self, port: Port) -> PortEnd {
        self.ports[port as usize]
    }
}

/// Index structure over a [`GaussCode`].
///
/// Passages are numbered globally, component by component. Arc `p` runs from
/// the out-port of passage `p` to the in-port of the next passage on the same
/// component. Each empty component adds one closed arc after the passage arcs.
/// Crossings are numbered in order of first appearance.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub crossings: Vec<CrossingInfo>,
    /// Crossing index of each passage.
    pub passage_crossing: Vec<usize>,
    pub passage_role: Vec<Role>,
    pub passage_component: Vec<usize>,
    pub next: Vec<usize>,
    pub prev: Vec<usize>,
    pub component_starts: Vec<usize>,
    pub component_lens: Vec<usize>,
    pub empty_components: usize,
}

impl Diagram {
    pub fn new(code: &GaussCode) -> Diagram {
        let mut passage_crossing = Vec::new();
        let mut passage_role = Vec::new();
        let mut passage_component = Vec::new();
        let mut next = Vec::new();
        let mut prev = Vec::new();
        let mut component_starts = Vec::new();
        let mut component_lens = Vec::new();
        let mut index_of: BTreeMap<u32, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut over = Vec::new();
        let mut under = Vec::new();
        let mut empty_components = 0;

        for (ci, comp) in code.components().iter().enumerate() {
            let start = passage_crossing.len();
            component_starts.push(start);
            component_lens.push(comp.len());
            if comp.is_empty() {
                empty_components += 1;
            }
            for (k, p) in comp.iter().enumerate() {
                let g = start + k;
                let c = *index_of.entry(p.crossing).or_insert_with(|| {
                    labels.push(p.crossing);
                    over.push(usize::MAX);
                    under.push(usize::MAX);
                    labels.len() - 1
                });
                match p.role {
                    Role::Over => over[c] = g,
                    Role::Under => under[c] = g,
                }
                passage_crossing.push(c);
                passage_role.push(p.role);
                passage_component.push(ci);
                next.push(start + (k + 1) % comp.len());
                prev.push(start + (k + comp.len() - 1) % comp.len());
            }
        }

        let crossings = labels
            .iter()
            .enumerate()
            .map(|(c, &label)| {
                let sign = code.sign(label).expect("validated code");
                let (o, u) = (over[c], under[c]);
                let inc = |p: usize| PortEnd { passage: p, arc: prev[p], incoming: true };
                let out = |p: usize| PortEnd { passage: p, arc: p, incoming: false };
                let ports = match sign {
                    Sign::Pos => [inc(o), inc(u), out(u), out(o)],
                    Sign::Neg => [inc(u), inc(o), out(o), out(u)],
                };
                CrossingInfo { label, sign, over: o, under: u, ports }
            })
            .collect();

        Diagram {
            crossings,
            passage_crossing,
            passage_role,
            passage_component,
            next,
            prev,
            component_starts,
            component_lens,
            empty_components,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn passage_count(&self) -> usize {
        self.passage_crossing.len()
    }

    /// Passage arcs plus one closed arc per empty component.
    pub fn arc_count(&self) -> usize {
        self.passage_count() + self.empty_components
    }

    /// Port of a crossing where the given passage enters (`incoming`) or leaves.
    pub fn port_of(&self, passage: usize, incoming: bool) -> Port {
        let info = &self.crossings[self.passage_crossing[passage]];
        *Port::ALL
            .iter()
            .find(|&&port| {
                let end = info.port(port);
                end.passage == passage && end.incoming == incoming
            })
            .expect("every passage has an in-port and an out-port")
    }
}

/// Port assignment of every crossing, in crossing order of first appearance.
pub fn ports(code: &GaussCode) -> Vec<CrossingInfo> {
    Diagram::new(code).crossings
}
