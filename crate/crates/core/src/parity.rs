//! Crossing parity and the odd writhe of virtual knots.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gauss::{GaussCode, Role};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParityError {
    #[error("parity is only defined for knots, got {0} components")]
    NotAKnot(usize),
    #[error("no crossing labelled {0}")]
    UnknownCrossing(u32),
}

/// Positions of the two passages of each crossing along the single component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    pub len: usize,
    /// crossing label -> (over position, under position)
    pub chords: BTreeMap<u32, (usize, usize)>,
}

impl ChordDiagram {
    pub fn new(code: &GaussCode) -> Result<Self, ParityError> {
        if !code.is_knot() {
            return Err(ParityError::NotAKnot(code.components().len()));
        }
        let comp = &code.components()[0];
        let mut chords: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (i, p) in comp.iter().enumerate() {
            let e = chords.entry(p.crossing).or_default();
            match p.role {
                Role::Over => e.0 = i,
                Role::Under => e.1 = i,
            }
        }
        Ok(ChordDiagram { len: comp.len(), chords })
    }

    /// Number of passages strictly between the two ends of the chord.
    pub fn gap(&self, crossing: u32) -> Option<usize> {
        let &(a, b) = self.chords.get(&crossing)?;
        Some(a.abs_diff(b) - 1)
    }

    pub fn is_odd(&self, crossing: u32) -> Option<bool> {
        self.gap(crossing).map(|g| g % 2 == 1)
    }
}

pub fn is_odd(code: &GaussCode, crossing: u32) -> Result<bool, ParityError> {
    ChordDiagram::new(code)?.is_odd(crossing).ok_or(ParityError::UnknownCrossing(crossing))
}

/// Labels of the odd crossings.
pub fn odd_crossings(code: &GaussCode) -> Result<Vec<u32>, ParityError> {
    let chords = ChordDiagram::new(code)?;
    Ok(chords.chords.keys().copied().filter(|&c| chords.is_odd(c) == Some(true)).collect())
}

/// Sum of the signs of the odd crossings.
pub fn odd_writhe(code: &GaussCode) -> Result<i32, ParityError> {
    Ok(odd_crossings(code)?.iter().map(|&c| code.sign(c).unwrap().value()).sum())
}
