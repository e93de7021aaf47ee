use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::{self, Perm};

/// Which Garside structure on the braid group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Artin,
    Bkl,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Artin => f.write_str("artin"),
            Kind::Bkl => f.write_str("bkl"),
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "artin" => Ok(Kind::Artin),
            "bkl" => Ok(Kind::Bkl),
            other => Err(format!(
                "unknown structure `{other}` (expected artin or bkl)"
            )),
        }
    }
}

/// A structure kind together with a strand count; identifies the monoid
/// a simple element or word belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Presentation {
    pub kind: Kind,
    pub strands: usize,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} B_{}", self.kind, self.strands)
    }
}

/// A left divisor of the fundamental element.
///
/// Stored as the permutation the braid induces on the strands, which
/// determines a simple element uniquely in both structures. For BKL the
/// permutation is a product of ascending cycles, one per block of a
/// non-crossing partition; [`SimpleElement::blocks`] recovers the partition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleElement {
    pub(crate) kind: Kind,
    pub(crate) perm: Perm,
}

impl SimpleElement {
    pub(crate) fn from_raw(kind: Kind, perm: Perm) -> Self {
        SimpleElement { kind, perm }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            kind: self.kind,
            strands: self.perm.len(),
        }
    }

    /// One-line notation, 1-based: entry `i` is where strand `i` ends up.
    pub fn permutation(&self) -> Vec<usize> {
        self.perm.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        perm::is_identity(&self.perm)
    }

    /// Cycles of the permutation as 1-based blocks, sorted by minimum
    /// element. For BKL simples this is the canonical partition.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let labels = perm::cycle_labels(&self.perm);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.perm.len()];
        for (i, &l) in labels.iter().enumerate() {
            let l = l as usize;
            if index[l] == usize::MAX {
                index[l] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[l]].push(i + 1);
        }
        blocks
    }
}

impl fmt::Debug for SimpleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Artin => write!(f, "Simple{:?}", self.permutation()),
            Kind::Bkl => write!(f, "Simple{:?}", self.blocks()),
        }
    }
}
