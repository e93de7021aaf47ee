use std::fmt;

use crate::error::{Error, Result};
use crate::simple::{Kind, Presentation};

/// A signed atom. `atom` is the 0-based position in the structure's atom
/// list (σ_{atom+1} for Artin, see [`crate::bkl::BklAtom`] for BKL).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub atom: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(atom: usize) -> Self {
        Letter {
            atom,
            inverse: false,
        }
    }

    pub fn negative(atom: usize) -> Self {
        Letter {
            atom,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            atom: self.atom,
            inverse: !self.inverse,
        }
    }
}

/// A word in the signed atoms of one structure. The empty word is the
/// identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    presentation: Presentation,
    letters: Vec<Letter>,
}

pub(crate) fn atom_count(kind: Kind, n: usize) -> usize {
    match kind {
        Kind::Artin => n.saturating_sub(1),
        Kind::Bkl => n * n.saturating_sub(1) / 2,
    }
}

impl BraidWord {
    pub fn identity(kind: Kind, strands: usize) -> Self {
        BraidWord {
            presentation: Presentation { kind, strands },
            letters: Vec::new(),
        }
    }

    pub fn new(kind: Kind, strands: usize, letters: Vec<Letter>) -> Result<Self> {
        let presentation = Presentation { kind, strands };
        let m = atom_count(kind, strands);
        if let Some(bad) = letters.iter().find(|l| l.atom >= m) {
            return Err(Error::AtomOutOfRange {
                atom: bad.atom,
                presentation,
            });
        }
        Ok(BraidWord {
            presentation,
            letters,
        })
    }

    /// Convenience constructor from `(atom id, inverse)` pairs.
    pub fn from_atoms(kind: Kind, strands: usize, atoms: &[(usize, bool)]) -> Result<Self> {
        Self::new(
            kind,
            strands,
            atoms
                .iter()
                .map(|&(atom, inverse)| Letter { atom, inverse })
                .collect(),
        )
    }

    /// Artin word from signed 1-based indices: `3` is σ₃, `-2` is σ₂⁻¹.
    pub fn artin(strands: usize, indices: &[i32]) -> Result<Self> {
        let mut letters = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 {
                return Err(Error::AtomOutOfRange {
                    atom: 0,
                    presentation: Presentation {
                        kind: Kind::Artin,
                        strands,
                    },
                });
            }
            letters.push(Letter {
                atom: i.unsigned_abs() as usize - 1,
                inverse: i < 0,
            });
        }
        Self::new(Kind::Artin, strands, letters)
    }

    pub(crate) fn from_letters_unchecked(kind: Kind, strands: usize, letters: Vec<Letter>) -> Self {
        BraidWord {
            presentation: Presentation { kind, strands },
            letters,
        }
    }

    pub fn kind(&self) -> Kind {
        self.presentation.kind
    }

    pub fn strands(&self) -> usize {
        self.presentation.strands
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            presentation: self.presentation,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn push(&mut self, letter: Letter) {
        assert!(letter.atom < atom_count(self.kind(), self.strands()));
        self.letters.push(letter);
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        self.check_same(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            presentation: self.presentation,
            letters,
        })
    }

    pub fn product<'a>(
        kind: Kind,
        strands: usize,
        words: impl IntoIterator<Item = &'a BraidWord>,
    ) -> Result<Self> {
        let mut out = BraidWord::identity(kind, strands);
        for w in words {
            out.check_same(w)?;
            out.letters.extend_from_slice(&w.letters);
        }
        Ok(out)
    }

    /// Removes adjacent `a a⁻¹` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            presentation: self.presentation,
            letters: out,
        }
    }

    /// Same group element written in the other structure's atoms.
    pub fn to_kind(&self, kind: Kind) -> Self {
        match (self.kind(), kind) {
            (a, b) if a == b => self.clone(),
            (Kind::Artin, Kind::Bkl) => crate::bkl::artin_to_bkl(self).expect("artin word"),
            _ => crate::bkl::bkl_to_artin(self).expect("bkl word"),
        }
    }

    pub(crate) fn check_same(&self, other: &BraidWord) -> Result<()> {
        if self.presentation != other.presentation {
            return Err(Error::StructureMismatch {
                expected: self.presentation,
                got: other.presentation,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BraidWord({}: {})",
            self.presentation,
            crate::syntax::format_word(self)
        )
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::format_word(self))
    }
}
