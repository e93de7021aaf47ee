//! Artin's presentation: atoms σ₁..σ_{N−1}, simple elements are the
//! permutation braids (every permutation of the strands), ordered by
//! inclusion of crossing sets.
//!
//! Atom `i` (0-based) is σ_{i+1}, the transposition of positions `i` and
//! `i+1`. A pair of strands crosses in a simple `s` iff their final
//! positions are inverted, so `σ_{i+1}` left-divides `s` iff `s[i] > s[i+1]`.

use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::simple::{Kind, SimpleElement};
use crate::structure::Structure;

/// Artin index of an atom; 1 ≤ index ≤ N−1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtinAtom(pub usize);

impl ArtinAtom {
    pub fn new(index: usize, strands: usize) -> Result<Self> {
        if index == 0 || index >= strands {
            return Err(Error::AtomOutOfRange {
                atom: index,
                presentation: crate::simple::Presentation {
                    kind: Kind::Artin,
                    strands,
                },
            });
        }
        Ok(ArtinAtom(index))
    }

    /// Position in the structure's atom list.
    pub fn atom_id(self) -> usize {
        self.0 - 1
    }
}

pub fn artin_structure(n: usize) -> Result<Structure> {
    Structure::new(Kind::Artin, n)
}

pub fn artin_simple_length(s: &SimpleElement) -> Result<usize> {
    expect_artin(s)?;
    Ok(length(&s.perm))
}

pub fn artin_left_divides(s: &SimpleElement, t: &SimpleElement) -> Result<bool> {
    expect_artin(s)?;
    expect_artin(t)?;
    if s.strands() != t.strands() {
        return Err(Error::StructureMismatch {
            expected: s.presentation(),
            got: t.presentation(),
        });
    }
    Ok(left_divides(&s.perm, &t.perm))
}

fn expect_artin(s: &SimpleElement) -> Result<()> {
    if s.kind != Kind::Artin {
        return Err(Error::StructureMismatch {
            expected: crate::simple::Presentation {
                kind: Kind::Artin,
                strands: s.strands(),
            },
            got: s.presentation(),
        });
    }
    Ok(())
}

pub(crate) fn delta(n: usize) -> Perm {
    (0..n).rev().map(|i| i as u8).collect()
}

pub(crate) fn atom(n: usize, i: usize) -> Perm {
    perm::transposition(n, i, i + 1)
}

/// Number of crossing strand pairs.
pub(crate) fn length(p: &[u8]) -> usize {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

/// Crossing set of `s` contained in crossing set of `t`.
pub(crate) fn left_divides(s: &[u8], t: &[u8]) -> bool {
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] && t[i] < t[j] {
                return false;
            }
        }
    }
    true
}

/// Greatest common left divisor.
///
/// Peels atoms that left-divide both remainders until none is left; the
/// peeled prefix is the meet. Only the neighbours of a swapped position can
/// acquire a new common descent, so a worklist keeps this linear in `n`
/// plus the length of the meet.
pub(crate) fn meet(s: &[u8], t: &[u8]) -> Perm {
    let n = s.len();
    if n < 2 {
        return perm::identity(n);
    }
    let mut rs = Perm::from_slice(s);
    let mut rt = Perm::from_slice(t);
    let mut work: Vec<usize> = (0..n - 1).rev().collect();
    while let Some(i) = work.pop() {
        if rs[i] > rs[i + 1] && rt[i] > rt[i + 1] {
            rs.swap(i, i + 1);
            rt.swap(i, i + 1);
            if i > 0 {
                work.push(i - 1);
            }
            if i + 2 < n {
                work.push(i + 1);
            }
        }
    }
    // s = meet · rs
    let rs_inv = perm::inverse(&rs);
    s.iter().map(|&x| rs_inv[x as usize]).collect()
}

/// Least common left multiple below δ.
///
/// Right complements reverse the prefix order into the suffix order, and
/// word reversal (which inverts the permutation) swaps prefix and suffix.
pub(crate) fn join(s: &[u8], t: &[u8], delta: &[u8]) -> Perm {
    let cs = perm::left_quotient(s, delta);
    let ct = perm::left_quotient(t, delta);
    let suffix_meet = perm::inverse(&meet(&perm::inverse(&cs), &perm::inverse(&ct)));
    perm::compose(delta, &perm::inverse(&suffix_meet))
}

/// Atom ids (0-based) of a positive word for the permutation braid.
pub(crate) fn atom_word(p: &[u8]) -> Vec<usize> {
    let n = p.len();
    let mut rest = Perm::from_slice(p);
    let mut word = Vec::with_capacity(length(p));
    let mut i = 0;
    while i + 1 < n {
        if rest[i] > rest[i + 1] {
            word.push(i);
            rest.swap(i, i + 1);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    word
}
