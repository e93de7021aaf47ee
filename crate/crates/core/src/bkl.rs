//! Birman–Ko–Lee presentation: band atoms a_{t,s} (1 ≤ s < t ≤ N), simple
//! elements are the non-crossing partitions of the strands, ordered by
//! refinement.
//!
//! A block `{b₁ < b₂ < … < b_k}` acts as the ascending cycle
//! `b₁ → b₂ → … → b_k → b₁`, which is the permutation of the descending
//! product `a_{b_k,b_{k−1}} ⋯ a_{b₂,b₁}`. Atoms are indexed by `(t, s)` in
//! lexicographic order: a₂,₁, a₃,₁, a₃,₂, a₄,₁, …

use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::simple::{Kind, Presentation, SimpleElement};
use crate::structure::Structure;
use crate::word::{BraidWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BklAtom {
    pub t: usize,
    pub s: usize,
}

impl BklAtom {
    /// 1-based strands with `1 ≤ s < t ≤ strands`.
    pub fn new(t: usize, s: usize, strands: usize) -> Result<Self> {
        if s == 0 || s >= t || t > strands {
            return Err(Error::AtomOutOfRange {
                atom: t.max(s),
                presentation: Presentation {
                    kind: Kind::Bkl,
                    strands,
                },
            });
        }
        Ok(BklAtom { t, s })
    }

    pub fn atom_id(self) -> usize {
        (self.t - 1) * (self.t - 2) / 2 + (self.s - 1)
    }

    pub fn from_id(id: usize) -> Self {
        let mut t = 2;
        while t * (t - 1) / 2 <= id {
            t += 1;
        }
        let s = id - (t - 1) * (t - 2) / 2 + 1;
        BklAtom { t, s }
    }
}

pub fn bkl_structure(n: usize) -> Result<Structure> {
    Structure::new(Kind::Bkl, n)
}

/// Builds the simple element for a partition of `{1..n}` given as 1-based
/// blocks in any order.
pub fn bkl_validate(blocks: &[Vec<usize>], n: usize) -> Result<SimpleElement> {
    let presentation = Presentation {
        kind: Kind::Bkl,
        strands: n,
    };
    let mut labels: Perm = smallvec::smallvec![u8::MAX; n];
    for block in blocks {
        let Some(&min) = block.iter().min() else {
            return Err(Error::InvalidSimple {
                presentation,
                reason: "empty block".into(),
            });
        };
        for &x in block {
            if x == 0 || x > n {
                return Err(Error::InvalidSimple {
                    presentation,
                    reason: format!("element {x} outside 1..={n}"),
                });
            }
            if labels[x - 1] != u8::MAX {
                return Err(Error::InvalidSimple {
                    presentation,
                    reason: format!("element {x} appears twice"),
                });
            }
            labels[x - 1] = (min - 1) as u8;
        }
    }
    if let Some(x) = labels.iter().position(|&l| l == u8::MAX) {
        return Err(Error::InvalidSimple {
            presentation,
            reason: format!("element {} is missing", x + 1),
        });
    }
    if let Some((a, b)) = find_crossing(&labels) {
        return Err(Error::CrossingPartition(a + 1, b + 1));
    }
    Ok(SimpleElement::from_raw(
        Kind::Bkl,
        perm_from_labels(&labels),
    ))
}

pub fn bkl_simple_length(s: &SimpleElement) -> Result<usize> {
    expect_bkl(s)?;
    Ok(length(&s.perm))
}

pub fn bkl_left_divides(s: &SimpleElement, t: &SimpleElement) -> Result<bool> {
    expect_bkl(s)?;
    expect_bkl(t)?;
    if s.strands() != t.strands() {
        return Err(Error::StructureMismatch {
            expected: s.presentation(),
            got: t.presentation(),
        });
    }
    Ok(left_divides(&s.perm, &t.perm))
}

fn expect_bkl(s: &SimpleElement) -> Result<()> {
    if s.kind != Kind::Bkl {
        return Err(Error::StructureMismatch {
            expected: Presentation {
                kind: Kind::Bkl,
                strands: s.strands(),
            },
            got: s.presentation(),
        });
    }
    Ok(())
}

/// Rewrites each band atom as `(σ_{t−1}⋯σ_{s+1}) σ_s (σ_{s+1}⁻¹⋯σ_{t−1}⁻¹)`.
pub fn bkl_to_artin(w: &BraidWord) -> Result<BraidWord> {
    if w.kind() != Kind::Bkl {
        return Err(Error::StructureMismatch {
            expected: Presentation {
                kind: Kind::Bkl,
                strands: w.strands(),
            },
            got: w.presentation(),
        });
    }
    let mut letters = Vec::new();
    for letter in w.letters() {
        let expansion = band_in_artin(BklAtom::from_id(letter.atom));
        if letter.inverse {
            letters.extend(expansion.iter().rev().map(|l| l.inverted()));
        } else {
            letters.extend(expansion);
        }
    }
    Ok(BraidWord::from_letters_unchecked(
        Kind::Artin,
        w.strands(),
        letters,
    ))
}

/// σ_i ↦ a_{i+1,i}, signs preserved.
pub fn artin_to_bkl(w: &BraidWord) -> Result<BraidWord> {
    if w.kind() != Kind::Artin {
        return Err(Error::StructureMismatch {
            expected: Presentation {
                kind: Kind::Artin,
                strands: w.strands(),
            },
            got: w.presentation(),
        });
    }
    let letters = w
        .letters()
        .iter()
        .map(|l| Letter {
            atom: BklAtom {
                t: l.atom + 2,
                s: l.atom + 1,
            }
            .atom_id(),
            inverse: l.inverse,
        })
        .collect();
    Ok(BraidWord::from_letters_unchecked(
        Kind::Bkl,
        w.strands(),
        letters,
    ))
}

/// Artin letters (0-based atom ids) for a band generator.
pub(crate) fn band_in_artin(a: BklAtom) -> Vec<Letter> {
    let mut letters = Vec::with_capacity(2 * (a.t - a.s) - 1);
    for i in (a.s + 1..a.t).rev() {
        letters.push(Letter::positive(i - 1));
    }
    letters.push(Letter::positive(a.s - 1));
    for i in a.s + 1..a.t {
        letters.push(Letter::negative(i - 1));
    }
    letters
}

pub(crate) fn delta(n: usize) -> Perm {
    (0..n).map(|i| ((i + 1) % n) as u8).collect()
}

pub(crate) fn atom(n: usize, a: BklAtom) -> Perm {
    perm::transposition(n, a.s - 1, a.t - 1)
}

pub(crate) fn length(p: &[u8]) -> usize {
    p.len() - perm::cycle_count(p)
}

/// Ascending-cycle permutation for a partition given by block minima.
pub(crate) fn perm_from_labels(labels: &[u8]) -> Perm {
    let n = labels.len();
    let mut p: Perm = smallvec::smallvec![0; n];
    let mut last: Perm = smallvec::smallvec![u8::MAX; n];
    for (i, &l) in labels.iter().enumerate() {
        let l = l as usize;
        if last[l] != u8::MAX {
            p[last[l] as usize] = i as u8;
        }
        last[l] = i as u8;
    }
    for l in 0..n {
        if last[l] != u8::MAX {
            p[last[l] as usize] = l as u8;
        }
    }
    p
}

/// Two points of interleaving blocks, if the partition is crossing.
pub(crate) fn find_crossing(labels: &[u8]) -> Option<(usize, usize)> {
    let n = labels.len();
    let mut last = vec![0usize; n];
    for (i, &l) in labels.iter().enumerate() {
        last[l as usize] = i;
    }
    let mut open: Vec<u8> = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        if i == l as usize {
            open.push(l);
        } else if let Some(&top) = open.last() {
            if top != l {
                return Some((l as usize, top as usize));
            }
        }
        if last[l as usize] == i {
            open.pop();
        }
    }
    None
}

/// Whether a permutation is a product of ascending cycles over a
/// non-crossing partition.
pub(crate) fn is_simple(p: &[u8]) -> bool {
    let labels = perm::cycle_labels(p);
    if find_crossing(&labels).is_some() {
        return false;
    }
    perm_from_labels(&labels).as_slice() == p
}

pub(crate) fn left_divides(s: &[u8], t: &[u8]) -> bool {
    let ls = perm::cycle_labels(s);
    let lt = perm::cycle_labels(t);
    ls.iter().enumerate().all(|(i, &m)| lt[i] == lt[m as usize])
}

/// Common refinement of the two partitions.
pub(crate) fn meet(s: &[u8], t: &[u8]) -> Perm {
    let n = s.len();
    let ls = perm::cycle_labels(s);
    let lt = perm::cycle_labels(t);
    let mut out: Perm = smallvec::smallvec![0; n];
    // Walk each block of s in increasing order and split it by t-label.
    let mut rep = vec![u8::MAX; n];
    let mut stamp = vec![u8::MAX; n];
    for start in 0..n {
        if ls[start] as usize != start {
            continue;
        }
        let mut i = start;
        loop {
            let key = lt[i] as usize;
            if stamp[key] as usize != start {
                stamp[key] = start as u8;
                rep[key] = i as u8;
            }
            out[i] = rep[key];
            i = s[i] as usize;
            if i == start {
                break;
            }
        }
    }
    perm_from_labels(&out)
}

/// Smallest non-crossing partition coarser than both.
pub(crate) fn join(s: &[u8], t: &[u8]) -> Perm {
    let n = s.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    fn union(parent: &mut [usize], a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    for i in 0..n {
        union(&mut parent, i, s[i] as usize);
        union(&mut parent, i, t[i] as usize);
    }
    loop {
        let labels: Perm = (0..n).map(|i| find(&mut parent, i) as u8).collect();
        match find_crossing(&labels) {
            Some((a, b)) => union(&mut parent, a, b),
            None => return perm_from_labels(&labels),
        }
    }
}

/// Atom ids of a positive word: each block contributes its descending
/// band product.
pub(crate) fn atom_word(p: &[u8]) -> Vec<usize> {
    let labels = perm::cycle_labels(p);
    let mut word = Vec::with_capacity(length(p));
    for (start, &l) in labels.iter().enumerate() {
        if l as usize != start {
            continue;
        }
        let mut block = vec![start];
        let mut i = p[start] as usize;
        while i != start {
            block.push(i);
            i = p[i] as usize;
        }
        for pair in block.windows(2).rev() {
            word.push(
                BklAtom {
                    t: pair[1] + 1,
                    s: pair[0] + 1,
                }
                .atom_id(),
            );
        }
    }
    word
}
