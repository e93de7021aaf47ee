#![allow(dead_code)]

use garside_core::{BraidWord, Kind, Letter};
use rand::Rng;

pub fn atom_count(kind: Kind, n: usize) -> usize {
    match kind {
        Kind::Artin => n - 1,
        Kind::Bkl => n * (n - 1) / 2,
    }
}

/// Uniform mixed-sign word of exactly `len` letters.
pub fn random_word(rng: &mut impl Rng, kind: Kind, n: usize, len: usize) -> BraidWord {
    let m = atom_count(kind, n);
    let letters = (0..len)
        .map(|_| Letter {
            atom: rng.gen_range(0..m),
            inverse: rng.gen_bool(0.5),
        })
        .collect();
    BraidWord::new(kind, n, letters).unwrap()
}

pub fn random_positive_word(rng: &mut impl Rng, kind: Kind, n: usize, len: usize) -> BraidWord {
    let m = atom_count(kind, n);
    let letters = (0..len)
        .map(|_| Letter::positive(rng.gen_range(0..m)))
        .collect();
    BraidWord::new(kind, n, letters).unwrap()
}

/// Image in the symmetric group as a 0-based one-line permutation,
/// computed letter by letter from transpositions.
pub fn induced_permutation(w: &BraidWord) -> Vec<usize> {
    let artin = w.to_kind(Kind::Artin);
    // pos[strand] = current position of the strand starting at `strand`
    let n = w.strands();
    let mut at: Vec<usize> = (0..n).collect(); // at[position] = strand
    for l in artin.letters() {
        at.swap(l.atom, l.atom + 1);
    }
    let mut out = vec![0; n];
    for (position, &strand) in at.iter().enumerate() {
        out[strand] = position;
    }
    out
}

/// All set partitions of `{1..n}` as sorted blocks, via restricted growth
/// strings.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        n: usize,
        labels: &mut Vec<usize>,
        max: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == n {
            let mut blocks = vec![Vec::new(); max];
            for (point, &b) in labels.iter().enumerate() {
                blocks[b].push(point + 1);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            labels.push(b);
            rec(i + 1, n, labels, max.max(b + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn is_noncrossing(blocks: &[Vec<usize>]) -> bool {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut label = vec![0; n + 1];
    for (i, b) in blocks.iter().enumerate() {
        for &p in b {
            label[p] = i;
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    if label[a] == label[c] && label[b] == label[d] && label[a] != label[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
