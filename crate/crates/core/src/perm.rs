//! One-line permutations of strand positions.
//!
//! `p[i]` is the final position of the strand that starts at position `i`
//! (0-based). Braid words compose left to right, so the permutation of a
//! product `a·b` is `i ↦ b[a[i]]`.

use smallvec::SmallVec;

pub type Perm = SmallVec<[u8; 16]>;

pub fn identity(n: usize) -> Perm {
    (0..n).map(|i| i as u8).collect()
}

/// Permutation of the product `a·b`.
pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    debug_assert_eq!(a.len(), b.len());
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(p: &[u8]) -> Perm {
    let mut inv: Perm = smallvec::smallvec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// Permutation of `a⁻¹·b`.
pub fn left_quotient(a: &[u8], b: &[u8]) -> Perm {
    let inv = inverse(a);
    inv.iter().map(|&x| b[x as usize]).collect()
}

/// Permutation of `c⁻¹·p·c` given `c` and `c⁻¹`.
pub fn conjugate(p: &[u8], c: &[u8], c_inv: &[u8]) -> Perm {
    c_inv.iter().map(|&x| c[p[x as usize] as usize]).collect()
}

pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut p = identity(n);
    p.swap(a, b);
    p
}

pub fn is_identity(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x as usize)
}

pub fn is_permutation(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Minimum element of the cycle through each point.
pub fn cycle_labels(p: &[u8]) -> Perm {
    let n = p.len();
    let mut label: Perm = smallvec::smallvec![u8::MAX; n];
    for start in 0..n {
        if label[start] != u8::MAX {
            continue;
        }
        let mut i = start;
        loop {
            label[i] = start as u8;
            i = p[i] as usize;
            if i == start {
                break;
            }
        }
    }
    label
}

pub fn cycle_count(p: &[u8]) -> usize {
    cycle_labels(p)
        .iter()
        .enumerate()
        .filter(|&(i, &l)| i == l as usize)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        // s1 then s2 on three strands: strand 0 -> 1 -> 2.
        let s1 = transposition(3, 0, 1);
        let s2 = transposition(3, 1, 2);
        assert_eq!(compose(&s1, &s2).as_slice(), &[2, 0, 1]);
    }

    #[test]
    fn quotient_inverts_compose() {
        let a: Perm = [2u8, 0, 3, 1].into_iter().collect();
        let b: Perm = [1u8, 3, 0, 2].into_iter().collect();
        let ab = compose(&a, &b);
        assert_eq!(left_quotient(&a, &ab), b);
        assert!(is_identity(&compose(&a, &inverse(&a))));
    }

    #[test]
    fn cycles() {
        let p: Perm = [1u8, 2, 0, 3].into_iter().collect();
        assert_eq!(cycle_labels(&p).as_slice(), &[0, 0, 0, 3]);
        assert_eq!(cycle_count(&p), 2);
    }
}
