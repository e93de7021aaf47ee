//! Exact geodesic lengths by breadth-first search over the Cayley graph,
//! deduplicating elements by their greedy normal form.
//!
//! Only usable at small scale: ball sizes grow exponentially in the
//! radius. Radii are limited by a per-structure guard and the total number
//! of stored elements by [`NODE_BUDGET`].

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::normal_form::GreedyNF;
use crate::simple::{Kind, Presentation};
use crate::structure::Structure;
use crate::word::{BraidWord, Letter};

/// Largest number of elements a ball may hold.
pub const NODE_BUDGET: usize = 6_000_000;

/// Largest radius accepted for a structure.
pub fn default_guard(kind: Kind, strands: usize) -> usize {
    match (kind, strands) {
        (_, 2) => 64,
        (Kind::Artin, 3) => 10,
        (Kind::Bkl, 3) => 8,
        (_, 4) => 7,
        (Kind::Artin, 5) => 6,
        (Kind::Bkl, 5) => 5,
        _ => 4,
    }
}

type Key = Box<[u8]>;

/// Distances, sphere sizes, and the level of the first hit.
type Search = (HashMap<Key, u32>, Vec<usize>, Option<usize>);

fn encode(nf: &GreedyNF) -> Key {
    let n = nf.factors.first().map_or(0, |f| f.perm.len());
    let mut key = Vec::with_capacity(8 + n * nf.factors.len());
    key.extend_from_slice(&nf.k.to_le_bytes());
    for f in &nf.factors {
        key.extend_from_slice(&f.perm);
    }
    key.into_boxed_slice()
}

fn decode(st: &Structure, key: &[u8]) -> GreedyNF {
    let k = i64::from_le_bytes(key[..8].try_into().expect("8-byte prefix"));
    let factors = key[8..]
        .chunks(st.strands())
        .map(|c| st.simple_from_perm_unchecked(c.iter().copied().collect()))
        .collect();
    GreedyNF { k, factors }
}

/// All elements of geodesic length at most `radius`.
#[derive(Clone)]
pub struct BallIndex {
    structure: Structure,
    radius: usize,
    elements: HashMap<Key, u32>,
    sphere_sizes: Vec<usize>,
}

impl BallIndex {
    pub fn presentation(&self) -> Presentation {
        self.structure.presentation()
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements at each exact distance `0..=radius`.
    pub fn sphere_sizes(&self) -> &[usize] {
        &self.sphere_sizes
    }

    pub fn lookup(&self, nf: &GreedyNF) -> Option<usize> {
        self.elements.get(&encode(nf)).map(|&d| d as usize)
    }

    /// Geodesic length of a word's element, if it lies in the ball.
    pub fn lookup_word(&self, w: &BraidWord) -> Result<Option<usize>> {
        Ok(self.lookup(&self.structure.greedy_nf(w)?))
    }

    /// Elements with their geodesic lengths, in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = (GreedyNF, usize)> + '_ {
        self.elements
            .iter()
            .map(|(key, &d)| (decode(&self.structure, key), d as usize))
    }
}

impl std::fmt::Debug for BallIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BallIndex")
            .field("presentation", &self.presentation())
            .field("radius", &self.radius)
            .field("sphere_sizes", &self.sphere_sizes)
            .finish()
    }
}

fn check_radius(st: &Structure, radius: usize) -> Result<()> {
    let limit = default_guard(st.kind(), st.strands());
    if radius > limit {
        return Err(Error::GuardExceeded {
            what: "radius",
            value: radius,
            limit,
        });
    }
    Ok(())
}

fn signed_atoms(st: &Structure) -> Vec<Letter> {
    (0..st.atom_count())
        .flat_map(|a| [Letter::positive(a), Letter::negative(a)])
        .collect()
}

/// Level-synchronous search. Stops early once `stop` reports a hit on a
/// newly discovered element, returning its distance.
fn bfs(st: &Structure, radius: usize, mut stop: impl FnMut(&GreedyNF) -> bool) -> Result<Search> {
    let letters = signed_atoms(st);
    let mut seen: HashMap<Key, u32> = HashMap::new();
    let origin = GreedyNF::identity();
    seen.insert(encode(&origin), 0);
    let mut sizes = vec![1];
    if stop(&origin) {
        return Ok((seen, sizes, Some(0)));
    }
    let mut frontier = vec![origin];
    for level in 1..=radius {
        let expanded: Vec<Vec<(Key, GreedyNF)>> = frontier
            .par_iter()
            .map(|nf| {
                letters
                    .iter()
                    .map(|&l| {
                        let mut next = nf.clone();
                        st.left_mul_letter(&mut next, l);
                        (encode(&next), next)
                    })
                    .collect()
            })
            .collect();
        let mut next_frontier = Vec::new();
        for (key, nf) in expanded.into_iter().flatten() {
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, level as u32);
            if seen.len() > NODE_BUDGET {
                return Err(Error::GuardExceeded {
                    what: "ball size",
                    value: seen.len(),
                    limit: NODE_BUDGET,
                });
            }
            if stop(&nf) {
                sizes.push(next_frontier.len() + 1);
                return Ok((seen, sizes, Some(level)));
            }
            next_frontier.push(nf);
        }
        sizes.push(next_frontier.len());
        frontier = next_frontier;
    }
    Ok((seen, sizes, None))
}

pub fn enumerate_ball(st: &Structure, radius: usize) -> Result<BallIndex> {
    check_radius(st, radius)?;
    let (elements, sphere_sizes, _) = bfs(st, radius, |_| false)?;
    Ok(BallIndex {
        structure: st.clone(),
        radius,
        elements,
        sphere_sizes,
    })
}

/// Fewest signed atoms of the word's own structure representing `x`.
pub fn geodesic_length(x: &BraidWord, max_radius: usize) -> Result<usize> {
    let st = Structure::new(x.kind(), x.strands())?;
    check_radius(&st, max_radius)?;
    let target = st.greedy_nf(x)?;
    let (_, _, hit) = bfs(&st, max_radius, |nf| *nf == target)?;
    hit.ok_or(Error::NotFound(max_radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        let st = Structure::artin(3);
        let b0 = enumerate_ball(&st, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.lookup(&GreedyNF::identity()), Some(0));
        let b1 = enumerate_ball(&st, 1).unwrap();
        assert_eq!(b1.len(), 5);
        assert_eq!(b1.sphere_sizes(), &[1, 4]);
    }

    #[test]
    fn geodesic_examples() {
        let w = |idx: &[i32]| BraidWord::artin(3, idx).unwrap();
        assert_eq!(geodesic_length(&w(&[]), 6).unwrap(), 0);
        assert_eq!(geodesic_length(&w(&[1, 2, 1]), 6).unwrap(), 3);
        assert_eq!(geodesic_length(&w(&[2, 2, -1, -1]), 6).unwrap(), 4);
        assert_eq!(geodesic_length(&w(&[1, -1, 2]), 6).unwrap(), 1);
        assert_eq!(
            geodesic_length(&w(&[1, 1, 1]), 2).unwrap_err(),
            Error::NotFound(2)
        );
        assert!(matches!(
            geodesic_length(&w(&[]), 11),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn decode_round_trips() {
        let st = Structure::bkl(4);
        let ball = enumerate_ball(&st, 2).unwrap();
        for (nf, d) in ball.iter() {
            assert_eq!(ball.lookup(&nf), Some(d));
            assert!(st.is_valid_greedy(&nf));
        }
    }
}
