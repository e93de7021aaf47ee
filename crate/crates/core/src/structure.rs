//! Structure-generic Garside machinery on simple elements.
//!
//! Everything here is expressed through four structure-specific
//! primitives (meet, join, divisibility, length); the rest is permutation
//! algebra that is shared by both presentations.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::simple::{Kind, Presentation, SimpleElement};
use crate::word::{atom_count, BraidWord, Letter};
use crate::{artin, bkl};

pub const MAX_STRANDS: usize = 255;

/// Largest strand count accepted by [`Structure::simple_closure`].
pub const CLOSURE_GUARD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `result · s = δ`
    Left,
    /// `s · result = δ`
    Right,
}

/// One of the two Garside structures on B_N together with its precomputed
/// tables.
#[derive(Debug, Clone)]
pub struct Structure {
    kind: Kind,
    strands: usize,
    atoms: Vec<SimpleElement>,
    atom_left_complements: Vec<SimpleElement>,
    identity: SimpleElement,
    delta: SimpleElement,
    delta_len: usize,
    tau_table: Vec<usize>,
    /// `(δ^c, δ^{−c})` for `c` in `0..tau_order`.
    delta_powers: Vec<(Perm, Perm)>,
}

pub type StructureDescriptor = Structure;

impl Structure {
    pub fn new(kind: Kind, strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        if strands > MAX_STRANDS {
            return Err(Error::TooManyStrands {
                got: strands,
                max: MAX_STRANDS,
            });
        }
        let n = strands;
        let (delta_perm, atom_perms): (Perm, Vec<Perm>) = match kind {
            Kind::Artin => (
                artin::delta(n),
                (0..n - 1).map(|i| artin::atom(n, i)).collect(),
            ),
            Kind::Bkl => (
                bkl::delta(n),
                (0..atom_count(kind, n))
                    .map(|id| bkl::atom(n, bkl::BklAtom::from_id(id)))
                    .collect(),
            ),
        };
        let tau_order = match kind {
            Kind::Artin => 2,
            Kind::Bkl => n,
        };
        let mut delta_powers = Vec::with_capacity(tau_order);
        let mut power = perm::identity(n);
        for _ in 0..tau_order {
            let inv = perm::inverse(&power);
            delta_powers.push((power.clone(), inv));
            power = perm::compose(&power, &delta_perm);
        }
        let delta_len = match kind {
            Kind::Artin => artin::length(&delta_perm),
            Kind::Bkl => bkl::length(&delta_perm),
        };
        let atoms: Vec<SimpleElement> = atom_perms
            .into_iter()
            .map(|p| SimpleElement::from_raw(kind, p))
            .collect();
        let atom_left_complements = atoms
            .iter()
            .map(|a| {
                SimpleElement::from_raw(kind, perm::compose(&delta_perm, &perm::inverse(&a.perm)))
            })
            .collect();
        let mut structure = Structure {
            kind,
            strands: n,
            atoms,
            atom_left_complements,
            identity: SimpleElement::from_raw(kind, perm::identity(n)),
            delta: SimpleElement::from_raw(kind, delta_perm),
            delta_len,
            tau_table: Vec::new(),
            delta_powers,
        };
        structure.tau_table = (0..structure.atoms.len())
            .map(|i| {
                let image = structure.raw_tau(&structure.atoms[i], 1);
                structure
                    .atoms
                    .iter()
                    .position(|a| *a == image)
                    .expect("tau permutes the atoms")
            })
            .collect();
        Ok(structure)
    }

    /// Panicking shorthand for tests and examples.
    pub fn artin(strands: usize) -> Self {
        Self::new(Kind::Artin, strands).expect("valid strand count")
    }

    pub fn bkl(strands: usize) -> Self {
        Self::new(Kind::Bkl, strands).expect("valid strand count")
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            kind: self.kind,
            strands: self.strands,
        }
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[SimpleElement] {
        &self.atoms
    }

    pub fn atom(&self, id: usize) -> &SimpleElement {
        &self.atoms[id]
    }

    /// The simple `ā` with `ā · a = δ`, so that `a⁻¹ = δ⁻¹ ā`.
    pub fn atom_left_complement(&self, id: usize) -> &SimpleElement {
        &self.atom_left_complements[id]
    }

    pub fn identity(&self) -> SimpleElement {
        self.identity.clone()
    }

    pub fn delta(&self) -> &SimpleElement {
        &self.delta
    }

    pub fn delta_atom_length(&self) -> usize {
        self.delta_len
    }

    /// `tau_atom_table()[a]` is the atom `δ⁻¹ a δ`.
    pub fn tau_atom_table(&self) -> &[usize] {
        &self.tau_table
    }

    /// Period of τ on simple elements.
    pub fn tau_order(&self) -> usize {
        self.delta_powers.len()
    }

    pub fn check_simple(&self, s: &SimpleElement) -> Result<()> {
        if s.presentation() != self.presentation() {
            return Err(Error::StructureMismatch {
                expected: self.presentation(),
                got: s.presentation(),
            });
        }
        Ok(())
    }

    pub fn check_word(&self, w: &BraidWord) -> Result<()> {
        if w.presentation() != self.presentation() {
            return Err(Error::StructureMismatch {
                expected: self.presentation(),
                got: w.presentation(),
            });
        }
        Ok(())
    }

    pub(crate) fn simple_from_perm_unchecked(&self, p: Perm) -> SimpleElement {
        SimpleElement::from_raw(self.kind, p)
    }

    pub(crate) fn is_simple_perm(&self, p: &[u8]) -> bool {
        match self.kind {
            Kind::Artin => true,
            Kind::Bkl => bkl::is_simple(p),
        }
    }

    /// Simple element inducing the given 1-based one-line permutation.
    pub fn simple_from_permutation(&self, one_line: &[usize]) -> Result<SimpleElement> {
        let invalid = |reason: String| Error::InvalidSimple {
            presentation: self.presentation(),
            reason,
        };
        if one_line.len() != self.strands {
            return Err(invalid(format!("expected {} entries", self.strands)));
        }
        if one_line.iter().any(|&x| x == 0 || x > self.strands) {
            return Err(invalid("entry out of range".into()));
        }
        let p: Perm = one_line.iter().map(|&x| (x - 1) as u8).collect();
        if !perm::is_permutation(&p) {
            return Err(invalid("not a permutation".into()));
        }
        if !self.is_simple_perm(&p) {
            return Err(invalid(
                "permutation is not a product of ascending cycles on a non-crossing partition"
                    .into(),
            ));
        }
        Ok(SimpleElement::from_raw(self.kind, p))
    }

    /// Simple element represented by a positive word of atom ids, if it is
    /// one.
    pub fn simple_from_atoms(&self, atoms: &[usize]) -> Result<SimpleElement> {
        let mut acc = self.identity();
        for &a in atoms {
            if a >= self.atoms.len() {
                return Err(Error::AtomOutOfRange {
                    atom: a,
                    presentation: self.presentation(),
                });
            }
            acc = self.product_simple(&acc, &self.atoms[a])?;
        }
        Ok(acc)
    }

    /// `s · t` when it is simple with `ℓ(s) + ℓ(t) = ℓ(st)`.
    pub fn product_simple(&self, s: &SimpleElement, t: &SimpleElement) -> Result<SimpleElement> {
        self.check_simple(s)?;
        self.check_simple(t)?;
        let p = perm::compose(&s.perm, &t.perm);
        if !self.is_simple_perm(&p)
            || self.raw_length(&p) != self.raw_length(&s.perm) + self.raw_length(&t.perm)
        {
            return Err(Error::InvalidSimple {
                presentation: self.presentation(),
                reason: "product is not a simple element".into(),
            });
        }
        Ok(SimpleElement::from_raw(self.kind, p))
    }

    pub(crate) fn raw_length(&self, p: &[u8]) -> usize {
        match self.kind {
            Kind::Artin => artin::length(p),
            Kind::Bkl => bkl::length(p),
        }
    }

    /// Number of atoms in any positive expression of `s`.
    pub fn simple_length(&self, s: &SimpleElement) -> Result<usize> {
        self.check_simple(s)?;
        Ok(self.raw_length(&s.perm))
    }

    pub fn left_divides(&self, s: &SimpleElement, t: &SimpleElement) -> Result<bool> {
        self.check_simple(s)?;
        self.check_simple(t)?;
        Ok(self.raw_left_divides(s, t))
    }

    pub(crate) fn raw_left_divides(&self, s: &SimpleElement, t: &SimpleElement) -> bool {
        match self.kind {
            Kind::Artin => artin::left_divides(&s.perm, &t.perm),
            Kind::Bkl => bkl::left_divides(&s.perm, &t.perm),
        }
    }

    pub fn meet(&self, s: &SimpleElement, t: &SimpleElement) -> Result<SimpleElement> {
        self.check_simple(s)?;
        self.check_simple(t)?;
        Ok(self.raw_meet(s, t))
    }

    pub(crate) fn raw_meet(&self, s: &SimpleElement, t: &SimpleElement) -> SimpleElement {
        let p = match self.kind {
            Kind::Artin => artin::meet(&s.perm, &t.perm),
            Kind::Bkl => bkl::meet(&s.perm, &t.perm),
        };
        SimpleElement::from_raw(self.kind, p)
    }

    pub fn join(&self, s: &SimpleElement, t: &SimpleElement) -> Result<SimpleElement> {
        self.check_simple(s)?;
        self.check_simple(t)?;
        Ok(self.raw_join(s, t))
    }

    pub(crate) fn raw_join(&self, s: &SimpleElement, t: &SimpleElement) -> SimpleElement {
        let p = match self.kind {
            Kind::Artin => artin::join(&s.perm, &t.perm, &self.delta.perm),
            Kind::Bkl => bkl::join(&s.perm, &t.perm),
        };
        SimpleElement::from_raw(self.kind, p)
    }

    pub fn complement(&self, s: &SimpleElement, side: Side) -> Result<SimpleElement> {
        self.check_simple(s)?;
        Ok(match side {
            Side::Right => self.right_complement(s),
            Side::Left => self.left_complement(s),
        })
    }

    /// `s⁻¹δ`
    pub(crate) fn right_complement(&self, s: &SimpleElement) -> SimpleElement {
        SimpleElement::from_raw(self.kind, perm::left_quotient(&s.perm, &self.delta.perm))
    }

    /// `δs⁻¹`
    pub(crate) fn left_complement(&self, s: &SimpleElement) -> SimpleElement {
        SimpleElement::from_raw(
            self.kind,
            perm::compose(&self.delta.perm, &perm::inverse(&s.perm)),
        )
    }

    /// `s⁻¹t` for `s` left-dividing `t`.
    pub fn quotient_simple(&self, s: &SimpleElement, t: &SimpleElement) -> Result<SimpleElement> {
        if !self.left_divides(s, t)? {
            return Err(Error::NotADivisor);
        }
        Ok(self.raw_quotient(s, t))
    }

    pub(crate) fn raw_quotient(&self, s: &SimpleElement, t: &SimpleElement) -> SimpleElement {
        SimpleElement::from_raw(self.kind, perm::left_quotient(&s.perm, &t.perm))
    }

    pub(crate) fn raw_product(&self, s: &SimpleElement, t: &SimpleElement) -> SimpleElement {
        SimpleElement::from_raw(self.kind, perm::compose(&s.perm, &t.perm))
    }

    /// `τ^k(s) = δ^{−k} s δ^k`.
    pub fn tau_power(&self, s: &SimpleElement, k: i64) -> Result<SimpleElement> {
        self.check_simple(s)?;
        Ok(self.raw_tau(s, k))
    }

    pub(crate) fn raw_tau(&self, s: &SimpleElement, k: i64) -> SimpleElement {
        let c = k.rem_euclid(self.delta_powers.len() as i64) as usize;
        if c == 0 {
            return s.clone();
        }
        let (d, d_inv) = &self.delta_powers[c];
        SimpleElement::from_raw(self.kind, perm::conjugate(&s.perm, d, d_inv))
    }

    /// τ^k applied letter by letter.
    pub fn tau_power_word(&self, w: &BraidWord, k: i64) -> Result<BraidWord> {
        self.check_word(w)?;
        let mut letters = w.letters().to_vec();
        let c = k.rem_euclid(self.tau_order() as i64);
        for _ in 0..c {
            for l in &mut letters {
                l.atom = self.tau_table[l.atom];
            }
        }
        BraidWord::new(self.kind, self.strands, letters)
    }

    /// Makes the pair left-weighted without changing the product: moves
    /// `b = (s⁻¹δ) ∧ p` from `p` onto `s`.
    pub fn local_slide(
        &self,
        s: &SimpleElement,
        p: &SimpleElement,
    ) -> Result<(SimpleElement, SimpleElement)> {
        self.check_simple(s)?;
        self.check_simple(p)?;
        Ok(self
            .raw_slide(s, p)
            .unwrap_or_else(|| (s.clone(), p.clone())))
    }

    /// `None` when the pair is already left-weighted.
    pub(crate) fn raw_slide(
        &self,
        s: &SimpleElement,
        p: &SimpleElement,
    ) -> Option<(SimpleElement, SimpleElement)> {
        let b = self.raw_meet(&self.right_complement(s), p);
        if b.is_identity() {
            return None;
        }
        Some((self.raw_product(s, &b), self.raw_quotient(&b, p)))
    }

    /// Whether `(s, p)` satisfies `p ∧ (s⁻¹δ) = 1`.
    pub fn is_left_weighted(&self, s: &SimpleElement, p: &SimpleElement) -> bool {
        self.raw_meet(&self.right_complement(s), p).is_identity()
    }

    /// Positive word of atoms for a simple element.
    pub fn simple_word(&self, s: &SimpleElement) -> BraidWord {
        let ids = match self.kind {
            Kind::Artin => artin::atom_word(&s.perm),
            Kind::Bkl => bkl::atom_word(&s.perm),
        };
        BraidWord::from_letters_unchecked(
            self.kind,
            self.strands,
            ids.into_iter().map(Letter::positive).collect(),
        )
    }

    /// Closes the atoms under `a ∨ b` and `a \ b = a⁻¹(a ∨ b)`.
    pub fn simple_closure(&self) -> Result<Vec<SimpleElement>> {
        if self.strands > CLOSURE_GUARD {
            return Err(Error::GuardExceeded {
                what: "strand count for simple closure",
                value: self.strands,
                limit: CLOSURE_GUARD,
            });
        }
        let mut elements: Vec<SimpleElement> = Vec::new();
        let mut seen: HashSet<SimpleElement> = HashSet::new();
        let mut queue: Vec<SimpleElement> = Vec::new();
        for a in &self.atoms {
            if seen.insert(a.clone()) {
                queue.push(a.clone());
            }
        }
        while let Some(x) = queue.pop() {
            elements.push(x.clone());
            let mut fresh = Vec::new();
            for y in &elements {
                let j = self.raw_join(&x, y);
                fresh.push(self.raw_quotient(&x, &j));
                fresh.push(self.raw_quotient(y, &j));
                fresh.push(j);
            }
            for z in fresh {
                if seen.insert(z.clone()) {
                    queue.push(z);
                }
            }
        }
        elements.sort();
        Ok(elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> Structure {
        Structure::artin(3)
    }

    #[test]
    fn meet_examples() {
        let st = b3();
        let s12 = st.simple_from_atoms(&[0, 1]).unwrap();
        let s121 = st.simple_from_atoms(&[0, 1, 0]).unwrap();
        assert_eq!(&s121, st.delta());
        assert_eq!(st.meet(&s12, &s121).unwrap(), s12);
        for s in st.simple_closure().unwrap() {
            assert_eq!(st.meet(&st.identity(), &s).unwrap(), st.identity());
            assert_eq!(st.meet(st.delta(), &s).unwrap(), s);
            assert_eq!(st.join(&st.identity(), &s).unwrap(), s);
            assert_eq!(st.join(&s, st.delta()).unwrap(), *st.delta());
        }
    }

    #[test]
    fn join_of_atoms_is_delta() {
        let st = b3();
        assert_eq!(st.join(st.atom(0), st.atom(1)).unwrap(), *st.delta());
    }

    #[test]
    fn complements() {
        let st = b3();
        assert_eq!(
            st.complement(&st.identity(), Side::Right).unwrap(),
            *st.delta()
        );
        assert_eq!(
            st.complement(st.delta(), Side::Left).unwrap(),
            st.identity()
        );
        let s12 = st.simple_from_atoms(&[0, 1]).unwrap();
        assert_eq!(st.complement(st.atom(0), Side::Left).unwrap(), s12);
        assert_eq!(st.atom_left_complement(0), &s12);
    }

    #[test]
    fn quotients() {
        let st = b3();
        let s21 = st.simple_from_atoms(&[1, 0]).unwrap();
        assert_eq!(st.quotient_simple(st.atom(0), st.delta()).unwrap(), s21);
        assert_eq!(st.quotient_simple(&st.identity(), &s21).unwrap(), s21);
        assert_eq!(st.quotient_simple(&s21, &s21).unwrap(), st.identity());
        assert_eq!(
            st.quotient_simple(st.atom(0), &s21).unwrap_err(),
            Error::NotADivisor
        );
    }

    #[test]
    fn tau_examples() {
        let b4 = Structure::artin(4);
        assert_eq!(b4.tau_power(b4.atom(0), 1).unwrap(), *b4.atom(2));
        for k in -5..5 {
            assert_eq!(b4.tau_power(b4.delta(), k).unwrap(), *b4.delta());
        }
        let k3 = Structure::bkl(3);
        // a21 is atom 0, a32 is atom 2
        assert_eq!(k3.tau_power(k3.atom(0), 1).unwrap(), *k3.atom(2));
    }

    #[test]
    fn slide_examples() {
        let st = b3();
        let s21 = st.simple_from_atoms(&[1, 0]).unwrap();
        assert_eq!(
            st.local_slide(st.atom(0), &s21).unwrap(),
            (st.delta().clone(), st.identity())
        );
        assert_eq!(
            st.local_slide(st.delta(), &s21).unwrap(),
            (st.delta().clone(), s21.clone())
        );
        assert_eq!(
            st.local_slide(&s21, &st.identity()).unwrap(),
            (s21, st.identity())
        );
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(Structure::artin(2).simple_closure().unwrap().len(), 2);
        assert_eq!(b3().simple_closure().unwrap().len(), 6);
        assert_eq!(Structure::bkl(3).simple_closure().unwrap().len(), 5);
        assert!(matches!(
            Structure::artin(9).simple_closure(),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn tau_table_periodic() {
        for n in 2..=8 {
            for st in [Structure::artin(n), Structure::bkl(n)] {
                let reps = match st.kind() {
                    Kind::Artin => n * (n - 1),
                    Kind::Bkl => 2 * n,
                };
                let table = st.tau_atom_table();
                let mut seen = vec![false; table.len()];
                for &t in table {
                    assert!(!seen[t]);
                    seen[t] = true;
                }
                for a in 0..table.len() {
                    let mut x = a;
                    for _ in 0..reps {
                        x = table[x];
                    }
                    assert_eq!(x, a);
                }
            }
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Structure::artin(3);
        let b = Structure::bkl(3);
        assert!(matches!(
            a.meet(a.atom(0), b.atom(0)),
            Err(Error::StructureMismatch { .. })
        ));
    }
}
