//! Greedy (left) and rational normal forms.
//!
//! A greedy form `δ^k p₁⋯p_r` is built letter by letter from the right:
//! `δ⁻¹` on the left only shifts `k`, and left multiplication of a
//! left-weighted sequence by a simple needs a single left-to-right pass of
//! local slides, since each new factor is `δ ∧ (rest)`.

use crate::error::Result;
use crate::simple::SimpleElement;
use crate::structure::Structure;
use crate::word::{BraidWord, Letter};

/// `δ^k p₁⋯p_r` with `p_i` left-weighted and none equal to 1 or δ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GreedyNF {
    pub k: i64,
    pub factors: Vec<SimpleElement>,
}

/// `u⁻¹v` with `u ∧ v = 1`; each part given by its greedy factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalNF {
    pub neg_factors: Vec<SimpleElement>,
    pub pos_factors: Vec<SimpleElement>,
}

impl GreedyNF {
    pub fn identity() -> Self {
        GreedyNF {
            k: 0,
            factors: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.factors.is_empty()
    }

    /// Number of simple factors, not counting δ powers.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

impl RationalNF {
    pub fn is_identity(&self) -> bool {
        self.neg_factors.is_empty() && self.pos_factors.is_empty()
    }

    /// Form of the inverse element: `(u⁻¹v)⁻¹ = v⁻¹u`.
    pub fn inverse(&self) -> Self {
        RationalNF {
            neg_factors: self.pos_factors.clone(),
            pos_factors: self.neg_factors.clone(),
        }
    }
}

impl Structure {
    pub fn greedy_nf(&self, w: &BraidWord) -> Result<GreedyNF> {
        self.check_word(w)?;
        let mut nf = GreedyNF::identity();
        for &letter in w.letters().iter().rev() {
            self.left_mul_letter(&mut nf, letter);
        }
        Ok(nf)
    }

    /// `nf ← a^{±1} · nf`.
    pub(crate) fn left_mul_letter(&self, nf: &mut GreedyNF, letter: Letter) {
        if letter.inverse {
            // a⁻¹ = δ⁻¹ ā
            let bar = self.atom_left_complement(letter.atom).clone();
            self.left_mul_simple(nf, bar);
            nf.k -= 1;
        } else {
            let a = self.atom(letter.atom).clone();
            self.left_mul_simple(nf, a);
        }
    }

    /// `nf ← s · nf`.
    pub(crate) fn left_mul_simple(&self, nf: &mut GreedyNF, s: SimpleElement) {
        if s.is_identity() {
            return;
        }
        // s δ^k = δ^k τ^k(s)
        let mut carry = self.raw_tau(&s, nf.k);
        let mut i = 0;
        loop {
            if i == nf.factors.len() {
                nf.factors.push(carry);
                break;
            }
            match self.raw_slide(&carry, &nf.factors[i]) {
                None => {
                    nf.factors.insert(i, carry);
                    break;
                }
                Some((head, rest)) => {
                    nf.factors[i] = head;
                    if rest.is_identity() {
                        break;
                    }
                    carry = rest;
                    i += 1;
                }
            }
        }
        let leading = nf.factors.iter().take_while(|f| *f == self.delta()).count();
        if leading > 0 {
            nf.factors.drain(..leading);
            nf.k += leading as i64;
        }
    }

    /// `nf ← nf · s`, by a right-to-left pass of local slides.
    pub(crate) fn right_mul_simple(&self, nf: &mut GreedyNF, s: SimpleElement) {
        if s.is_identity() {
            return;
        }
        nf.factors.push(s);
        let mut i = nf.factors.len() - 1;
        while i > 0 {
            match self.raw_slide(&nf.factors[i - 1], &nf.factors[i]) {
                None => break,
                Some((head, rest)) => {
                    nf.factors[i - 1] = head;
                    nf.factors[i] = rest;
                }
            }
            i -= 1;
        }
        self.strip(nf);
    }

    fn strip(&self, nf: &mut GreedyNF) {
        let leading = nf.factors.iter().take_while(|f| *f == self.delta()).count();
        if leading > 0 {
            nf.factors.drain(..leading);
            nf.k += leading as i64;
        }
        nf.factors.retain(|f| !f.is_identity());
    }

    /// `x · y` of two greedy forms.
    pub fn nf_product(&self, x: &GreedyNF, y: &GreedyNF) -> GreedyNF {
        // δ^{k1} P δ^{k2} Q = δ^{k1} · (P · δ^{k2} Q)
        let mut out = y.clone();
        for p in x.factors.iter().rev() {
            self.left_mul_simple(&mut out, p.clone());
        }
        out.k += x.k;
        out
    }

    /// `x · y` computed by right multiplication; agrees with
    /// [`Structure::nf_product`].
    pub fn nf_product_right(&self, x: &GreedyNF, y: &GreedyNF) -> GreedyNF {
        // δ^{k1} P δ^{k2} Q = δ^{k1+k2} τ^{k2}(P) Q
        let mut out = GreedyNF {
            k: x.k + y.k,
            factors: x.factors.iter().map(|p| self.raw_tau(p, y.k)).collect(),
        };
        for q in &y.factors {
            self.right_mul_simple(&mut out, q.clone());
        }
        out
    }

    /// `w · nf` for a word `w`.
    pub fn nf_left_mul_word(&self, w: &BraidWord, nf: &GreedyNF) -> Result<GreedyNF> {
        self.check_word(w)?;
        let mut out = nf.clone();
        for &letter in w.letters().iter().rev() {
            self.left_mul_letter(&mut out, letter);
        }
        Ok(out)
    }

    pub fn nf_inverse(&self, x: &GreedyNF) -> GreedyNF {
        let r = self.rational_nf(x).inverse();
        self.greedy_from_rational(&r)
    }

    /// Rational form from the greedy form: the first `min(m, r)` factors
    /// of `δ^{−m} p₁⋯p_r` fold into the negative part as right complements
    /// of their τ-conjugates.
    pub fn rational_nf(&self, g: &GreedyNF) -> RationalNF {
        if g.k >= 0 {
            let mut pos = vec![self.delta().clone(); g.k as usize];
            pos.extend(g.factors.iter().cloned());
            return RationalNF {
                neg_factors: Vec::new(),
                pos_factors: pos,
            };
        }
        let m = g.k.unsigned_abs() as usize;
        let r = g.factors.len();
        let folded = m.min(r);
        let mut neg = vec![self.delta().clone(); m.saturating_sub(r)];
        for j in (1..=folded).rev() {
            let conj = self.raw_tau(&g.factors[j - 1], (m - j) as i64);
            neg.push(self.right_complement(&conj));
        }
        RationalNF {
            neg_factors: neg,
            pos_factors: g.factors[folded..].to_vec(),
        }
    }

    pub fn greedy_from_rational(&self, r: &RationalNF) -> GreedyNF {
        let mut nf = GreedyNF {
            k: 0,
            factors: r.pos_factors.clone(),
        };
        self.strip(&mut nf);
        // u⁻¹ = s_k⁻¹ ⋯ s_1⁻¹ with s⁻¹ = δ⁻¹ (δ s⁻¹)
        for s in &r.neg_factors {
            let bar = self.left_complement(s);
            self.left_mul_simple(&mut nf, bar);
            nf.k -= 1;
        }
        nf
    }

    pub fn rational_nf_of_word(&self, w: &BraidWord) -> Result<RationalNF> {
        Ok(self.rational_nf(&self.greedy_nf(w)?))
    }

    /// Word equal to `δ^k p₁⋯p_r`.
    pub fn recompose(&self, nf: &GreedyNF) -> BraidWord {
        let delta_word = self.simple_word(self.delta());
        let mut letters: Vec<Letter> = Vec::new();
        let power = if nf.k >= 0 {
            delta_word.letters().to_vec()
        } else {
            delta_word.inverse().letters().to_vec()
        };
        for _ in 0..nf.k.unsigned_abs() {
            letters.extend_from_slice(&power);
        }
        for f in &nf.factors {
            letters.extend_from_slice(self.simple_word(f).letters());
        }
        BraidWord::from_letters_unchecked(self.kind(), self.strands(), letters)
    }

    /// Word equal to `(s₁⋯s_k)⁻¹ (p₁⋯p_l)`.
    pub fn recompose_rational(&self, nf: &RationalNF) -> BraidWord {
        let mut letters: Vec<Letter> = Vec::new();
        for s in nf.neg_factors.iter().rev() {
            letters.extend(self.simple_word(s).inverse().letters().iter().copied());
        }
        for p in &nf.pos_factors {
            letters.extend_from_slice(self.simple_word(p).letters());
        }
        BraidWord::from_letters_unchecked(self.kind(), self.strands(), letters)
    }

    /// Word problem: equality of greedy normal forms.
    pub fn equals(&self, x: &BraidWord, y: &BraidWord) -> Result<bool> {
        Ok(self.greedy_nf(x)? == self.greedy_nf(y)?)
    }

    /// Every adjacent pair left-weighted and no factor trivial or δ.
    pub fn is_valid_greedy(&self, nf: &GreedyNF) -> bool {
        nf.factors
            .iter()
            .all(|f| self.check_simple(f).is_ok() && !f.is_identity() && f != self.delta())
            && self.is_left_weighted_sequence(&nf.factors)
    }

    pub fn is_left_weighted_sequence(&self, factors: &[SimpleElement]) -> bool {
        factors
            .windows(2)
            .all(|pair| self.is_left_weighted(&pair[0], &pair[1]))
    }

    /// Both parts left-weighted, no identity factors, and `u ∧ v = 1` on
    /// the leading factors.
    pub fn is_valid_rational(&self, nf: &RationalNF) -> bool {
        let parts_ok = [&nf.neg_factors, &nf.pos_factors].iter().all(|part| {
            part.iter().all(|f| !f.is_identity()) && self.is_left_weighted_sequence(part)
        });
        let coprime = match (nf.neg_factors.first(), nf.pos_factors.first()) {
            (Some(u), Some(v)) => self.raw_meet(u, v).is_identity(),
            _ => true,
        };
        parts_ok && coprime
    }
}
