//! Greedy and rational lengths, the cross-structure estimator, and the
//! bound checks relating them to the geodesic length.
//!
//! The geodesic length of a mixed-sign word is deliberately not offered
//! here; [`crate::oracle`] computes it by brute force at small scale.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bkl::{self, BklAtom};
use crate::error::{Error, Result};
use crate::normal_form::{GreedyNF, RationalNF};
use crate::simple::{Kind, SimpleElement};
use crate::structure::Structure;
use crate::word::BraidWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthMetric {
    GreedyArtin,
    RationalArtin,
    GreedyBkl,
    RationalBkl,
}

impl LengthMetric {
    pub const ALL: [LengthMetric; 4] = [
        LengthMetric::GreedyArtin,
        LengthMetric::RationalArtin,
        LengthMetric::GreedyBkl,
        LengthMetric::RationalBkl,
    ];

    pub fn kind(self) -> Kind {
        match self {
            LengthMetric::GreedyArtin | LengthMetric::RationalArtin => Kind::Artin,
            LengthMetric::GreedyBkl | LengthMetric::RationalBkl => Kind::Bkl,
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(
            self,
            LengthMetric::RationalArtin | LengthMetric::RationalBkl
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            LengthMetric::GreedyArtin => "greedy-artin",
            LengthMetric::RationalArtin => "rational-artin",
            LengthMetric::GreedyBkl => "greedy-bkl",
            LengthMetric::RationalBkl => "rational-bkl",
        }
    }

    /// Length of the word's element, after translating it into the
    /// metric's structure.
    pub fn evaluate(self, w: &BraidWord) -> Result<u64> {
        let st = Structure::new(self.kind(), w.strands())?;
        let nf = st.greedy_nf(&w.to_kind(self.kind()))?;
        Ok(self.evaluate_nf(&st, &nf))
    }

    /// Length of a greedy form computed in `st`, which must be the metric's
    /// structure.
    pub fn evaluate_nf(self, st: &Structure, nf: &GreedyNF) -> u64 {
        debug_assert_eq!(st.kind(), self.kind());
        if self.is_rational() {
            rational_length_nf(st, nf)
        } else {
            greedy_length_nf(st, nf)
        }
    }
}

impl fmt::Display for LengthMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LengthMetric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        LengthMetric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown metric `{s}` (expected greedy-artin, rational-artin, greedy-bkl or rational-bkl)"
                )
            })
    }
}

/// Letter count of a positive word.
pub fn positive_length(w: &BraidWord) -> Result<usize> {
    if let Some(pos) = w.letters().iter().position(|l| l.inverse) {
        return Err(Error::NegativeLetter(pos));
    }
    Ok(w.len())
}

pub fn positive_length_simple(st: &Structure, s: &SimpleElement) -> Result<usize> {
    st.simple_length(s)
}

/// `|k|·ℓ(δ) + Σ ℓ(p_i)`.
pub fn greedy_length_nf(st: &Structure, nf: &GreedyNF) -> u64 {
    let factors: usize = nf.factors.iter().map(|f| st.raw_length(&f.perm)).sum();
    nf.k.unsigned_abs() * st.delta_atom_length() as u64 + factors as u64
}

/// Greedy length minus twice the lengths of the factors that fold into
/// the negative part.
pub fn rational_length_nf(st: &Structure, nf: &GreedyNF) -> u64 {
    let greedy = greedy_length_nf(st, nf);
    if nf.k >= 0 {
        return greedy;
    }
    let folded = (nf.k.unsigned_abs() as usize).min(nf.factors.len());
    let removed: usize = nf.factors[..folded]
        .iter()
        .map(|f| st.raw_length(&f.perm))
        .sum();
    greedy - 2 * removed as u64
}

/// Sum of factor lengths of the rational form itself.
pub fn rational_length_direct(st: &Structure, nf: &RationalNF) -> u64 {
    nf.neg_factors
        .iter()
        .chain(&nf.pos_factors)
        .map(|f| st.raw_length(&f.perm) as u64)
        .sum()
}

pub fn greedy_length(st: &Structure, w: &BraidWord) -> Result<u64> {
    Ok(greedy_length_nf(st, &st.greedy_nf(w)?))
}

pub fn rational_length(st: &Structure, w: &BraidWord) -> Result<u64> {
    Ok(rational_length_nf(st, &st.greedy_nf(w)?))
}

/// Rational BKL length of an Artin word.
pub fn cross_rational_bkl(x: &BraidWord) -> Result<u64> {
    if x.kind() != Kind::Artin {
        return Err(Error::StructureMismatch {
            expected: crate::Presentation {
                kind: Kind::Artin,
                strands: x.strands(),
            },
            got: x.presentation(),
        });
    }
    let st = Structure::new(Kind::Bkl, x.strands())?;
    rational_length(&st, &bkl::artin_to_bkl(x)?)
}

/// Largest Artin letter count among the band generators of B_n.
pub fn alpha(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::TooFewStrands(n));
    }
    let count = n * (n - 1) / 2;
    Ok((0..count)
        .map(|id| bkl::band_in_artin(BklAtom::from_id(id)).len())
        .max()
        .unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub x: BraidWord,
    pub ell_oracle: Option<usize>,
    pub ell_g: u64,
    pub ell_r: u64,
    pub ell_r_cross: u64,
    pub alpha: usize,
    pub violations: Vec<String>,
}

/// Checks, for an Artin word with known geodesic length `ℓ`:
/// `ℓ ≤ ℓ_R ≤ ℓ_G ≤ (2ℓ(Δ)−1)ℓ`, `ℓ_R ≤ (ℓ(Δ)−1)ℓ` and
/// `ℓ/(2N−3) ≤ ℓ_R² ≤ (N−2)ℓ`. Without `oracle_len` only `ℓ_R ≤ ℓ_G` and
/// the positive-word identities are checked.
///
/// The upper bounds with factor `ℓ(δ)−1` degenerate to zero when δ is an
/// atom (B_2); they are only checked when `ℓ(δ) ≥ 2`.
pub fn bounds_report(x: &BraidWord, oracle_len: Option<usize>) -> Result<BoundsReport> {
    let artin = Structure::new(Kind::Artin, x.strands())?;
    artin.check_word(x)?;
    let n = x.strands() as u64;
    let nf = artin.greedy_nf(x)?;
    let ell_g = greedy_length_nf(&artin, &nf);
    let ell_r = rational_length_nf(&artin, &nf);
    let ell_r_cross = cross_rational_bkl(x)?;
    let alpha = alpha(x.strands())?;
    let big_delta = artin.delta_atom_length() as u64;
    let small_delta = n - 1;

    let mut violations = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            violations.push(what);
        }
    };
    check(ell_r <= ell_g, format!("ℓ_R = {ell_r} > ℓ_G = {ell_g}"));
    if x.is_positive() {
        let len = x.len() as u64;
        check(
            ell_g == len,
            format!("positive word: ℓ_G = {ell_g} ≠ {len}"),
        );
        check(
            ell_r == len,
            format!("positive word: ℓ_R = {ell_r} ≠ {len}"),
        );
    }
    if let Some(ell) = oracle_len {
        let ell = ell as u64;
        check(ell <= ell_r, format!("ℓ = {ell} > ℓ_R = {ell_r}"));
        let g_bound = (2 * big_delta - 1) * ell;
        check(
            ell_g <= g_bound,
            format!("ℓ_G = {ell_g} > (2ℓ(Δ)−1)ℓ = {g_bound}"),
        );
        if big_delta >= 2 {
            let r_bound = (big_delta - 1) * ell;
            check(
                ell_r <= r_bound,
                format!("ℓ_R = {ell_r} > (ℓ(Δ)−1)ℓ = {r_bound}"),
            );
        }
        let lower = (2 * n).saturating_sub(3) * ell_r_cross;
        check(ell <= lower, format!("ℓ = {ell} > (2N−3)·ℓ_R² = {lower}"));
        check(
            ell <= alpha as u64 * ell_r_cross,
            format!("ℓ = {ell} > α·ℓ_R² = {}", alpha as u64 * ell_r_cross),
        );
        if small_delta >= 2 {
            let upper = (n - 2) * ell;
            check(
                ell_r_cross <= upper,
                format!("ℓ_R² = {ell_r_cross} > (N−2)ℓ = {upper}"),
            );
        }
    }
    Ok(BoundsReport {
        x: x.clone(),
        ell_oracle: oracle_len,
        ell_g,
        ell_r,
        ell_r_cross,
        alpha,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, idx: &[i32]) -> BraidWord {
        BraidWord::artin(n, idx).unwrap()
    }

    #[test]
    fn positive_lengths() {
        assert_eq!(positive_length(&w(3, &[])).unwrap(), 0);
        assert_eq!(
            positive_length(&w(3, &[1, -2])).unwrap_err(),
            Error::NegativeLetter(1)
        );
        let a4 = Structure::artin(4);
        let k4 = Structure::bkl(4);
        assert_eq!(positive_length_simple(&a4, a4.delta()).unwrap(), 6);
        assert_eq!(positive_length_simple(&k4, k4.delta()).unwrap(), 3);
    }

    #[test]
    fn greedy_length_of_negative_powers() {
        let st = Structure::artin(3);
        assert_eq!(greedy_length(&st, &w(3, &[])).unwrap(), 0);
        for m in 1..=5 {
            let x = w(3, &vec![-1; m]);
            assert_eq!(greedy_length(&st, &x).unwrap(), 5 * m as u64);
        }
    }

    #[test]
    fn rational_examples() {
        let st = Structure::artin(3);
        assert_eq!(rational_length(&st, &w(3, &[-1])).unwrap(), 1);
        assert_eq!(rational_length(&st, &w(3, &[2, 2, -1, -1])).unwrap(), 8);
        assert_eq!(rational_length(&st, &w(3, &[1, 2, 1, 1])).unwrap(), 4);
    }

    #[test]
    fn cross_examples() {
        for i in 1..4 {
            assert_eq!(cross_rational_bkl(&w(4, &[i])).unwrap(), 1);
        }
        // δ_BKL = a32 a21 = s2 s1
        assert_eq!(cross_rational_bkl(&w(3, &[2, 1])).unwrap(), 2);
        assert_eq!(cross_rational_bkl(&w(3, &[2, 2, -1, -1])).unwrap(), 4);
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(2).unwrap(), 1);
        assert_eq!(alpha(3).unwrap(), 3);
        for n in 2..=8 {
            assert!(alpha(n).unwrap() <= 2 * n - 3);
        }
    }

    #[test]
    fn report_examples() {
        let r = bounds_report(&w(4, &[1, 2, 3, 1]), Some(4)).unwrap();
        assert_eq!((r.ell_g, r.ell_r), (4, 4));
        assert!(r.violations.is_empty());
        let r = bounds_report(&w(3, &[2, 2, -1, -1]), Some(4)).unwrap();
        assert_eq!(r.ell_r, 8);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        let r = bounds_report(&w(3, &[2, 2, -1, -1]), Some(3)).unwrap();
        assert!(!r.violations.is_empty());
    }

    #[test]
    fn metric_names_round_trip() {
        for m in LengthMetric::ALL {
            assert_eq!(m.name().parse::<LengthMetric>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.name()));
        }
    }
}
