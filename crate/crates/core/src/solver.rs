//! Memory-length search: a width-`M` beam over generator sequences that
//! peels one generator per step off the left of the target and keeps the
//! sequences whose residual is shortest under a length function.
//!
//! Equations `w(x₁..x_k, p₁..p_l) = c` with each `x_i` ranging over a
//! finitely generated subgroup are solved by peeling known parameters off
//! the left, running the search for the leading variable, and recursing
//! into the best `N_i` candidates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lengths::LengthMetric;
use crate::normal_form::GreedyNF;
use crate::simple::Kind;
use crate::structure::Structure;
use crate::syntax::{format_word, parse_word};
use crate::word::{BraidWord, Letter};

/// `g_j^{±1}`, with `generator` the 0-based index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub generator: usize,
    pub inverse: bool,
}

impl Move {
    pub fn inverted(self) -> Self {
        Move {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.inverse { '-' } else { '+' };
        write!(f, "({},{sign})", self.generator + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Expression length of the leading variable.
    pub length: usize,
    pub memory: usize,
    pub metric: LengthMetric,
    /// Per-variable number of candidates explored; missing entries use
    /// `memory`.
    #[serde(default)]
    pub cutoffs: Option<Vec<usize>>,
    #[serde(default)]
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(length: usize, memory: usize, metric: LengthMetric) -> Self {
        SolverConfig {
            length,
            memory,
            metric,
            cutoffs: None,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.memory == 0 {
            return Err(Error::InvalidConfig("memory must be at least 1".into()));
        }
        if let Some(cutoffs) = &self.cutoffs {
            if let Some(&bad) = cutoffs.iter().find(|&&c| c == 0 || c > self.memory) {
                return Err(Error::InvalidConfig(format!(
                    "cutoff {bad} outside 1..={}",
                    self.memory
                )));
            }
        }
        Ok(())
    }

    fn cutoff(&self, depth: usize) -> usize {
        self.cutoffs
            .as_ref()
            .and_then(|c| c.get(depth).copied())
            .unwrap_or(self.memory)
    }
}

/// A move sequence `g_{j₁}^{ε₁}⋯g_{j_s}^{ε_s}` with the residual
/// `(g_{j₁}^{ε₁}⋯g_{j_s}^{ε_s})⁻¹ c` and its length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoredSequence {
    pub moves: Vec<Move>,
    pub score: u64,
    pub residual: GreedyNF,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Ascending by `(score, insertion order)`.
    pub beam: Vec<ScoredSequence>,
    /// Length evaluations of extended sequences; scoring the empty
    /// sequence is not counted.
    pub evaluations: u64,
}

/// Upper bound on operations per search: `n(n+4m+1)M/2`.
pub fn evaluation_bound(length: usize, generators: usize, memory: usize) -> u64 {
    let (n, m, mm) = (length as u64, generators as u64, memory as u64);
    n * (n + 4 * m + 1) * mm / 2
}

pub fn memory_length_search(
    c: &BraidWord,
    gens: &[BraidWord],
    cfg: &SolverConfig,
) -> Result<SearchOutcome> {
    cfg.validate()?;
    if gens.is_empty() {
        return Err(Error::InvalidConfig("no generators".into()));
    }
    for g in gens {
        c.check_same(g)?;
    }
    let kind = cfg.metric.kind();
    let st = Structure::new(kind, c.strands())?;
    let target = st.greedy_nf(&c.to_kind(kind))?;
    let peel = peel_words(gens, kind);
    Ok(search_nf(&st, &target, &peel, cfg))
}

/// `g⁻¹` and `g` per generator, in the metric's structure; peeling move
/// `(j, ε)` left-multiplies by `g_j^{−ε}`.
fn peel_words(gens: &[BraidWord], kind: Kind) -> Vec<[BraidWord; 2]> {
    gens.iter()
        .map(|g| {
            let g = g.to_kind(kind);
            [g.inverse(), g]
        })
        .collect()
}

fn search_nf(
    st: &Structure,
    target: &GreedyNF,
    peel: &[[BraidWord; 2]],
    cfg: &SolverConfig,
) -> SearchOutcome {
    let metric = cfg.metric;
    let mut beam = vec![ScoredSequence {
        moves: Vec::new(),
        score: metric.evaluate_nf(st, target),
        residual: target.clone(),
    }];
    let mut evaluations = 0u64;
    let moves: Vec<Move> = (0..peel.len())
        .flat_map(|j| {
            [false, true].map(|inverse| Move {
                generator: j,
                inverse,
            })
        })
        .collect();
    for _ in 0..cfg.length {
        let extended: Vec<Vec<ScoredSequence>> = beam
            .par_iter()
            .map(|seq| {
                moves
                    .iter()
                    .map(|&mv| {
                        let w = &peel[mv.generator][mv.inverse as usize];
                        let residual = st
                            .nf_left_mul_word(w, &seq.residual)
                            .expect("generator in search structure");
                        let mut moves = seq.moves.clone();
                        moves.push(mv);
                        ScoredSequence {
                            moves,
                            score: metric.evaluate_nf(st, &residual),
                            residual,
                        }
                    })
                    .collect()
            })
            .collect();
        let mut candidates: Vec<ScoredSequence> = extended.into_iter().flatten().collect();
        evaluations += candidates.len() as u64;
        candidates.sort_by_key(|s| s.score);
        candidates.truncate(cfg.memory);
        beam = candidates;
    }
    SearchOutcome { beam, evaluations }
}

/// Word `g_{j₁}^{ε₁}⋯g_{j_s}^{ε_s}`.
pub fn expression_word(gens: &[BraidWord], moves: &[Move]) -> Result<BraidWord> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidConfig("no generators".into()))?;
    let mut out = BraidWord::identity(first.kind(), first.strands());
    for mv in moves {
        let g = gens.get(mv.generator).ok_or_else(|| {
            Error::InvalidConfig(format!("generator {} missing", mv.generator + 1))
        })?;
        let g = if mv.inverse { g.inverse() } else { g.clone() };
        out = out.concat(&g)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    /// 0-based variable index.
    Var(usize),
    /// 0-based parameter index.
    Param(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Token {
    pub term: Term,
    pub inverse: bool,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(i) => write!(f, "x{}", i + 1)?,
            Term::Param(j) => write!(f, "p{}", j + 1)?,
        }
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEquation(format!("bad template token `{s}`"));
        let (body, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (ctor, digits): (fn(usize) -> Term, &str) = if let Some(d) = body.strip_prefix('x') {
            (Term::Var, d)
        } else if let Some(d) = body.strip_prefix('p') {
            (Term::Param, d)
        } else {
            return Err(bad());
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Token {
            term: ctor(index - 1),
            inverse,
        })
    }
}

/// `w(x₁..x_k, p₁..p_l) = c` with `x_i ∈ ⟨generators[i]⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSpec {
    pub template: Vec<Token>,
    pub generators: Vec<Vec<BraidWord>>,
    pub parameters: Vec<BraidWord>,
    pub target: BraidWord,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationJson {
    template: Vec<String>,
    generators: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    parameters: BTreeMap<String, String>,
    target: String,
}

fn numbered(
    map_name: &str,
    prefix: char,
    keys: impl Iterator<Item = String>,
) -> Result<Vec<(usize, String)>> {
    keys.map(|k| {
        let index = k
            .strip_prefix(prefix)
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| Error::InvalidEquation(format!("bad key `{k}` in {map_name}")))?;
        Ok((index - 1, k))
    })
    .collect()
}

/// Smallest strand count accommodating every Artin atom in `texts`.
fn infer_strands(texts: &[&str]) -> Result<usize> {
    let mut strands = 2;
    for t in texts {
        if t.contains('D') {
            return Err(Error::InvalidEquation(
                "words using D need an explicit strand count".into(),
            ));
        }
        let w = parse_word(t, Kind::Artin, crate::structure::MAX_STRANDS)?;
        if let Some(max) = w.letters().iter().map(|l| l.atom).max() {
            strands = strands.max(max + 2);
        }
    }
    Ok(strands)
}

impl EquationSpec {
    pub fn new(
        template: Vec<Token>,
        generators: Vec<Vec<BraidWord>>,
        parameters: Vec<BraidWord>,
        target: BraidWord,
    ) -> Result<Self> {
        let eq = EquationSpec {
            template,
            generators,
            parameters,
            target,
        };
        eq.validate()?;
        Ok(eq)
    }

    pub fn validate(&self) -> Result<()> {
        for pair in self.template.windows(2) {
            if pair[0].term == pair[1].term && pair[0].inverse != pair[1].inverse {
                return Err(Error::InvalidEquation(format!(
                    "template is not freely reduced at `{} {}`",
                    pair[0], pair[1]
                )));
            }
        }
        for tok in &self.template {
            match tok.term {
                Term::Var(i) if i >= self.generators.len() => {
                    return Err(Error::InvalidEquation(format!(
                        "no generators for x{}",
                        i + 1
                    )))
                }
                Term::Param(j) if j >= self.parameters.len() => {
                    return Err(Error::InvalidEquation(format!(
                        "parameter p{} missing",
                        j + 1
                    )))
                }
                _ => {}
            }
        }
        for (i, gens) in self.generators.iter().enumerate() {
            if gens.is_empty() && self.template.iter().any(|t| t.term == Term::Var(i)) {
                return Err(Error::InvalidEquation(format!(
                    "x{} has no generators",
                    i + 1
                )));
            }
        }
        for w in self.generators.iter().flatten().chain(&self.parameters) {
            self.target.check_same(w)?;
        }
        Ok(())
    }

    pub fn variable_count(&self) -> usize {
        self.generators.len()
    }

    /// Parses the JSON form. Words are read in `kind`'s syntax (either atom
    /// notation is accepted); without `strands` the count is inferred from
    /// the largest atom used.
    pub fn from_json(text: &str, kind: Kind, strands: Option<usize>) -> Result<Self> {
        let raw: EquationJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidEquation(e.to_string()))?;
        let strands = match strands {
            Some(n) => n,
            None => {
                let mut texts: Vec<&str> = vec![&raw.target];
                texts.extend(raw.parameters.values().map(String::as_str));
                texts.extend(raw.generators.values().flatten().map(String::as_str));
                infer_strands(&texts)?
            }
        };
        let template = raw
            .template
            .iter()
            .map(|t| t.parse())
            .collect::<Result<Vec<Token>>>()?;

        let var_keys = numbered("generators", 'x', raw.generators.keys().cloned())?;
        let var_count = var_keys.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut generators = vec![Vec::new(); var_count];
        for (i, key) in var_keys {
            generators[i] = raw.generators[&key]
                .iter()
                .map(|w| parse_word(w, kind, strands).map_err(Error::from))
                .collect::<Result<_>>()?;
        }

        let param_keys = numbered("parameters", 'p', raw.parameters.keys().cloned())?;
        let param_count = param_keys.iter().map(|(j, _)| j + 1).max().unwrap_or(0);
        let mut parameters = vec![None; param_count];
        for (j, key) in param_keys {
            parameters[j] = Some(parse_word(&raw.parameters[&key], kind, strands)?);
        }
        let parameters = parameters
            .into_iter()
            .enumerate()
            .map(|(j, p)| {
                p.ok_or_else(|| Error::InvalidEquation(format!("parameter p{} missing", j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;

        let target = parse_word(&raw.target, kind, strands)?;
        Self::new(template, generators, parameters, target)
    }

    pub fn to_json(&self) -> String {
        let raw = EquationJson {
            template: self.template.iter().map(|t| t.to_string()).collect(),
            generators: self
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| (format!("x{}", i + 1), g.iter().map(format_word).collect()))
                .collect(),
            parameters: self
                .parameters
                .iter()
                .enumerate()
                .map(|(j, p)| (format!("p{}", j + 1), format_word(p)))
                .collect(),
            target: format_word(&self.target),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    /// `w(x, p)` as a word.
    pub fn substitute(&self, values: &[BraidWord]) -> Result<BraidWord> {
        let mut out = BraidWord::identity(self.target.kind(), self.target.strands());
        for tok in &self.template {
            let w = match tok.term {
                Term::Var(i) => values
                    .get(i)
                    .ok_or_else(|| Error::InvalidEquation(format!("no value for x{}", i + 1)))?,
                Term::Param(j) => &self.parameters[j],
            };
            let w = if tok.inverse { w.inverse() } else { w.clone() };
            out = out.concat(&w)?;
        }
        Ok(out)
    }

    /// Whether `values` satisfy the equation.
    pub fn is_solution(&self, values: &[BraidWord]) -> Result<bool> {
        let st = Structure::new(self.target.kind(), self.target.strands())?;
        st.equals(&self.target, &self.substitute(values)?)
    }
}

/// Values for every variable, with the expressions found for them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<BraidWord>,
    /// Moves over each variable's generators with `x_i = expression`.
    pub expressions: Vec<Vec<Move>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub assignment: Assignment,
    pub evaluations: u64,
    /// Leaf combinations of candidates tried.
    pub combinations: u64,
}

/// First candidate for the single unknown of `eq` that satisfies it.
pub fn verify_candidates(
    cands: &[ScoredSequence],
    eq: &EquationSpec,
) -> Result<Option<Assignment>> {
    if eq.variable_count() != 1 {
        return Err(Error::InvalidEquation(format!(
            "expected exactly one variable, found {}",
            eq.variable_count()
        )));
    }
    for cand in cands {
        let z = expression_word(&eq.generators[0], &cand.moves)?;
        let inverted = eq
            .template
            .iter()
            .find(|t| matches!(t.term, Term::Var(_)))
            .is_some_and(|t| t.inverse);
        let (x, moves) = if inverted {
            (
                z.inverse(),
                cand.moves.iter().rev().map(|m| m.inverted()).collect(),
            )
        } else {
            (z, cand.moves.clone())
        };
        let values = vec![x];
        if eq.is_solution(&values)? {
            return Ok(Some(Assignment {
                values,
                expressions: vec![moves],
            }));
        }
    }
    Ok(None)
}

struct Solver<'a> {
    eq: &'a EquationSpec,
    cfg: &'a SolverConfig,
    st: Structure,
    check: Structure,
    peel: Vec<Vec<[BraidWord; 2]>>,
    /// `p⁻¹` and `p` per parameter, in the metric's structure.
    params: Vec<[GreedyNF; 2]>,
    values: Vec<Option<(GreedyNF, Vec<Move>)>>,
    evaluations: u64,
    combinations: u64,
}

impl Solver<'_> {
    fn run(&mut self, pos: usize, c: GreedyNF, depth: usize) -> Result<bool> {
        let mut c = c;
        let mut pos = pos;
        while let Some(tok) = self.eq.template.get(pos) {
            let peeled = match tok.term {
                Term::Param(j) => self.params[j][tok.inverse as usize].clone(),
                Term::Var(i) => match &self.values[i] {
                    Some((x, _)) if tok.inverse => x.clone(),
                    Some((x, _)) => self.st.nf_inverse(x),
                    None => break,
                },
            };
            c = self.st.nf_product(&peeled, &c);
            pos += 1;
        }
        let Some(tok) = self.eq.template.get(pos).copied() else {
            self.combinations += 1;
            return if c.is_identity() {
                self.verify()
            } else {
                Ok(false)
            };
        };
        let Term::Var(var) = tok.term else {
            unreachable!("parameters are peeled above")
        };
        let outcome = search_nf(&self.st, &c, &self.peel[var], self.cfg);
        self.evaluations += outcome.evaluations;
        for cand in outcome.beam.iter().take(self.cfg.cutoff(depth)) {
            // cand.moves spell z = x^{±1}, z⁻¹c = residual
            let z = self
                .st
                .greedy_nf(&expression_word(&self.peel_forward(var), &cand.moves)?)?;
            let (x, moves) = if tok.inverse {
                (
                    self.st.nf_inverse(&z),
                    cand.moves.iter().rev().map(|m| m.inverted()).collect(),
                )
            } else {
                (z, cand.moves.clone())
            };
            self.values[var] = Some((x, moves));
            if self.run(pos + 1, cand.residual.clone(), depth + 1)? {
                return Ok(true);
            }
            self.values[var] = None;
        }
        Ok(false)
    }

    fn peel_forward(&self, var: usize) -> Vec<BraidWord> {
        self.peel[var].iter().map(|[_, g]| g.clone()).collect()
    }

    fn verify(&self) -> Result<bool> {
        let values = self.assignment()?.values;
        let w = self.eq.substitute(&values)?;
        self.check.equals(&self.eq.target, &w)
    }

    fn assignment(&self) -> Result<Assignment> {
        let mut values = Vec::new();
        let mut expressions = Vec::new();
        for (i, v) in self.values.iter().enumerate() {
            let moves = v.as_ref().map(|(_, m)| m.clone()).unwrap_or_default();
            let word = if self.eq.generators[i].is_empty() {
                BraidWord::identity(self.eq.target.kind(), self.eq.target.strands())
            } else {
                expression_word(&self.eq.generators[i], &moves)?
            };
            values.push(word);
            expressions.push(moves);
        }
        Ok(Assignment {
            values,
            expressions,
        })
    }
}

/// Solves `eq`, exploring at most `N₁⋯N_k` candidate combinations.
/// Every variable's expression is searched with length `cfg.length`.
pub fn solve_equation(eq: &EquationSpec, cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    eq.validate()?;
    let kind = cfg.metric.kind();
    let strands = eq.target.strands();
    let st = Structure::new(kind, strands)?;
    let check = Structure::new(eq.target.kind(), strands)?;
    let peel = eq.generators.iter().map(|g| peel_words(g, kind)).collect();
    let params = eq
        .parameters
        .iter()
        .map(|p| -> Result<[GreedyNF; 2]> {
            let p = st.greedy_nf(&p.to_kind(kind))?;
            Ok([st.nf_inverse(&p), p])
        })
        .collect::<Result<Vec<_>>>()?;
    let target = st.greedy_nf(&eq.target.to_kind(kind))?;
    let mut solver = Solver {
        eq,
        cfg,
        st,
        check,
        peel,
        params,
        values: vec![None; eq.variable_count()],
        evaluations: 0,
        combinations: 0,
    };
    if solver.run(0, target, 0)? {
        Ok(SolveReport {
            assignment: solver.assignment()?,
            evaluations: solver.evaluations,
            combinations: solver.combinations,
        })
    } else {
        Err(Error::NoSolutionFound)
    }
}

/// Tries each expression length in `lengths` and returns the first
/// verified solution.
pub fn solve_with_lengths(
    eq: &EquationSpec,
    cfg: &SolverConfig,
    lengths: RangeInclusive<usize>,
) -> Result<SolveReport> {
    for n in lengths {
        let cfg = SolverConfig {
            length: n,
            ..cfg.clone()
        };
        match solve_equation(eq, &cfg) {
            Err(Error::NoSolutionFound) => continue,
            other => return other,
        }
    }
    Err(Error::NoSolutionFound)
}

/// Uniform word of `len` letters over `σ₁..σ_{n−1}` and their inverses.
pub fn random_artin_word(rng: &mut impl Rng, strands: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| Letter {
            atom: rng.gen_range(0..strands - 1),
            inverse: rng.gen_bool(0.5),
        })
        .collect();
    BraidWord::new(Kind::Artin, strands, letters).expect("atoms in range")
}

/// A membership instance `c = x` with `x` a known expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub generators: Vec<BraidWord>,
    pub moves: Vec<Move>,
    pub element: BraidWord,
}

impl PlantedInstance {
    pub fn equation(&self) -> EquationSpec {
        EquationSpec::new(
            vec![Token {
                term: Term::Var(0),
                inverse: false,
            }],
            vec![self.generators.clone()],
            Vec::new(),
            self.element.clone(),
        )
        .expect("well-formed membership equation")
    }
}

/// Random generators of `word_length` letters and a freely reduced
/// expression of `expression_length` moves over them.
pub fn planted_membership(
    strands: usize,
    word_length: usize,
    generator_count: usize,
    expression_length: usize,
    seed: u64,
) -> Result<PlantedInstance> {
    if strands < 2 {
        return Err(Error::TooFewStrands(strands));
    }
    if generator_count == 0 {
        return Err(Error::InvalidConfig("no generators".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generators: Vec<BraidWord> = (0..generator_count)
        .map(|_| random_artin_word(&mut rng, strands, word_length))
        .collect();
    let mut moves: Vec<Move> = Vec::with_capacity(expression_length);
    while moves.len() < expression_length {
        let mv = Move {
            generator: rng.gen_range(0..generator_count),
            inverse: rng.gen_bool(0.5),
        };
        if moves.last() == Some(&mv.inverted()) {
            continue;
        }
        moves.push(mv);
    }
    let element = expression_word(&generators, &moves)?;
    Ok(PlantedInstance {
        generators,
        moves,
        element,
    })
}
