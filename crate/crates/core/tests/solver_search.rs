use garside_core::lengths::LengthMetric;
use garside_core::solver::{
    self, expression_word, memory_length_search, solve_equation, solve_with_lengths, EquationSpec,
    Move, SolverConfig, Term, Token,
};
use garside_core::{BraidWord, Kind, Structure};

fn w(n: usize, idx: &[i32]) -> BraidWord {
    BraidWord::artin(n, idx).unwrap()
}

fn all_sequences(m: usize, len: usize) -> Vec<Vec<Move>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|seq| {
                (0..m).flat_map(move |g| {
                    let seq = seq.clone();
                    [false, true].map(move |inverse| {
                        let mut s = seq.clone();
                        s.push(Move {
                            generator: g,
                            inverse,
                        });
                        s
                    })
                })
            })
            .collect();
    }
    out
}

#[test]
fn planted_product_is_the_unique_exact_sequence() {
    let gens = [w(3, &[1, 1]), w(3, &[2, 2])];
    let c = w(3, &[1, 1, 2, 2]);
    let st = Structure::artin(3);
    let exact: Vec<Vec<Move>> = all_sequences(2, 2)
        .into_iter()
        .filter(|seq| {
            st.equals(&expression_word(&gens, seq).unwrap(), &c)
                .unwrap()
        })
        .collect();
    assert_eq!(exact.len(), 1);
    let out = memory_length_search(
        &c,
        &gens,
        &SolverConfig::new(2, 4, LengthMetric::RationalArtin),
    )
    .unwrap();
    let zero: Vec<&Vec<Move>> = out
        .beam
        .iter()
        .filter(|s| s.score == 0)
        .map(|s| &s.moves)
        .collect();
    assert_eq!(zero, [&exact[0]]);
}

#[test]
fn evaluation_count_matches_beam_widths() {
    let inst = solver::planted_membership(5, 4, 3, 4, 21).unwrap();
    for memory in [1, 2, 5, 17, 64] {
        for n in 0..=4 {
            let cfg = SolverConfig::new(n, memory, LengthMetric::RationalBkl);
            let out = memory_length_search(&inst.element, &inst.generators, &cfg).unwrap();
            let two_m = 2 * inst.generators.len() as u64;
            let widths: u64 = (2..=n as u32)
                .map(|s| two_m.pow(s - 1).min(memory as u64))
                .sum();
            let expected = if n == 0 { 0 } else { two_m + two_m * widths };
            assert_eq!(out.evaluations, expected, "n={n} M={memory}");
            assert!(out.evaluations <= solver::evaluation_bound(n, inst.generators.len(), memory));
            assert!(out.beam.len() <= memory);
            assert!(out.beam.windows(2).all(|p| p[0].score <= p[1].score));
        }
    }
}

#[test]
fn full_width_beam_always_contains_the_planted_expression() {
    for seed in 0..10 {
        let inst = solver::planted_membership(4, 5, 3, 3, seed).unwrap();
        let memory = 6usize.pow(3);
        let cfg = SolverConfig::new(3, memory, LengthMetric::GreedyArtin);
        let out = memory_length_search(&inst.element, &inst.generators, &cfg).unwrap();
        assert!(out
            .beam
            .iter()
            .any(|s| s.moves == inst.moves && s.residual.is_identity()));
    }
}

#[test]
fn search_is_deterministic() {
    let inst = solver::planted_membership(6, 6, 5, 3, 77).unwrap();
    let cfg = SolverConfig::new(3, 20, LengthMetric::RationalArtin);
    let a = memory_length_search(&inst.element, &inst.generators, &cfg).unwrap();
    let b = memory_length_search(&inst.element, &inst.generators, &cfg).unwrap();
    assert_eq!(a.beam, b.beam);
}

/// Not a theorem: checked empirically on planted instances.
#[test]
fn wider_beams_keep_exact_solutions() {
    for seed in 0..20 {
        let inst = solver::planted_membership(6, 6, 4, 4, 500 + seed).unwrap();
        let mut previous: Vec<Vec<Move>> = Vec::new();
        for memory in [4, 8, 16, 32, 64, 128] {
            let cfg = SolverConfig::new(4, memory, LengthMetric::RationalBkl);
            let out = memory_length_search(&inst.element, &inst.generators, &cfg).unwrap();
            let exact: Vec<Vec<Move>> = out
                .beam
                .iter()
                .filter(|s| s.residual.is_identity())
                .map(|s| s.moves.clone())
                .collect();
            for seq in &previous {
                assert!(
                    exact.contains(seq),
                    "seed {seed}: M={memory} lost a solution"
                );
            }
            previous = exact;
        }
    }
}

#[test]
fn decomposition_with_planted_factors() {
    // c = x a y in B_4 with x, y expressions of length 2
    let gx = vec![w(4, &[1, 2, -3]), w(4, &[3, 3, 1])];
    let gy = vec![w(4, &[-2, 1, 1]), w(4, &[2, 3, -1])];
    let a = w(4, &[2, 1, 3]);
    let x = gx[0].concat(&gx[1].inverse()).unwrap();
    let y = gy[1].concat(&gy[1]).unwrap();
    let target = x.concat(&a).unwrap().concat(&y).unwrap();
    let tok = |term, inverse| Token { term, inverse };
    let eq = EquationSpec::new(
        vec![
            tok(Term::Var(0), false),
            tok(Term::Param(0), false),
            tok(Term::Var(1), false),
        ],
        vec![gx, gy],
        vec![a],
        target,
    )
    .unwrap();
    let cfg = SolverConfig::new(2, 16, LengthMetric::RationalBkl);
    let report = solve_equation(&eq, &cfg).unwrap();
    assert!(eq.is_solution(&report.assignment.values).unwrap());
    assert!(report.combinations <= 16 * 16);
}

#[test]
fn cutoffs_bound_the_combinations() {
    let inst = solver::planted_membership(5, 5, 3, 3, 8).unwrap();
    let eq = inst.equation();
    let cfg = SolverConfig {
        cutoffs: Some(vec![2]),
        ..SolverConfig::new(3, 10, LengthMetric::RationalArtin)
    };
    match solve_equation(&eq, &cfg) {
        Ok(r) => assert!(r.combinations <= 2),
        Err(e) => assert_eq!(e, garside_core::Error::NoSolutionFound),
    }
    let bad = SolverConfig {
        cutoffs: Some(vec![11]),
        ..cfg
    };
    assert!(solve_equation(&eq, &bad).is_err());
}

#[test]
fn length_range_wrapper_finds_short_expressions() {
    let gens = [w(3, &[1, 1, 2]), w(3, &[2, -1, 2, 2])];
    let x = gens[0].concat(&gens[1]).unwrap();
    let text = format!(
        r#"{{"template": ["x1"], "generators": {{"x1": ["s1 s1 s2", "s2 s1^-1 s2 s2"]}}, "target": "{x}"}}"#
    );
    let eq = EquationSpec::from_json(&text, Kind::Artin, None).unwrap();
    let cfg = SolverConfig::new(0, 16, LengthMetric::RationalBkl);
    assert!(solve_equation(&eq, &cfg).is_err());
    let report = solve_with_lengths(&eq, &cfg, 0..=4).unwrap();
    assert_eq!(report.assignment.expressions[0].len(), 2);
}

#[test]
fn bkl_input_words_are_accepted() {
    let text = r#"{"template": ["x1"], "generators": {"x1": ["a(3,1)", "a(2,1) a(3,2)"]}, "target": "a(3,1) a(3,1)"}"#;
    let eq = EquationSpec::from_json(text, Kind::Bkl, Some(3)).unwrap();
    let report =
        solve_equation(&eq, &SolverConfig::new(2, 8, LengthMetric::RationalArtin)).unwrap();
    assert!(eq.is_solution(&report.assignment.values).unwrap());
    assert_eq!(report.assignment.values[0].kind(), Kind::Bkl);
}
