//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every tolerance here is exact (structural equality of rationals and
//! matrices); the only numeric bounds are wall-clock budgets.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chevpos::chevalley::ChevalleyAlgebra;
use chevpos::error::Error;
use chevpos::exact::{rat, rat_int, AtomFraction, AtomRegistry, Poly, Rational};
use chevpos::group::{
    from_tokens, gauss_compose, gauss_decompose, gen_e, gen_h, gen_n, GenToken, GroupElement,
};
use chevpos::positivity::{beta_chain, region_symbolic, tits_signs, ChainStatus};
use chevpos::quiver::Quiver;
use chevpos::rootsys::{word_analysis, RootSystem, TypeLetter, Word};
use chevpos::suites::{run_suite, RankTwoOracle, Suite};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chevpos"))
}

fn pass(criterion: usize, label: &str) {
    println!("ACCEPTANCE {criterion}: {label} ... PASS");
}

fn setup(spec: &str) -> (Arc<ChevalleyAlgebra>, Quiver) {
    let q = Quiver::parse(spec).unwrap();
    (Arc::new(ChevalleyAlgebra::build(&q).unwrap()), q)
}

fn assert_suite(suite: Suite, letter: TypeLetter, rank: usize, cases: usize, seed: u64) {
    let report = run_suite(suite, letter, rank, cases, seed).unwrap();
    assert!(
        report.passed(),
        "suite {} on {}{} failed: {:?}",
        suite.name(),
        letter,
        rank,
        report.first_failure()
    );
}

/// Criterion 1: the golden region of the linear three-vertex quiver,
/// through the CLI and through the library, in under a second.
#[test]
fn acceptance_01_golden_region() {
    let started = Instant::now();
    let out = bin()
        .args(["region", "--quiver", "A3:1>2,2>3", "--symbolic", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let elapsed = started.elapsed();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["word"], "1,2,3,1,2,1");
    let ineqs = v["inequalities"].as_array().unwrap();
    let mut nontrivial: Vec<String> = ineqs
        .iter()
        .filter(|i| !i["trivial"].as_bool().unwrap())
        .map(|i| i["poly"].as_str().unwrap().to_string())
        .collect();
    nontrivial.sort();
    assert_eq!(
        nontrivial,
        vec![
            "b1*b4*b6 - b1*b5 - b2*b6 + b3".to_string(),
            "b2*b5 - b3*b4".to_string(),
            "b4*b6 - b5".to_string(),
        ]
    );
    let trivial: Vec<u64> = ineqs
        .iter()
        .filter(|i| i["trivial"].as_bool().unwrap())
        .map(|i| i["k"].as_u64().unwrap())
        .collect();
    assert_eq!(trivial, vec![3, 5, 6]);

    // Intermediate betas reproduced verbatim as rational expressions.
    let rs = RootSystem::build(TypeLetter::A, 3).unwrap();
    let region = region_symbolic(&rs, &Word(vec![1, 2, 3, 1, 2, 1])).unwrap();
    let vars = region.vars.clone();
    let mut reg: AtomRegistry = region.registry.clone();
    let b = |i: usize| AtomFraction::from_poly(Poly::var(vars.clone(), i - 1));
    let inv = |f: &AtomFraction, reg: &AtomRegistry| f.invert(reg).unwrap();
    // beta_4 = b4 - b5/b6
    let beta4 = b(4)
        .sub(&b(5).mul(&inv(&b(6), &reg), &reg).unwrap(), &reg)
        .unwrap();
    assert!(region.betas[3].value_eq(&beta4, &reg));
    // beta_2 = b2 - b3 b4 / b5
    let beta2 = b(2)
        .sub(
            &b(3)
                .mul(&b(4), &reg)
                .unwrap()
                .mul(&inv(&b(5), &reg), &reg)
                .unwrap(),
            &reg,
        )
        .unwrap();
    assert!(region.betas[1].value_eq(&beta2, &reg));
    // beta_1 = b1 - (b2 b6 - b3) / (b4 b6 - b5)
    let num = b(2).mul(&b(6), &reg).unwrap().sub(&b(3), &reg).unwrap();
    let den = b(4).mul(&b(6), &reg).unwrap().sub(&b(5), &reg).unwrap();
    reg.register(&den.num).unwrap();
    let beta1 = b(1)
        .sub(&num.mul(&inv(&den, &reg), &reg).unwrap(), &reg)
        .unwrap();
    assert!(region.betas[0].value_eq(&beta1, &reg));

    assert!(
        elapsed < Duration::from_secs(1),
        "region command took {elapsed:?}"
    );
    pass(1, "golden region of the linear three-vertex quiver");
}

/// Criterion 2: rank-two region versus the independent brute-force
/// factorization oracle on 500 random positive points.
#[test]
fn acceptance_02_rank_two_oracle() {
    let started = Instant::now();
    let (alg, _) = setup("A2: 1>2");
    let rs = alg.rs().clone();
    let w = Word(vec![1, 2, 1]);
    // the computed region is b1 b3 > b2
    let region = region_symbolic(&rs, &w).unwrap();
    let cleared: Vec<String> = region
        .cleared_inequalities()
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(cleared, vec!["b1*b3 - b2".to_string()]);

    let oracle = RankTwoOracle::new(&alg);
    let signs = tits_signs(&alg, &w).unwrap();
    let analysis = word_analysis(&rs, &w);
    let mut state = 0x5deece66du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..500 {
        let b: Vec<Rational> = (0..3)
            .map(|_| rat((next() % 9 + 1) as i64, (next() % 9 + 1) as i64))
            .collect();
        let chain = beta_chain(&rs, &w, &b).unwrap();
        let member = chain.status == ChainStatus::Member;
        let mut target = GroupElement::identity(&alg);
        for k in 0..3 {
            let coef = rat_int(signs.eps[k] as i64) * &b[k];
            target = target.mul(&gen_e(&alg, &analysis.beta_roots[k], &coef).unwrap());
        }
        assert_eq!(
            oracle.has_positive_solution(target.mat()),
            member,
            "oracle and region disagree at {b:?}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30), "oracle took {elapsed:?}");
    pass(2, "rank-two oracle agrees on 500 points");
}

/// Criterion 3: exact identity suites (rank-one flip, product identities,
/// commutator formula, all six conjugations, the shift flip, n-braid lifts
/// and the monoid presentation relations) with 200 random parameter sets
/// per type.
#[test]
fn acceptance_03_identity_suites() {
    let started = Instant::now();
    for (letter, rank) in [(TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::D, 4)] {
        assert_suite(Suite::Conjugation, letter, rank, 200, 11);
        assert_suite(Suite::Braid, letter, rank, 200, 11);
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "identities took {elapsed:?}"
    );
    pass(3, "identity suites exact on 200 cases per type");
}

/// Criterion 4: sign move laws along 50 random move sequences of length at
/// most five from the leftmost words of A3 and D4.
#[test]
fn acceptance_04_sign_move_laws() {
    assert_suite(Suite::Signs, TypeLetter::A, 3, 50, 4);
    assert_suite(Suite::Signs, TypeLetter::D, 4, 50, 4);
    pass(4, "sign move laws hold along random move sequences");
}

/// Criterion 5: the coordinate chain: round trips for every k on 100
/// points per type, the image condition, and locality under perturbation.
#[test]
fn acceptance_05_phi_chain() {
    for (letter, rank) in [(TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::D, 4)] {
        assert_suite(Suite::Phi, letter, rank, 100, 5);
    }
    pass(5, "coordinate chain round trips and locality");
}

/// Criterion 6: flag identities on 100 sampled region points per type and
/// the converse chain from 100 random positive vectors, within two
/// minutes for the largest type.
#[test]
fn acceptance_06_main_theorems() {
    for (letter, rank) in [(TypeLetter::A, 2), (TypeLetter::A, 3)] {
        assert_suite(Suite::Theorem, letter, rank, 100, 6);
    }
    let started = Instant::now();
    assert_suite(Suite::Theorem, TypeLetter::D, 4, 100, 6);
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "theorems took {elapsed:?}"
    );
    pass(6, "flag identities and converse chain on sampled points");
}

/// Criterion 7: twenty random sign twists leave every beta value, verdict
/// and symbolic inequality set bit-identical, with the sign pattern
/// following the predicted twist ratio. (These checks run inside the
/// theorem suite's twist sweep.)
#[test]
fn acceptance_07_convention_independence() {
    for (letter, rank) in [(TypeLetter::A, 2), (TypeLetter::A, 3), (TypeLetter::D, 4)] {
        assert_suite(Suite::Theorem, letter, rank, 20, 77);
    }
    pass(7, "region data invariant under sign twists");
}

/// Criterion 8: region transport across source reflections on 100 samples
/// in A3 and D4, and the full reflection cycle returns the underlying
/// matrices exactly.
#[test]
fn acceptance_08_region_transport() {
    assert_suite(Suite::Cells, TypeLetter::A, 3, 100, 8);
    assert_suite(Suite::Cells, TypeLetter::D, 4, 100, 8);
    pass(8, "region transport and the reflection cycle");
}

/// Criterion 9: Gauss decomposition round trips 200 random triples exactly
/// and rejects the rank-one Weyl representative, whose leading entry
/// vanishes by hand.
#[test]
fn acceptance_09_gauss_decomposition() {
    let mut state = 0xfeedface0badf00du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut nonzero = move || -> Rational {
        loop {
            let r = rat((next() % 19) as i64 - 9, (next() % 9 + 1) as i64);
            if r != rat_int(0) {
                return r;
            }
        }
    };
    for spec in ["A2: 1>2", "A3: 1>2, 2>3", "D4: 1>2, 2>3, 2>4"] {
        let (alg, _) = setup(spec);
        let rs = alg.rs().clone();
        for _ in 0..67 {
            let mut g = GroupElement::identity(&alg);
            let mut lower = Vec::new();
            let mut upper = Vec::new();
            for r in rs.pos_roots() {
                if next() % 2 == 0 {
                    lower.push((rs.negate(r), nonzero()));
                }
                if next() % 2 == 0 {
                    upper.push((r.clone(), nonzero()));
                }
            }
            for (r, t) in &lower {
                g = g.mul(&gen_e(&alg, r, t).unwrap());
            }
            for i in 1..=rs.n() {
                g = g.mul(&gen_h(&alg, i, &nonzero()).unwrap());
            }
            for (r, t) in &upper {
                g = g.mul(&gen_e(&alg, r, t).unwrap());
            }
            let d = gauss_decompose(&g).unwrap();
            assert_eq!(d.lower, lower);
            assert_eq!(d.upper, upper);
            assert_eq!(gauss_compose(&alg, &d), g);
        }
        // Weyl probes exit the big cell.
        for i in 1..=rs.n() {
            let n = gen_n(&alg, i, &rat_int(1)).unwrap();
            assert_eq!(gauss_decompose(&n).unwrap_err(), Error::NotInBigCell);
        }
    }
    // Rank-one case by hand: n maps e_a to e_{-a}, so the leading entry of
    // the graded matrix is zero and elimination stops at the first pivot.
    let rs = Arc::new(RootSystem::build(TypeLetter::A, 1).unwrap());
    let alg = Arc::new(ChevalleyAlgebra::build(&Quiver::natural(rs)).unwrap());
    let n = gen_n(&alg, 1, &rat_int(1)).unwrap();
    assert!(n.mat().entry_is_zero(0, 0));
    assert_eq!(gauss_decompose(&n).unwrap_err(), Error::NotInBigCell);
    pass(9, "Gauss decomposition round trips and big-cell rejection");
}

/// Criterion 10: word-level normal form of 200 random nonnegative
/// generator words: exact reconstruction, positive torus part, reduced
/// cell words with positive coordinates, and suffix-region coordinates
/// that round trip through the chain. (All checks run inside the monoid
/// suite sweep.)
#[test]
fn acceptance_10_cell_decomposition() {
    assert_suite(Suite::Monoid, TypeLetter::A, 2, 100, 10);
    assert_suite(Suite::Monoid, TypeLetter::A, 3, 100, 10);
    assert_suite(Suite::Monoid, TypeLetter::D, 4, 50, 10);
    // One-token-level spot checks of the flip and the already-normal case.
    let (alg, _) = setup("A1:");
    let toks = vec![
        GenToken::E(vec![1], rat_int(1)),
        GenToken::H(vec![1], rat_int(1)),
        GenToken::E(vec![-1], rat_int(-1)),
    ];
    let d = chevpos::positivity::decompose_nonneg(&alg, &toks).unwrap();
    assert_eq!(d.minus.coords, vec![rat(1, 2)]);
    assert_eq!(d.h.coords, vec![rat_int(2)]);
    assert_eq!(d.plus.coords, vec![rat(1, 2)]);
    let rebuilt = from_tokens(&alg, &toks).unwrap();
    let expect = gen_e(&alg, &[-1], &rat(-1, 2))
        .unwrap()
        .mul(&gen_h(&alg, 1, &rat_int(2)).unwrap())
        .mul(&gen_e(&alg, &[1], &rat(1, 2)).unwrap());
    assert_eq!(rebuilt, expect);
    pass(10, "nonnegative words normalize onto cells exactly");
}
