mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use pcwa::abp::{Abp, AffineForm, Edge, Evaluation, TensorVariable};
use pcwa::algebra::{Field, Matrix, SeededRandomSource};
use pcwa::automaton::WeightedAutomaton;
use pcwa::corpus::{generate_corpus, CorpusParams};
use pcwa::embedding::{witness_length_bound, zero_test_reduction};
use pcwa::pit::{
    bootstrap_for_letters, bootstrap_hitting_set, bootstrap_size_parameter, clique_dimension, clique_evaluation,
    deterministic_zero_test, randomized_zero_test, sample_set_size, star_evaluation, tensor_combine, vanishes_on,
    BaseHittingSetGenerator, BruteForceGrid, ComponentEvaluation, PowerGrid,
};
use pcwa::trace::{Cover, Letter, PcMonoid};
use proptest::prelude::*;

use common::*;

fn fp() -> Field {
    Field::default_prime()
}

fn v(l: usize, c: usize) -> TensorVariable {
    TensorVariable::new(l, c)
}

/// `Σ c_i x^i` in one letter, as an ABP of depth `max(deg, 1)`.
fn univariate(field: Field, coeffs: &[i64]) -> Abp {
    let monomials: Vec<_> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (field.from_i64(c), vec![v(0, 0); i]))
        .collect();
    Abp::from_monomials(field, 1, &monomials).unwrap()
}

#[test]
fn clique_dimensions_and_sample_sets() {
    assert_eq!(clique_dimension(1), 2);
    assert_eq!(clique_dimension(2), 2);
    assert_eq!(clique_dimension(3), 3);
    assert_eq!(sample_set_size(2, 3), 16);
    assert_eq!(sample_set_size(3, 5), 30);
    let mut rng = SeededRandomSource::new(1);
    let e = clique_evaluation(&[Letter(0), Letter(2)], 5, &mut rng, 1, fp()).unwrap();
    assert_eq!(e.dim(), 4);
    assert_eq!(e.matrices().len(), 2);
    assert!(clique_evaluation(&[Letter(0)], 0, &mut rng, 1, fp()).is_err());
    // a set of 16 values does not fit in F_5
    assert!(clique_evaluation(&[Letter(0)], 2, &mut rng, 1, Field::prime(5).unwrap()).is_err());
}

#[test]
fn commutator_of_equal_matrices_vanishes() {
    let f = fp();
    let one = f.one();
    let comm =
        Abp::from_monomials(f, 1, &[(one.clone(), vec![v(0, 0), v(1, 0)]), (-&one, vec![v(1, 0), v(0, 0)])]).unwrap();
    let mut rng = SeededRandomSource::new(3);
    let e = clique_evaluation(&[Letter(0)], 2, &mut rng, 1, f).unwrap();
    let m = e.get(Letter(0)).unwrap().clone();
    let same = ComponentEvaluation::new(f, e.dim(), BTreeMap::from([(Letter(0), m.clone()), (Letter(1), m)])).unwrap();
    assert!(comm.evaluate(&Evaluation::single(same)).unwrap().is_zero());
}

#[test]
fn star_structure() {
    let f = fp();
    let d = 3;
    let mut rng = SeededRandomSource::new(5);
    let e = star_evaluation(Letter(0), &[Letter(1), Letter(2)], d, &mut rng, 2, f).unwrap();
    assert_eq!(e.dim(), d + 1);
    let center = e.get(Letter(0)).unwrap();
    assert!(center.pow(d + 1).unwrap().is_zero());
    assert!(!center.pow(d).unwrap().is_zero());
    let (a, b) = (e.get(Letter(1)).unwrap(), e.get(Letter(2)).unwrap());
    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
}

#[test]
fn tensor_combination_dimensions() {
    let f = fp();
    let mut rng = SeededRandomSource::new(9);
    let e1 = clique_evaluation(&[Letter(0)], 3, &mut rng, 2, f).unwrap();
    let e2 = clique_evaluation(&[Letter(1)], 1, &mut rng, 2, f).unwrap();
    let single = tensor_combine(vec![e1.clone()]).unwrap();
    assert_eq!(single.components()[0].as_ref(), &e1);
    let both = tensor_combine(vec![e1, e2]).unwrap();
    assert_eq!(both.dims(), vec![3, 2]);
    assert_eq!(both.total_dim(), 6);
}

#[test]
fn zero_polynomial_is_zero_everywhere() {
    let f = fp();
    let one = f.one();
    // x@0 y@1 - x@0 y@1 written as two paths
    let z =
        Abp::from_monomials(f, 2, &[(one.clone(), vec![v(0, 0), v(1, 1)]), (-&one, vec![v(1, 1), v(0, 0)])]).unwrap();
    let cover = Cover::new(vec![vec![Letter(0)], vec![Letter(1)]], vec![]);
    for seed in 0..20 {
        assert!(randomized_zero_test(std::slice::from_ref(&z), &cover, seed, 5).unwrap());
    }
    let r = Field::Rational;
    let z =
        Abp::from_monomials(r, 2, &[(r.one(), vec![v(0, 0), v(1, 1)]), (-&r.one(), vec![v(1, 1), v(0, 0)])]).unwrap();
    assert!(deterministic_zero_test(&[z], &PowerGrid::default(), 1_000_000).unwrap());
}

#[test]
fn chain_accepting_x_is_nonzero() {
    let m = Arc::new(PcMonoid::free(&["x"]).unwrap());
    let f = fp();
    let mut a = WeightedAutomaton::new(m.clone(), f, 2);
    a.set_initial(0, f.one()).unwrap();
    a.set_final(1, f.one()).unwrap();
    a.set_transition(0, Letter(0), 1, f.one()).unwrap();
    let cover = Cover::trivial(&m);
    let r = zero_test_reduction(&a, &cover).unwrap();
    let detected = (0..100).filter(|&seed| !randomized_zero_test(&r.abps, &cover, seed, 20).unwrap()).count();
    assert!(detected >= 99, "{detected}");
}

#[test]
fn brute_force_grid_counts() {
    let b = BruteForceGrid::default();
    assert_eq!(b.size(1, 1, 5), 16);
    assert_eq!(b.generate(Field::Rational, 1, 1, 5).unwrap().len(), 16);
    assert_eq!(b.size(2, 1, 5), 256);
    assert_eq!(b.size(1, 2, 5), 19_683);
    let tiny = BruteForceGrid { budget: 100 };
    assert!(matches!(tiny.generate(Field::Rational, 1, 2, 5), Err(pcwa::Error::BudgetExceeded { .. })));
    let set = b.generate(Field::Rational, 1, 1, 5).unwrap();
    assert!(set.iter().all(|e| e.dim() == 2));
    let distinct: std::collections::BTreeSet<Vec<String>> =
        set.iter().map(|e| e.get(Letter(0)).unwrap().entries().iter().map(|s| s.to_string()).collect()).collect();
    assert_eq!(distinct.len(), 16);
}

fn hits(base: &dyn BaseHittingSetGenerator, f: &Abp, n: usize, d: usize) -> bool {
    let set = bootstrap_hitting_set(base, Field::Rational, 1, n, d, f.size()).unwrap();
    !vanishes_on(f, &set).unwrap()
}

/// Every nonzero `c0 + c1 x + c2 x^2` with small coefficients.
#[test]
fn base_generators_hit_univariate_polynomials() {
    let mut checked = 0;
    for c0 in -2..=2i64 {
        for c1 in -2..=2i64 {
            for c2 in -2..=2i64 {
                if (c0, c1, c2) == (0, 0, 0) {
                    continue;
                }
                let f = univariate(Field::Rational, &[c0, c1, c2]);
                assert!(hits(&BruteForceGrid::default(), &f, 1, 1), "brute d=1 missed {c0} {c1} {c2}");
                assert!(hits(&BruteForceGrid::default(), &f, 1, 2), "brute d=2 missed {c0} {c1} {c2}");
                assert!(hits(&PowerGrid::default(), &f, 1, 2), "power missed {c0} {c1} {c2}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 124);
    let zero = Abp::zero(Field::Rational, 1);
    let set = bootstrap_hitting_set(&BruteForceGrid::default(), Field::Rational, 1, 1, 1, 2).unwrap();
    assert!(vanishes_on(&zero, &set).unwrap());
}

/// Power grid with `d = 3`: every `u + c v` for distinct words `u, v` of
/// length at most 3 in two letters.
#[test]
fn power_grid_hits_bivariate_polynomials() {
    let f = Field::Rational;
    let base = PowerGrid::default();
    let words: Vec<Word> = words_up_to(2, 3);
    let mut checked = 0;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            for c in [1i64, -1, 2] {
                let monomials = vec![
                    (f.one(), a.iter().map(|x| v(x.0, 0)).collect::<Vec<_>>()),
                    (f.from_i64(c), b.iter().map(|x| v(x.0, 0)).collect()),
                ];
                let p = Abp::from_monomials(f, 1, &monomials).unwrap();
                let set = bootstrap_for_letters(&base, f, &[vec![Letter(0), Letter(1)]], 3, p.size()).unwrap();
                assert!(!vanishes_on(&p, &set).unwrap(), "{a:?} + {c} {b:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

/// `bootstrap_hitting_set(k=2, n=1, d=1, s=2)` with the brute-force base hits
/// every nonzero `c + a x + b y` (x in component 0, y in component 1) with
/// coefficients in `-2..=2`, and every nonzero `a x + b y + c` spread over
/// parallel edges.
#[test]
fn bootstrap_completeness_tiny() {
    let f = Field::Rational;
    let base = BruteForceGrid::default();
    let h = bootstrap_hitting_set(&base, f, 2, 1, 1, 2).unwrap();
    assert_eq!(h.s_k(), 4);
    assert_eq!(h.len(), 256);
    assert!(h.iter().all(|e| e.total_dim() == 4));
    let mut checked = 0;
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                let mut label = AffineForm::constant(f.from_i64(c));
                label.add_term(v(0, 0), &f.from_i64(a));
                label.add_term(v(0, 1), &f.from_i64(b));
                let single = Abp::new(f, 2, vec![1, 1], vec![vec![Edge { from: 0, to: 0, label }]]).unwrap();
                let parallel = Abp::new(
                    f,
                    2,
                    vec![1, 1],
                    vec![vec![
                        Edge { from: 0, to: 0, label: AffineForm::constant(f.from_i64(c)) },
                        Edge { from: 0, to: 0, label: AffineForm::variable(f, v(0, 0)).scale(&f.from_i64(a)) },
                        Edge { from: 0, to: 0, label: AffineForm::variable(f, v(0, 1)).scale(&f.from_i64(b)) },
                    ]],
                )
                .unwrap();
                let zero = (a, b, c) == (0, 0, 0);
                for p in [&single, &parallel] {
                    assert_eq!(p.size(), 2);
                    assert_eq!(vanishes_on(p, &h).unwrap(), zero, "{a} {b} {c}");
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 125);
}

#[test]
fn bootstrap_sizes() {
    assert_eq!(bootstrap_size_parameter(2, 3, 2), 8);
    assert_eq!(bootstrap_size_parameter(1, 3, 2), 2);
    assert_eq!(bootstrap_size_parameter(3, 1, 5), 20);
    let base = PowerGrid::default();
    for k in 1..=3 {
        let h = bootstrap_hitting_set(&base, fp(), k, 2, 3, 4).unwrap();
        let h1 = base.generate(fp(), 2, 3, h.s_k()).unwrap();
        assert_eq!(h.len(), (h1.len() as u128).pow(k as u32));
        assert_eq!(h.s_k(), 4 * 4usize.pow(k as u32 - 1));
        assert!(h.iter().take(20).all(|e| e.total_dim() == 4usize.pow(k as u32)));
    }
    let k1 = bootstrap_hitting_set(&base, fp(), 1, 2, 3, 4).unwrap();
    let direct = base.generate(fp(), 2, 3, 4).unwrap();
    assert_eq!(k1.factor(0), direct.as_slice());
}

#[test]
fn det_detects_a_tensor_difference() {
    // x@0 y@1 - y@0 x@1, n = 2, k = 2
    let f = Field::Rational;
    let one = f.one();
    let p =
        Abp::from_monomials(f, 2, &[(one.clone(), vec![v(0, 0), v(1, 1)]), (-&one, vec![v(1, 0), v(0, 1)])]).unwrap();
    assert!(!expand_abp(&p).is_empty());
    assert!(!deterministic_zero_test(std::slice::from_ref(&p), &PowerGrid::default(), 1_000_000).unwrap());
    let tiny = PowerGrid { budget: 1 };
    assert!(matches!(deterministic_zero_test(&[p], &tiny, 1), Err(pcwa::Error::BudgetExceeded { .. })));
}

fn clique_corpus(seed: u64, count: usize) -> Vec<pcwa::corpus::Instance> {
    let params =
        CorpusParams { max_states: 3, max_letters: 2, max_cover: 2, allow_stars: false, ..CorpusParams::default() };
    generate_corpus(seed, count, &params)
}

#[test]
fn engines_agree_with_the_oracle() {
    let params = CorpusParams { oracle_cap: 50_000, ..CorpusParams::default() };
    for (n, inst) in generate_corpus(99, 60, &params).iter().enumerate() {
        let bound = witness_length_bound(&inst.automaton, &inst.cover).unwrap();
        let zero = trace_series(&inst.automaton, bound).is_empty();
        let exact = zero_test_reduction(&inst.automaton, &inst.cover).unwrap();
        assert_eq!(randomized_zero_test(&exact.abps, &inst.cover, n as u64, 20).unwrap(), zero, "#{n}");
        if inst.kind.zero_by_construction() {
            assert!(zero, "#{n} {:?}", inst.kind);
        }
    }
    for (n, inst) in clique_corpus(98, 40).iter().enumerate() {
        let bound = witness_length_bound(&inst.automaton, &inst.cover).unwrap();
        let zero = trace_series(&inst.automaton, bound).is_empty();
        let r = zero_test_reduction(&inst.automaton, &inst.cover).unwrap();
        assert_eq!(deterministic_zero_test(&r.abps, &PowerGrid::default(), 5_000_000).unwrap(), zero, "#{n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// A zero ABP family never evaluates to nonzero, whatever the seed.
    #[test]
    fn one_sided_on_random_zero_families(seed in any::<u64>(), (letters, inner) in (prop::collection::vec(1usize..=2, 1..=3), prop::collection::vec(1usize..=3, 0..=2))) {
        let mut rng = SeededRandomSource::new(seed);
        let f = random_abp(&mut rng, fp(), &letters, &inner);
        let z = f.sub(&f).unwrap();
        let cover = Cover::new((0..letters.len()).map(|j| (0..letters[j]).map(Letter).collect()).collect(), vec![]);
        prop_assert!(randomized_zero_test(&[z], &cover, seed, 3).unwrap());
    }

    /// Clique evaluations read from the seed only.
    #[test]
    fn evaluations_are_reproducible(seed in any::<u64>(), d in 1usize..5) {
        let a = clique_evaluation(&[Letter(0), Letter(1)], d, &mut SeededRandomSource::new(seed), 2, fp()).unwrap();
        let b = clique_evaluation(&[Letter(0), Letter(1)], d, &mut SeededRandomSource::new(seed), 2, fp()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn star_and_clique_matrices_embed_positionally() {
    let f = fp();
    let mut rng = SeededRandomSource::new(4);
    let e0 = clique_evaluation(&[Letter(0)], 2, &mut rng, 2, f).unwrap();
    let e1 = star_evaluation(Letter(1), &[Letter(2)], 2, &mut rng, 2, f).unwrap();
    let eval = tensor_combine(vec![e0.clone(), e1.clone()]).unwrap();
    let x = eval.embedded(0, Letter(0)).unwrap();
    assert_eq!(x, e0.get(Letter(0)).unwrap().kron(&Matrix::identity(f, 3)).unwrap());
    let y = eval.embedded(1, Letter(1)).unwrap();
    assert_eq!(y, Matrix::identity(f, 2).kron(e1.get(Letter(1)).unwrap()).unwrap());
}
