//! Random matrix substitutions for a clique and for a star. The commutator
//! `xy - yx` dies under commuting substitutions only if the matrices commute,
//! so it survives a random clique evaluation with high probability.

use std::collections::BTreeMap;

use pcwa::abp::{Abp, TensorVariable};
use pcwa::algebra::{Field, SeededRandomSource};
use pcwa::pit::{clique_evaluation, star_evaluation, tensor_combine};
use pcwa::trace::Letter;

fn commutator(f: Field, a: usize, b: usize) -> pcwa::Result<Abp> {
    let v = |x| TensorVariable::new(x, 0);
    Abp::from_monomials(f, 1, &[(f.one(), vec![v(a), v(b)]), (f.from_i64(-1), vec![v(b), v(a)])])
}

fn main() -> pcwa::Result<()> {
    let f = Field::default_prime();
    let mut rng = SeededRandomSource::new(5);
    let xy = commutator(f, 0, 1)?;

    let trials = 100;
    let mut hits = 0;
    for _ in 0..trials {
        let e = clique_evaluation(&[Letter(0), Letter(1)], 2, &mut rng, 1, f)?;
        let eval = tensor_combine(vec![e])?;
        if !xy.evaluate(&eval)?.is_zero() {
            hits += 1;
        }
    }
    println!("clique: xy - yx nonzero in {hits}/{trials} evaluations");

    // star with centre y = 1 and leaves x = 0, z = 2; the commutator of the
    // two leaves is zero in the monoid and under every star evaluation
    let xz = commutator(f, 0, 2)?;
    let xy_star = commutator(f, 0, 1)?;
    let (mut xz_nonzero, mut xy_nonzero) = (0, 0);
    for _ in 0..trials {
        let e = star_evaluation(Letter(1), &[Letter(0), Letter(2)], 2, &mut rng, 1, f)?;
        let eval = tensor_combine(vec![e])?;
        xz_nonzero += usize::from(!xz.evaluate(&eval)?.is_zero());
        xy_nonzero += usize::from(!xy_star.evaluate(&eval)?.is_zero());
    }
    println!("star: xz - zx nonzero in {xz_nonzero}/{trials}, xy - yx nonzero in {xy_nonzero}/{trials}");

    let e = star_evaluation(Letter(1), &[Letter(0), Letter(2)], 2, &mut rng, 1, f)?;
    let shown: BTreeMap<_, _> = e.matrices().iter().collect();
    for (x, m) in shown {
        println!("letter {}:\n{m}", x.0);
    }
    Ok(())
}
