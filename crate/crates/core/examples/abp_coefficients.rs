//! Coefficient extraction and partial evaluation on a two-component ABP
//! for `x⊗xy + 2·y⊗yx`.

use pcwa::abp::{coefficient_abp, partial_evaluate_expand, Abp, Evaluation, TensorVariable};
use pcwa::algebra::{Field, SeededRandomSource};
use pcwa::pit::clique_evaluation;
use pcwa::trace::Letter;

fn main() -> pcwa::Result<()> {
    let f = Field::default_prime();
    let v = TensorVariable::new;
    let p = Abp::from_monomials(
        f,
        2,
        &[(f.one(), vec![v(0, 0), v(0, 1), v(1, 1)]), (f.from_i64(2), vec![v(1, 0), v(1, 1), v(0, 1)])],
    )?;
    println!("{}", p.to_debug_string());

    // coefficients of last-component words: a one-component ABP each
    let name = |w: &[Letter]| w.iter().map(|x| ["x", "y"][x.0]).collect::<String>();
    let mut rng = SeededRandomSource::new(1);
    let e = clique_evaluation(&[Letter(0), Letter(1)], 3, &mut rng, 2, f)?;
    let first_only = Evaluation::new(vec![e.clone().into()])?;
    for word in [vec![Letter(0), Letter(1)], vec![Letter(1), Letter(0)], vec![Letter(0)]] {
        let c = coefficient_abp(&p, &word)?;
        // a nonzero coefficient survives a random substitution
        let value = c.evaluate(&first_only)?;
        println!(
            "coefficient of {}: size {}, depth {}, zero at a random point {}",
            name(&word),
            c.size(),
            c.depth(),
            value.is_zero()
        );
    }

    // substitute matrices for the first component only
    let grid = partial_evaluate_expand(&p, &first_only)?;
    let nonzero = grid.iter().flatten().filter(|e| !e.is_trivially_zero()).count();
    println!("partial evaluation: {0}x{0} grid of ABPs, {nonzero} not trivially zero", grid.len());
    Ok(())
}
