//! Product hitting sets for tensor-product ABPs. Every nonzero ABP of the
//! given shape is nonzero at some point of the set.

use pcwa::abp::{Abp, TensorVariable};
use pcwa::algebra::Field;
use pcwa::pit::{
    bootstrap_for_letters, bootstrap_point_count, deterministic_zero_test, vanishes_on, BruteForceGrid, PowerGrid,
};
use pcwa::trace::Letter;

fn main() -> pcwa::Result<()> {
    let f = Field::Rational;
    let v = TensorVariable::new;
    // (xy - yx) ⊗ z as a two-component ABP, and the zero difference f - f
    let tensor = Abp::from_monomials(
        f,
        2,
        &[(f.one(), vec![v(0, 0), v(1, 0), v(0, 1)]), (f.from_i64(-1), vec![v(1, 0), v(0, 0), v(0, 1)])],
    )?;
    let zero = tensor.sub(&tensor)?;
    let (d, s) = (tensor.depth(), tensor.size());
    println!("depth {d}, size {s}");

    let letters = vec![vec![Letter(0), Letter(1)], vec![Letter(0)]];
    let power = PowerGrid { budget: 1_000_000 };
    let brute = BruteForceGrid { budget: 1_000_000 };
    for (name, count) in [
        ("power", bootstrap_point_count(&power, &[2, 1], d, s)),
        ("brute", bootstrap_point_count(&brute, &[2, 1], d, s)),
    ] {
        println!("{name} grid: {count} points");
    }

    let h = bootstrap_for_letters(&power, f, &letters, d, s)?;
    println!("s_k = {}, |H| = {}", h.s_k(), h.len());
    println!("tensor vanishes on H: {}", vanishes_on(&tensor, &h)?);
    println!("f - f vanishes on H: {}", vanishes_on(&zero, &h)?);

    println!(
        "zero test: tensor {}, f - f {}",
        deterministic_zero_test(&[tensor], &power, 1_000_000)?,
        deterministic_zero_test(&[zero], &power, 1_000_000)?
    );
    Ok(())
}
