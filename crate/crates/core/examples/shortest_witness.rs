//! The commutator `xz - zx` vanishes once `x` and `z` commute, so a series
//! `xz - zx + c·yx` is nonzero only through `yx`. The witness search finds
//! it within the length bound.

use std::sync::Arc;

use pcwa::algebra::Field;
use pcwa::automaton::WeightedAutomaton;
use pcwa::embedding::{shortest_witness, witness_length_bound};
use pcwa::frontend::{zero_test, Engine, EngineConfig};
use pcwa::trace::{Cover, PcMonoid};

fn automaton(m: &Arc<PcMonoid>, f: Field, c: i64) -> pcwa::Result<WeightedAutomaton> {
    let [x, y, z] = ["x", "y", "z"].map(|n| m.letter(n).unwrap());
    let mut a = WeightedAutomaton::new(m.clone(), f, 5);
    a.set_initial(0, f.one())?;
    a.set_final(3, f.one())?;
    a.set_transition(0, x, 1, f.one())?;
    a.set_transition(1, z, 3, f.one())?;
    a.set_transition(0, z, 2, f.from_i64(-1))?;
    a.set_transition(2, x, 3, f.one())?;
    a.set_transition(0, y, 4, f.from_i64(c))?;
    a.set_transition(4, x, 3, f.one())?;
    Ok(a)
}

fn main() -> pcwa::Result<()> {
    let m = Arc::new(PcMonoid::new(&["x", "y", "z"], &[("x", "z")])?);
    // y is joined to both x and z: a star centred at y covers the whole graph
    let cover = Cover::from_names(&m, &[], &[("y", vec!["x", "z"])])?;
    let f = Field::Rational;

    for c in [0, 3] {
        let a = automaton(&m, f, c)?;
        let bound = witness_length_bound(&a, &cover)?;
        let zero = zero_test(&a, &cover, &EngineConfig::with_engine(Engine::Oracle))?;
        print!("c = {c}: bound {bound}, zero = {zero}");
        match shortest_witness(&a, &cover, 1_000_000)? {
            Some(w) => {
                let coeff = a.word_coefficient(&w)?;
                println!(", witness {} with coefficient {coeff}", m.render_word(&w));
            }
            None => println!(", no witness"),
        }
    }
    Ok(())
}
