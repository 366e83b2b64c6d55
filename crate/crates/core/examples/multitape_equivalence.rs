//! Two-tape automata as automata over a pc monoid: letters on different
//! tapes commute. Reading `(ab, c)` tape by tape in either order gives the
//! same relation; adding the pair `(a, c)` does not.

use pcwa::algebra::Field;
use pcwa::frontend::{equivalence, Engine, EngineConfig, MultiTapeAutomaton};

fn tapes() -> Vec<Vec<String>> {
    vec![vec!["a".into(), "b".into()], vec!["c".into()]]
}

/// A chain reading `letters` in order, with the tape of each state taken
/// from the letter it reads next.
fn chain(letters: &[&str], extra_final: Option<usize>) -> pcwa::Result<MultiTapeAutomaton> {
    let f = Field::Rational;
    let n = letters.len() + 1;
    let mut m = MultiTapeAutomaton::new(f, tapes(), n)?;
    let mut partition: Vec<usize> = letters.iter().map(|x| m.tape_of(x).unwrap()).collect();
    partition.push(0);
    m.set_partition(partition)?;
    m.add_initial(0, f.one())?;
    m.add_final(n - 1, f.one())?;
    if let Some(q) = extra_final {
        m.add_final(q, f.one())?;
    }
    for (q, x) in letters.iter().enumerate() {
        m.add_transition(q, x, q + 1, f.one())?;
    }
    Ok(m)
}

fn main() -> pcwa::Result<()> {
    let ab_c = chain(&["a", "b", "c"], None)?;
    let c_ab = chain(&["c", "a", "b"], None)?;
    // a, then c, then optionally b
    let a_c_b = chain(&["a", "c", "b"], Some(2))?;

    for (name, m) in [("ab_c", &ab_c), ("c_ab", &c_ab), ("a_c_b", &a_c_b)] {
        println!("{name}: deterministic = {}", m.check_determinism());
    }

    let (a, cover) = ab_c.to_pc_automaton(true)?;
    let (b, _) = c_ab.to_pc_automaton(true)?;
    let (c, _) = a_c_b.to_pc_automaton(true)?;
    for engine in [Engine::Oracle, Engine::Rand, Engine::Det] {
        let cfg = EngineConfig::with_engine(engine);
        let same = equivalence(&a, &b, &cover, &cfg)?;
        let differ = !equivalence(&a, &c, &cover, &cfg)?;
        println!("{engine:>6}: ab_c == c_ab {same}, ab_c != a_c_b {differ}");
    }
    Ok(())
}
