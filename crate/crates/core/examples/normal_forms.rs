//! Trace normal forms and equivalence in a pc monoid where `x` and `z`
//! commute but `y` commutes with neither.

use std::sync::Arc;

use pcwa::trace::{PcMonoid, Trace};

fn main() -> pcwa::Result<()> {
    let m = Arc::new(PcMonoid::new(&["x", "y", "z"], &[("x", "z")])?);

    for s in ["zxyzx", "xzyxz", "zyx", "xyz"] {
        let w = m.parse_word(s)?;
        println!("{s:>6} -> {}", m.render_word(&m.normal_form(&w)?));
    }

    let (u, v) = (m.parse_word("zxyzx")?, m.parse_word("xzyxz")?);
    println!("zxyzx ~ xzyxz: {}", m.traces_equivalent(&u, &v)?);
    let (u, v) = (m.parse_word("zyx")?, m.parse_word("xyz")?);
    println!("zyx ~ xyz: {}", m.traces_equivalent(&u, &v)?);

    let w = m.parse_word("zxyzx")?;
    let t = Trace::new(m.clone(), &w)?;
    let lins = m.linearizations(&w, 100)?;
    println!("trace {t} has {} linearizations:", lins.len());
    for l in lins {
        println!("  {}", m.render_word(&l));
    }
    Ok(())
}
