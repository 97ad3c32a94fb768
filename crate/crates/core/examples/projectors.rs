//! Eulerian projectors and the resolution of a word into their images.

use phishuffle::projectors::{word_expansion_identity, Eulerian};
use phishuffle::{NCPoly, PhiLaw, Word};

fn main() -> phishuffle::Result<()> {
    let law = PhiLaw::q_stuffle();
    let mut e = Eulerian::new(&law);
    let w: Word = "y1.y1.y2".parse()?;
    println!("check-pi1({w}) = {}", e.check_pi1(&w)?);
    let mut total = NCPoly::zero();
    for n in 0..=w.weight() as usize {
        let part = e.pi_n(&w, n)?;
        if !part.is_zero() {
            println!("pi{n}({w}) = {part}");
        }
        total = &total + &part;
    }
    println!("sum = {total}");
    let (a, b) = word_expansion_identity(&law, &w)?;
    assert_eq!((a, b), (NCPoly::word(w.clone()), NCPoly::word(w)));
    Ok(())
}
