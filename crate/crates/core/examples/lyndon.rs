//! Lyndon words, standard factorizations and CFL factorizations.

use phishuffle::alphabet::{cfl_factorization, lyndon_up_to, standard_factorization};
use phishuffle::{Alphabet, LetterOrder, Word};

fn main() -> phishuffle::Result<()> {
    let order = LetterOrder::default();
    for l in lyndon_up_to(&Alphabet::standard(4), order, 4)? {
        if l.len() > 1 {
            let (a, b) = standard_factorization(&l, order)?;
            println!("{l:<12} = ({a}, {b})");
        } else {
            println!("{l}");
        }
    }
    let w: Word = "y1.y2.y1.y2.y2".parse()?;
    let parts: Vec<String> = cfl_factorization(&w, order)
        .into_iter()
        .map(|(l, i)| format!("({l})^{i}"))
        .collect();
    println!("{w} = {}", parts.join(" "));
    Ok(())
}
