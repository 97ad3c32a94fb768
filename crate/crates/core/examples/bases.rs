//! Dual bases PI / SIGMA up to weight 4 and their Gram check.

use phishuffle::bases::{gram_check, BasisTable};
use phishuffle::PhiLaw;

fn main() -> phishuffle::Result<()> {
    let law = PhiLaw::q_stuffle();
    let table = BasisTable::build(&law, 4)?;
    for w in table.words().filter(|w| !w.is_empty()) {
        println!("{:<12} PI = {}", w.to_string(), table.pi(w).unwrap());
        println!("{:<12} SIGMA = {}", "", table.sigma(w).unwrap());
    }
    println!("{}", gram_check(&law, 4)?);
    Ok(())
}
