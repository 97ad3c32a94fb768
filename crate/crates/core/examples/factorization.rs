//! The ordered product of exponentials over Lyndon words against the
//! diagonal series.

use phishuffle::factorization::{diagonal, schutzenberger};
use phishuffle::PhiLaw;

fn main() -> phishuffle::Result<()> {
    let n = 3;
    for law in [PhiLaw::shuffle(), PhiLaw::q_stuffle(), PhiLaw::min_shuffle()] {
        let product = schutzenberger(&law, n)?;
        let ok = product == diagonal(&law.alphabet_up_to(n), n);
        println!("{:>12}: {} terms, equals diagonal: {ok}", law.name(), product.len());
    }
    println!("{}", schutzenberger(&PhiLaw::q_stuffle(), 2)?);
    Ok(())
}
