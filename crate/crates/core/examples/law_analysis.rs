//! Property reports for catalog laws and for user-defined tables.

use phishuffle::law::PhiLaw;
use phishuffle::{analyze_law, Alphabet, Scalar};

fn main() -> phishuffle::Result<()> {
    for law in [PhiLaw::q_stuffle(), PhiLaw::q_shuffle()] {
        println!("{}\n{}\n", law.name(), analyze_law(&law, 6));
    }
    let infiltration = PhiLaw::q_infiltration(Alphabet::standard(1), Scalar::q());
    println!("{}\n{}\n", infiltration.name(), analyze_law(&infiltration, 4));

    // a nilpotent table: only y1·y1 contracts, onto y2
    let square = PhiLaw::finite_table("square", Alphabet::standard(2), [((1, 1), "y2".parse()?)])?;
    println!("{}\n{}", square.name(), square.properties());
    Ok(())
}
