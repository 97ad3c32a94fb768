//! φ-shuffle products under a few catalog laws.

use phishuffle::products::{phi_shuffle, phi_shuffle_power};
use phishuffle::{NCPoly, PhiLaw};

fn main() -> phishuffle::Result<()> {
    let y1: NCPoly = "y1".parse()?;
    let u: NCPoly = "y1.y2".parse()?;
    for law in [PhiLaw::shuffle(), PhiLaw::quasi_shuffle(), PhiLaw::q_stuffle(), PhiLaw::min_shuffle()] {
        println!("{:>14}: y1 * y1.y2 = {}", law.name(), phi_shuffle(&law, &y1, &u)?);
    }
    let cube = phi_shuffle_power(&PhiLaw::q_stuffle(), &y1, 3)?;
    println!("qstuffle: y1^3 = {cube}");
    Ok(())
}
