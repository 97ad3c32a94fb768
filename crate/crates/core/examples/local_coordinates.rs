//! Coordinates of a group-like series and its reconstruction.

use phishuffle::bases::Bases;
use phishuffle::factorization::{local_coordinates, reconstruct};
use phishuffle::{NCPoly, PhiLaw, Scalar, TruncSeries, Word};

fn main() -> phishuffle::Result<()> {
    let law = PhiLaw::q_stuffle();
    let mut b = Bases::new(&law)?;
    let mut lie = NCPoly::zero();
    for (l, c) in [("y1", Scalar::from_i64(2)), ("y2.y1", Scalar::from_ratio(-1, 3)), ("y3", Scalar::q())] {
        lie.add_scaled(&b.pi(&l.parse::<Word>()?)?, &c);
    }
    let s = TruncSeries::new(lie, 4).exp()?;
    // coordinates of the ordered product, not the exponents used above
    let chart = local_coordinates(&law, &s)?;
    println!("{chart}");
    assert_eq!(reconstruct(&chart)?, s);
    println!("reconstruction matches ({} terms)", s.poly().len());
    Ok(())
}
