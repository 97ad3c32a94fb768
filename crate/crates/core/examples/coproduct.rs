//! The dual coproduct, its duality with the product, and the antipode.

use phishuffle::products::{delta_conc, delta_phi, phi_shuffle, reduced_coproduct};
use phishuffle::projectors::antipode;
use phishuffle::{NCPoly, PhiLaw};

fn main() -> phishuffle::Result<()> {
    let law = PhiLaw::q_stuffle();
    let w: NCPoly = "y1.y2".parse()?;
    println!("delta(y1.y2)      = {}", delta_phi(&law, &w, 2)?);
    println!("delta+(y1.y2)     = {}", reduced_coproduct(&law, &w)?);
    println!("deconcat(y1.y2)   = {}", delta_conc(&w, 2));

    // <u * v, w> = <u ⊗ v, delta(w)>
    let (u, v): (NCPoly, NCPoly) = ("y1".parse()?, "y2".parse()?);
    let lhs = phi_shuffle(&law, &u, &v)?.pair(&w);
    let rhs = delta_phi(&law, &w, 2)?.pair(&[u, v]);
    println!("<y1 * y2, y1.y2> = {lhs} = {rhs}");

    for text in ["y1", "y1.y1", "y1.y2"] {
        println!("antipode({text}) = {}", antipode(&law, &text.parse()?)?);
    }
    Ok(())
}
