//! Embed a genus-2 curve in P^4 by 2K + P + Q and split the determinant of its web of quadrics.

use prym5::genus2::{discriminant_report, quadric_web, web_discriminant, Embedding, Genus2Curve, Polarization};
use prym5::{Field, Gf};

fn main() -> prym5::Result<()> {
    let f = Gf::prime(7)?;
    let curve = Genus2Curve::new(&f, &[2, 1, 5, 6, 5, 5, 2])?;
    let emb = Embedding::new(curve, Polarization::TwoKPlus { p: (0, 3), q: (6, 3) })?;
    let ext = emb.sample_field();
    println!("{} points over {}", emb.embedded_points(&ext).len(), ext.tag());

    let web = quadric_web(&emb)?;
    println!("web of quadrics:\n{}", web.to_fixture_text());
    let wd = web_discriminant(&web, 1 << 20)?;
    println!("determinant = ({}) * ({})", wd.plane.body_text(), wd.quartic.body_text());
    let report = discriminant_report(&wd)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    Ok(())
}
