//! Singular points, line components and conic factors of two plane quintics over F_7.

use prym5::quintic::analyze;
use prym5::{Gf, HomogPoly};

fn main() -> prym5::Result<()> {
    let f = Gf::prime(7)?;
    let mut lines = HomogPoly::one(&f, 3);
    for l in ["x0", "x1", "x2", "x0 + x1 + x2", "x0 + 2*x1 + 3*x2"] {
        lines = lines.mul(&HomogPoly::parse_body(&f, 3, l, 1)?);
    }
    let smooth_conic = HomogPoly::parse_body(&f, 3, "x0^2 + x1*x2", 2)?;
    let cubic = HomogPoly::parse_body(&f, 3, "x1^2*x2 + 6*x0^3 + 6*x0*x2^2 + 6*x2^3", 3)?;

    for (name, p) in [("five lines", lines), ("conic times cubic", smooth_conic.mul(&cubic))] {
        let report = analyze(&p, 1 << 24)?;
        println!("{name}:\n{}", serde_json::to_string_pretty(&report).expect("json"));
    }
    Ok(())
}
