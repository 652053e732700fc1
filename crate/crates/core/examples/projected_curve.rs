//! Project a canonical genus-5 curve with a free involution from one of its points and count
//! the secant lines of the image together with the exceptional line.

use prym5::pipeline::{pipeline_3_16, quadrisecant_window};
use prym5::report::RunConfig;
use prym5::Gf;

fn main() -> prym5::Result<()> {
    let cfg = RunConfig::new(Gf::prime(11)?, 0);
    let report = pipeline_3_16(&cfg)?;
    print!("{}", report.to_text());
    println!("secant histogram: {}", report.data["secant_histogram"]);
    println!("lines with 4 or more points: {} (window {:?})", report.data["quadrisecant_lines"], quadrisecant_window(11));
    Ok(())
}
