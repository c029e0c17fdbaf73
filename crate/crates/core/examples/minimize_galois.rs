//! Pick the Galois equivalent with the fewest dependent variables, then the
//! least gate area.
use fsrkit::expr::GateCostModel;
use fsrkit::fib2gal::{enumerate_equivalents, select_minimal};
use fsrkit::stp::TransitionMatrix;

fn main() -> fsrkit::Result<()> {
    let model = GateCostModel::default();
    for (text, budget) in [
        ("d8[2 4 5 8 1 3 6 7]", None),
        ("d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 15]", Some(5000)),
    ] {
        let lf: TransitionMatrix = text.parse()?;
        let stream = enumerate_equivalents(&lf, budget, Some(42))?;
        let best = select_minimal(stream, &model).expect("non-empty stream");
        println!("L_f = {lf}  ({} candidates)", best.considered);
        println!(
            "  L_g = {}  T = {}",
            best.candidate.matrix, best.candidate.transform
        );
        for (k, c) in best.coordinates.iter().enumerate() {
            println!("  z{}' = {}", k + 1, c.expr);
        }
        println!(
            "  support {}  area {} um2  delay {} ps  gates {}",
            best.support_sum, best.area_um2, best.delay_ps, best.gate_count
        );
    }
    Ok(())
}
