//! Reconstruct the smallest Fibonacci FSR producing every output sequence
//! of a Galois FSR.
use fsrkit::fib::feedback_of;
use fsrkit::gal2fib::{derived_digraph, min_stage_fibonacci};
use fsrkit::stp::{synthesize_expr, TransitionMatrix};

fn main() -> fsrkit::Result<()> {
    let lg: TransitionMatrix = "d8[5 3 7 6 4 1 8 7]".parse()?;
    let r = min_stage_fibonacci(&lg)?;
    for s in &r.sequences {
        println!("{s}");
    }
    for &l in &r.rejected {
        let g = derived_digraph(&r.sequences, l);
        let bad: Vec<_> = g
            .nodes()
            .into_iter()
            .filter(|&w| g.out_degree(w) > 1)
            .collect();
        println!("window {l}: branching windows {bad:?}");
    }
    println!(
        "stages {}  partial {}  T' {}",
        r.stages, r.partial, r.state_map
    );
    for m in &r.completions.matrices {
        println!("  {m}  f = {}", synthesize_expr(&feedback_of(m)?));
    }
    Ok(())
}
