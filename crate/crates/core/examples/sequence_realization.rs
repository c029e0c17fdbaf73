//! Build a Galois FSR that emits given eventually periodic sequences.
use fsrkit::gal2fib::{galois_from_sequences, output_sequence, OutputSeq};

fn main() -> fsrkit::Result<()> {
    let seqs = ["pre=0 per=1", "pre= per=110", "pre=1 per=0"]
        .iter()
        .map(|s| s.parse())
        .collect::<fsrkit::Result<Vec<OutputSeq>>>()?;
    let r = galois_from_sequences(&seqs)?;
    println!("{} stages: {}", r.n, r.matrix);
    for (s, &x0) in seqs.iter().zip(&r.initial) {
        println!(
            "  from {x0:>2}: {}  (wanted {s})",
            output_sequence(&r.matrix, x0)?
        );
    }
    Ok(())
}
