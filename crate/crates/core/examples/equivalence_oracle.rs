//! Compare FSRs by their sets of output sequences.
use fsrkit::gal2fib::equivalent;
use fsrkit::stp::TransitionMatrix;

fn main() -> fsrkit::Result<()> {
    let pairs = [
        (
            "d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 15]",
            "d16[3 5 4 8 10 16 9 13 2 6 12 7 15 1 11 14]",
        ),
        ("d8[3 4 2 3 6 6 4 4]", "d4[1 3 1 4]"),
        ("d2[1 2]", "d2[2 1]"),
    ];
    for (a, b) in pairs {
        let (a, b): (TransitionMatrix, TransitionMatrix) = (a.parse()?, b.parse()?);
        let e = equivalent(&a, &b);
        println!("{a} vs {b}");
        println!(
            "  equal {}  a in b {}  b in a {}  same cycles {}",
            e.equal, e.a_in_b, e.b_in_a, e.phase_equal
        );
        println!("  a -> b {:?}", e.a_to_b);
    }
    Ok(())
}
