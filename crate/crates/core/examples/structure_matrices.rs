//! Structure and transition matrices of a Galois FSR, and the
//! semi-tensor product they are built from.
use fsrkit::expr::parse;
use fsrkit::stp::{
    coordinate_structure, galois_transition, restrict_support, swap_matrix, FsrSpec, LogicalMatrix,
};

fn main() -> fsrkit::Result<()> {
    let fs = [
        "z1 | !z2",
        "(z1 & !z2 & z3) | (!z1 & z2)",
        "z1 & (z2 <-> z3)",
    ]
    .iter()
    .map(|t| parse(t, 3))
    .collect::<fsrkit::Result<Vec<_>>>()?;
    let spec = FsrSpec::galois(fs)?;
    let l = galois_transition(&spec);
    println!("L = {l}");
    for k in 1..=3 {
        let m = coordinate_structure(&l, k);
        let r = restrict_support(&m);
        println!(
            "M{k} = {m}  depends on {:?}  reduced {}",
            r.support,
            r.to_expr()
        );
    }

    let a = LogicalMatrix::delta(2, 1)?;
    let b = LogicalMatrix::delta(4, 3)?;
    println!("d2^1 x d4^3 = {}", a.stp(&b));
    println!("W[2,4] = {}", swap_matrix(2, 4));
    Ok(())
}
