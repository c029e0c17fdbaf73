//! Relabel a Fibonacci FSR into an equivalent Galois FSR and count all of
//! its same-stage equivalents.
use fsrkit::fib2gal::{classify_pairs, conjugate, count_distinct_equivalents, permutation_count};
use fsrkit::gal2fib::{equivalent, simulate};
use fsrkit::stp::{PermutationTransform, TransitionMatrix};

fn main() -> fsrkit::Result<()> {
    let lf: TransitionMatrix = "d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 15]".parse()?;
    let c = classify_pairs(&lf)?;
    println!(
        "S11 {:?}\nS10 {:?}\nS01 {:?}\nS00 {:?}",
        c.s11, c.s10, c.s01, c.s00
    );

    let t: PermutationTransform = "d16[1 3 2 4 7 5 6 8 14 9 12 10 16 11 15 13]".parse()?;
    let lg = conjugate(&lf, &t)?;
    println!("L_g = {lg}");
    println!("equal output sets: {}", equivalent(&lf, &lg).equal);
    let bits = |v: Vec<bool>| {
        v.into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect::<String>()
    };
    println!("L_f from 2: {}", bits(simulate(&lf, 2, 16)?));
    println!("L_g from 3: {}", bits(simulate(&lg, t.apply(2), 16)?));

    let db: TransitionMatrix = "d8[2 4 5 8 1 3 6 7]".parse()?;
    let n = count_distinct_equivalents(&db)?;
    println!(
        "3-stage de Bruijn: {} relabelings (expected {:?}), {} distinct Galois equivalents",
        n.permutations,
        permutation_count(3),
        n.distinct
    );
    Ok(())
}
