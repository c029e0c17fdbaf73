//! Build a Fibonacci transition matrix from its feedback, recognize the
//! shift law, and read the feedback back.
use fsrkit::expr::parse;
use fsrkit::fib::{feedback_of, fib_transition, fibonacci_violation};
use fsrkit::stp::{structure_matrix, synthesize_expr, TransitionMatrix};

fn main() -> fsrkit::Result<()> {
    let f = parse("(x1 & !x2 & !x3 & x4) | (!x1 & (x2 | x3 | !x4))", 4)?;
    let m = structure_matrix(&f, 4)?;
    let l = fib_transition(&m);
    println!("M_f = {m}");
    println!("L_f = {l}");
    println!("feedback back = {}", synthesize_expr(&feedback_of(&l)?));

    let lg: TransitionMatrix = "d16[3 5 4 8 10 16 9 13 2 6 12 7 15 1 11 14]".parse()?;
    println!(
        "{lg}: first column breaking the shift law = {:?}",
        fibonacci_violation(&lg)
    );
    Ok(())
}
