//! Parse update functions and price them with the 90nm gate table.
use fsrkit::expr::{parse, GateCostModel};

fn main() -> fsrkit::Result<()> {
    let model = GateCostModel::default();
    for text in [
        "x1 & x2",
        "x1 ^ (x2 & x3)",
        "(x1 & !x2 & !x3 & x4) | (!x1 & (x2 | x3 | !x4))",
        "z1 <-> z3",
    ] {
        let e = parse(text, 4)?;
        let c = model.cost(&e);
        println!(
            "{:<50} area {:>6.1} um2  delay {:>5} ps  gates {}",
            e.to_string(),
            c.area_um2,
            c.delay_ps,
            c.gate_count
        );
        println!("{:<50} anf {}", "", e.to_anf());
    }
    match parse("x1 & (x2 |", 4) {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
