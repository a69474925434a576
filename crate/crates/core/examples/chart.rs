//! Prints the Galois correspondence for a polynomial given on the command
//! line, e.g. `cargo run --example chart -- "x^4 - 2"`.

use galoiskit::cli::parse_poly;
use galoiskit::field::Rationals;
use galoiskit::galois::{galois_group_of, render_chart};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = std::env::args().nth(1).unwrap_or_else(|| "x^3 - 2".into());
    let f = parse_poly(&src, &Rationals)?;
    let report = galois_group_of(&f)?;
    println!("{}: {} of order {}", report.poly, report.name, report.order);
    match &report.rows {
        Some(rows) => print!("{}", render_chart(rows)),
        None => println!("too many subgroups to chart"),
    }
    Ok(())
}
