// Critical group of a graph read from the text format, and of a few
// standard families.

use critgroup::graph::{complete_graph, cycle_graph, Multigraph};
use critgroup::group::critical_group;

const HOUSE: &str = "\
# square with a triangular roof
n 5
e 0 1
e 0 2
e 1 2
e 0 3
e 3 4
e 4 1
";

fn describe(name: &str, g: &Multigraph) -> Result<String, Box<dyn std::error::Error>> {
    let kg = critical_group(g)?;
    let factors: Vec<String> = kg
        .invariant_factors
        .iter()
        .map(|d| format!("Z/{d}"))
        .collect();
    let shape = if factors.is_empty() {
        "0".to_string()
    } else {
        factors.join(" + ")
    };
    Ok(format!("{name}: K = {shape}, |K| = {}", kg.order))
}

fn run() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let house: Multigraph = HOUSE.parse()?;
    let mut lines = vec![describe("house", &house)?];
    for n in 3..=6 {
        lines.push(describe(&format!("K_{n}"), &complete_graph(n)?)?);
    }
    lines.push(describe("C_7", &cycle_graph(7)?)?);
    Ok(lines)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run()? {
        println!("{line}");
    }
    Ok(())
}
