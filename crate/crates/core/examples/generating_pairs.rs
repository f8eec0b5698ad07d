// Which pairs `delta(x, y)` generate the critical group, and what wedge
// sums and added paths do to them.

use critgroup::graph::{add_path, cycle_graph, wedge_sum};
use critgroup::group::{critical_group, direct_sum};

fn run() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut lines = Vec::new();

    let c6 = critical_group(&cycle_graph(6)?)?;
    let gens: Vec<String> = c6
        .pair_reports()?
        .into_iter()
        .filter(|r| r.generates)
        .map(|r| format!("({}, {})", r.x, r.y))
        .collect();
    lines.push(format!("C_6 generating pairs: {}", gens.join(" ")));

    let c3 = cycle_graph(3)?;
    let c5 = cycle_graph(5)?;
    let w = wedge_sum(&c3, 0, &c5, 0)?;
    let kw = critical_group(&w)?;
    let first = kw
        .first_generating_pair()?
        .expect("Z/15 has a generating pair");
    lines.push(format!(
        "C_3 v C_5: factors {:?}, first generating pair ({}, {})",
        kw.invariant_factors, first.x, first.y
    ));
    lines.push(format!(
        "direct sum of Z/3 and Z/5: {:?}",
        direct_sum(
            &critical_group(&c3)?.invariant_factors,
            &critical_group(&c5)?.invariant_factors
        )
    ));

    let w3 = wedge_sum(&w, 0, &cycle_graph(7)?, 0)?;
    let k3 = critical_group(&w3)?;
    let count = k3.pair_reports()?.iter().filter(|r| r.generates).count();
    lines.push(format!(
        "C_3 v C_5 v C_7: |K| = {}, generating pairs: {count}",
        k3.order
    ));

    // A path added across a generating pair keeps the group cyclic.
    let longer = add_path(&w, first.x, first.y, 3)?;
    lines.push(format!(
        "after adding a path: {:?}",
        critical_group(&longer)?.invariant_factors
    ));
    Ok(lines)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run()? {
        println!("{line}");
    }
    Ok(())
}
