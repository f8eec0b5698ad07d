// Firing, equivalence, and reduction of configurations.

use critgroup::chip::{fire, reduce_on_cycle, reduce_to_pair, Configuration};
use critgroup::graph::{cycle_graph, polygon_stack, Multigraph};
use critgroup::group::critical_group;

fn run() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut lines = Vec::new();

    let g = Multigraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])?;
    let c: Configuration = "0,4,-1,-1".parse()?;
    let fired = fire(&g, &c, 1, 1)?;
    lines.push(format!("fire vertex 1: {c} -> {fired}"));
    let kg = critical_group(&g)?;
    lines.push(format!("equivalent: {}", kg.are_equivalent(&c, &fired)?));

    let c6 = cycle_graph(6)?;
    let c: Configuration = "1,0,0,2,-3,0".parse()?;
    let r = reduce_on_cycle(&c6, &c)?;
    lines.push(format!(
        "C_6: {c} reduces to {} = {} * delta(4, 5)",
        r.config, r.multiple
    ));

    let sg = polygon_stack(&"5,4,3".parse()?)?;
    let c: Configuration = "3,-2,0,1,-1,2,-4,1".parse()?;
    let r = reduce_to_pair(&sg, &c, 1)?;
    assert_eq!(r.log.replay(&sg.graph, &c)?, r.config);
    lines.push(format!(
        "stack 5,4,3: {c} reduces to {} on {:?} in {} moves",
        r.config,
        r.pair,
        r.log.len()
    ));
    Ok(lines)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run()? {
        println!("{line}");
    }
    Ok(())
}
