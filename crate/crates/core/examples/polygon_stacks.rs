// Building polygon stacks and exporting them.

use critgroup::graph::{polygon_stack, StackSpec};
use critgroup::group::critical_group;
use critgroup::sequences::{forest_count, tree_count};

fn run() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut lines = Vec::new();
    for text in ["3,4", "2,2,4,2,2", "5,4,3", "4,4,4,4"] {
        let spec: StackSpec = text.parse()?;
        let sg = polygon_stack(&spec)?;
        let kg = critical_group(&sg.graph)?;
        lines.push(format!(
            "{spec}: {} vertices, {} edges, T = {}, F = {}, K = {:?}, active pair {:?}",
            sg.graph.vertex_count(),
            sg.graph.edge_count(),
            tree_count(&spec),
            forest_count(&spec)?,
            kg.invariant_factors,
            sg.active_pair.expect("non-empty spec"),
        ));
    }
    let house = polygon_stack(&"3,4".parse()?)?;
    lines.push(house.graph.to_dot());
    Ok(lines)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run()? {
        println!("{line}");
    }
    Ok(())
}
