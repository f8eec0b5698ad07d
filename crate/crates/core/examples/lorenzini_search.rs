// The coprimality criterion for an edge, and a seeded search for graphs
// where the converse fails.

use critgroup::graph::Multigraph;
use critgroup::verify::{lorenzini_check, lorenzini_path_check, question1_search, SearchParams};

fn run() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut lines = Vec::new();
    let house = Multigraph::from_edges(
        5,
        [
            (0, 1, 1),
            (0, 2, 1),
            (1, 2, 1),
            (0, 3, 1),
            (3, 4, 1),
            (4, 1, 1),
        ],
    )?;
    let report = lorenzini_check(&house, 0, 1)?;
    lines.push(report.to_json().to_string());
    lines.push(lorenzini_path_check(&house, 0, 1, 3)?.to_json().to_string());

    let params = SearchParams {
        max_vertices: 5,
        trials: 50,
        seed: 11,
        exhaustive: true,
        ..SearchParams::default()
    };
    let outcome = question1_search(&params)?;
    assert!(outcome.reverify()?);
    lines.push(format!(
        "searched {} graphs: {} coprime edges, {} of them with a non-generating delta, {} non-cyclic groups",
        outcome.graphs_examined,
        outcome.coprime_instances,
        outcome.counterexamples.len(),
        outcome.theorem_violations.len(),
    ));
    if let Some(f) = outcome.counterexamples.first() {
        lines.push(format!(
            "example, pair ({}, {}):\n{}",
            f.x, f.y, f.graph_text
        ));
    }
    Ok(lines)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run()? {
        println!("{line}");
    }
    Ok(())
}
