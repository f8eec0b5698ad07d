// Smith normal form with explicit unimodular transforms.

use critgroup::graph::complete_graph;
use critgroup::group::reduced_laplacian;
use critgroup::linalg::{determinant, smith_normal_form, IntMatrix};

fn run() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]])?;
    let snf = smith_normal_form(&a);
    assert!(snf.verify(&a));
    let mut lines = vec![
        format!("A =\n{a}"),
        format!("U =\n{}", snf.u),
        format!("V =\n{}", snf.v),
        format!("U A V =\n{}", snf.u.mul(&a)?.mul(&snf.v)?),
        format!("det A = {}", determinant(&a)?),
    ];

    // K_5 minus a vertex: the divisibility chain is 1 | 5 | 5 | 5.
    let l = reduced_laplacian(&complete_graph(5)?, 4)?;
    let diag: Vec<String> = smith_normal_form(&l)
        .diagonal()
        .iter()
        .map(|d| d.to_string())
        .collect();
    lines.push(format!(
        "SNF of reduced Laplacian of K_5: {}",
        diag.join(", ")
    ));
    Ok(lines)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run()? {
        println!("{line}");
    }
    Ok(())
}
