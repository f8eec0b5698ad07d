// Spanning tree counts of stacks: recurrences against exact closed forms.

use critgroup::sequences::{
    alternating_tables, constant_k_closed_form, constant_k_table, house_closed_form, house_table,
};

fn run() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut lines = Vec::new();
    for k in 3..=5 {
        let table = constant_k_table(k, 8)?;
        for (n, value) in table.entries() {
            assert_eq!(&constant_k_closed_form(k, n as u32)?, value);
        }
        let values: Vec<String> = table.values.iter().map(|v| v.to_string()).collect();
        lines.push(format!("{}: {}", table.name, values.join(", ")));
    }

    let house = house_table(8);
    for (n, value) in house.entries() {
        assert_eq!(&house_closed_form(n as u32), value);
    }
    let values: Vec<String> = house.values.iter().map(|v| v.to_string()).collect();
    lines.push(format!("{}: {}", house.name, values.join(", ")));

    let (a, b) = alternating_tables(3, 4, 5)?;
    for t in [a, b] {
        let values: Vec<String> = t.values.iter().map(|v| v.to_string()).collect();
        lines.push(format!("{}: {}", t.name, values.join(", ")));
    }
    Ok(lines)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run()? {
        println!("{line}");
    }
    Ok(())
}
