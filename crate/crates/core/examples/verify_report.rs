//! Run the default grid and write the JSON reports and a CSV table.

use gkloc::harness::{default_cases, run_cases, write_csv};

fn main() -> gkloc::Result<()> {
    let reports = run_cases(&default_cases()?)?;
    for r in &reports {
        println!("{:<14} {:?}", r.case, r.verdict);
    }
    let path = std::env::temp_dir().join("gkloc_characters.csv");
    write_csv(&reports, std::fs::File::create(&path).map_err(|e| gkloc::Error::Invalid(e.to_string()))?)?;
    println!("characters written to {}", path.display());
    println!("{}", reports[0].to_json());
    Ok(())
}
