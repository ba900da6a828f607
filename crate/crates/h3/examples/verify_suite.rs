//! Runs groups of the self-check suite and prints the report.
//! Usage: verify_suite [group-or-id-prefix]

use h3::characters::Budget;
use h3::verify::{emit_report, exit_code, run_suite, Format, SuiteOptions};

fn main() {
    let filter = std::env::args().nth(1).or(Some("tables".into()));
    let opts = SuiteOptions { filter, budget: Budget::from_env(), extended: false };
    let records = run_suite(&opts);
    print!("{}", emit_report(&records, Format::Text, true));
    std::process::exit(exit_code(&records));
}
