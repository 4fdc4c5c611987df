//! Prints one PASS/FAIL/SKIP line per criterion. Pass `--long` (or set
//! `COVERING_LAB_LONG=1`) for the long criteria and `--royle-dir DIR` (or
//! `COVERING_LAB_ROYLE_DIR`) for the biplane files.

use std::path::PathBuf;
use std::process::ExitCode;

use covering_lab::verify::{self, Options, Status};

fn main() -> ExitCode {
    let mut options = Options::from_env();
    let mut args = std::env::args().skip(1);
    while let Some(arg) = args.next() {
        match arg.as_str() {
            "--long" => options.long = true,
            "--royle-dir" => options.royle_dir = args.next().map(PathBuf::from),
            // Flags that cargo forwards to every test target.
            _ => {}
        }
    }
    let outcomes = verify::run_all(&options, |o| println!("{o}"));
    let count = |s| outcomes.iter().filter(|o| o.status == s).count();
    println!(
        "acceptance: {} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip)
    );
    if count(Status::Fail) > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
