// Running subcommands in-process and rendering their reports.

use clap::Parser;
use su2gap::cli::{execute, RunConfig};
use su2gap::output::Format;

pub fn run_example() -> su2gap::Result<()> {
    let config = RunConfig::try_parse_from(["su2gap", "phi-iterate", "--t0", "1.9"]).expect("valid arguments");
    let report = execute(&config).expect("phi-iterate succeeds");
    print!("{}", report.to_csv());

    let config = RunConfig::try_parse_from(["su2gap", "construct", "--fricke", "0.5", "1"]).expect("valid arguments");
    let mut out = Vec::new();
    su2gap::cli::run(&config, &mut out).expect("construct succeeds");
    print!("{}", String::from_utf8_lossy(&out));
    assert_eq!(config.output_format(), Format::Json);
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
