use std::process::ExitCode;

use qts_cli::{parse_args, run, CliError};

fn main() -> ExitCode {
    let outcome = parse_args(std::env::args_os())
        .map_err(CliError::from)
        .and_then(|cfg| run(&cfg));
    match outcome {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code() as u8;
            match e {
                CliError::Usage(usage) => {
                    let _ = usage.print();
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(code)
        }
    }
}
