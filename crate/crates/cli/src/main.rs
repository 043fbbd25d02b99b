use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    if let Some(help) = gwpt_cli::is_help_request(&argv) {
        print!("{help}");
        return ExitCode::SUCCESS;
    }
    std::panic::set_hook(Box::new(|_| {}));
    let result = gwpt_cli::run_command(&argv);
    println!("{}", result.to_json());
    ExitCode::from(result.exit_code as u8)
}
