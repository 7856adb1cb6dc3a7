fn main() {
    let exe = std::env::current_exe().ok();
    let out = koszul_cli::commands::run_with_exe(std::env::args_os(), exe);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
