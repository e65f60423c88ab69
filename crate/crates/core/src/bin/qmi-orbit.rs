use std::io;

fn main() {
    let level = match std::env::var("ORBIT_LOG").as_deref() {
        Ok("quiet") => log::LevelFilter::Error,
        Ok("debug") => log::LevelFilter::Debug,
        _ => log::LevelFilter::Info,
    };
    env_logger::Builder::new().filter_level(level).format_target(false).init();
    let code = qmi_orbit::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
