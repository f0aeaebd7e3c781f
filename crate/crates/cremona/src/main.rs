fn main() {
    // Die quietly on SIGPIPE like other unix CLI tools instead of panicking
    // when output is piped into a consumer that exits early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(cremona::cli::run(std::env::args_os()));
}
