use commuting_cli::acceptance;
use commuting_core::random::DEFAULT_SEED;

fn main() {
    let results = acceptance::run(&[], DEFAULT_SEED, &mut std::io::stdout());
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
