//! One line per acceptance criterion; exits nonzero if any fails.

fn main() {
    let mut failed = Vec::new();
    for id in 1..=8 {
        let outcome = klr::suites::criterion(id).expect("criteria 1 to 8 exist");
        println!("{}", outcome.line());
        if !outcome.ok() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 8 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
