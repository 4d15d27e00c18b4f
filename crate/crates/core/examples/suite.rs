//! Runs every verification on one named fixture and prints the reports.

use std::time::Instant;

use mvideal::multiview::{fixtures, verify, TheoremId, VerifyOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "three_views".into());
    let only: Option<TheoremId> = args.next().map(|s| s.parse().expect("theorem id"));
    let arr = fixtures::by_name(&name).expect("fixture name");
    let opts = VerifyOptions { timings: true, ..Default::default() };
    for id in TheoremId::ALL.into_iter().filter(|t| only.is_none_or(|o| o == *t)) {
        let start = Instant::now();
        let rep = verify(&arr, id, &opts);
        print!("{}", rep.render());
        println!("  [{:.1}s]", start.elapsed().as_secs_f64());
    }
}
