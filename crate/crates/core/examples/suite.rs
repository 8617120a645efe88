use twisted_elliptic::verify::{run_suite, SuiteConfig, Status};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let order: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(60);
    let samples: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(6);
    let m: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(120);
    let cfg = SuiteConfig { order, samples, lattice_cutoff: m, ..SuiteConfig::default() };
    let t0 = std::time::Instant::now();
    let result = run_suite(None, &cfg);
    for r in &result.reports {
        let status = match r.status { Status::Pass => "PASS", Status::Fail => "FAIL", Status::Skipped => "SKIP" };
        let err = r.max_rel_err.map(|e| format!(" err={e:.2e}")).unwrap_or_default();
        let note = r.note.as_deref().map(|n| format!("  [{}]", &n[..n.len().min(30)])).unwrap_or_default();
        let wit = r.witness.as_ref().and_then(|w| w.exponent.clone()).map(|e| format!(" @q^{e}")).unwrap_or_default();
        println!("{status} {:28} {}ms{err}{wit}{note}", r.id, r.elapsed_ms);
    }
    println!("== total={} passed={} failed={} in {:?}", result.summary.total, result.summary.passed, result.summary.failed, t0.elapsed());
}
