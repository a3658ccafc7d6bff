//! Acceptance gate: every check suite at its stated tolerance and time
//! budget, one line per criterion. Run with `--nocapture` to see the lines.

use rotsurf::verify::{run_suite, Suite};
use rotsurf::FormulaVariant;

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    let mut out = String::new();
    // sequential on purpose: the budgets are wall-clock
    for (i, suite) in Suite::ALL.into_iter().enumerate() {
        let (rep, secs) = run_suite(suite, FormulaVariant::Corrected);
        let in_time = secs < suite.budget();
        let ok = rep.passed && in_time;
        out.push_str(&format!(
            "criterion {} {:<13} {}  ({:.2} s, budget {} s)\n",
            i + 1,
            suite.name(),
            if ok { "PASS" } else { "FAIL" },
            secs,
            suite.budget()
        ));
        for l in &rep.lines {
            let tag = match (l.gating, l.passed) {
                (true, true) => "ok  ",
                (true, false) => "MISS",
                (false, _) => "info",
            };
            out.push_str(&format!(
                "    {tag} {}: {:.3e} (limit {:.1e}) {}\n",
                l.label, l.value, l.threshold, l.detail
            ));
        }
        if !ok {
            failed.push(suite.name());
        }
    }
    println!("{out}");
    assert!(failed.is_empty(), "failed criteria: {failed:?}\n{out}");
}
