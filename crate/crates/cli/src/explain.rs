//! Plain-text narration of task results.

use std::fmt::Write;

use dirfib_core::{Certificate, Verdict};

use crate::runner::TaskResult;

fn walk(c: &Certificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}- {}: {} (max violation {:e}, tol {:e})", c.contract, c.verdict, c.max_violation, c.tolerance);
    if c.verdict != Verdict::Pass {
        if let Some(w) = &c.witness {
            let _ = write!(out, "{pad}  witness: {}", w.note);
            if !w.params.is_empty() {
                let _ = write!(out, " at parameters {:?}", w.params);
            }
            if !w.values.is_empty() {
                let _ = write!(out, " values {:?}", w.values);
            }
            out.push('\n');
        }
    }
    // Repeated passing probes are summarized rather than listed.
    let passing = c.parts.iter().filter(|p| p.verdict == Verdict::Pass && p.parts.is_empty()).count();
    for p in &c.parts {
        if p.verdict != Verdict::Pass || !p.parts.is_empty() || passing <= 8 {
            walk(p, depth + 1, out);
        }
    }
    if passing > 8 {
        let _ = writeln!(out, "{pad}  ({passing} passing checks)");
    }
}

pub fn explain(r: &TaskResult) -> String {
    let mut out = String::new();
    let mark = if r.as_expected() { "as expected" } else { "UNEXPECTED" };
    let _ = writeln!(out, "task {} [{}]: {} ({mark}, expected {})", r.name, r.tag, r.verdict(), r.expect);
    let _ = writeln!(out, "  witness: {}", r.provenance);
    let _ = writeln!(out, "  grid {} points, tolerance {:e}", r.grid, r.tol);
    let mut body = String::new();
    walk(&r.certificate, 1, &mut body);
    out.push_str(&body);
    out
}
