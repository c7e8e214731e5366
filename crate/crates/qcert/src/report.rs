//! Structured verification records and their JSON-lines / Markdown renderings.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

/// One check: identifier, parameters, verdict, expected vs actual, witness.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    /// Acceptance criterion (1..8) the check belongs to, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            criterion: None,
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            expected: String::new(),
            actual: String::new(),
            witness: None,
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn criterion(mut self, c: u8) -> Self {
        self.criterion = Some(c);
        self
    }

    /// Sets the verdict from a boolean outcome. A failing report always
    /// carries a witness; callers that have none get the actual value.
    pub fn outcome(mut self, ok: bool, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self.expected = expected.into();
        self.actual = actual.into();
        if !ok && self.witness.is_none() {
            self.witness = Some(Value::String(self.actual.clone()));
        }
        self
    }

    pub fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    /// Turns an engine error into an error report.
    pub fn error(mut self, err: &crate::Error) -> Self {
        self.verdict = Verdict::Error;
        self.actual = err.to_string();
        self.witness = Some(Value::String(err.to_string()));
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One JSON object on a single line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Runs `body`, which either produces a finished report or an error, and
/// stamps timing; errors become error-verdict reports.
pub fn run_check<F>(base: VerificationReport, body: F) -> VerificationReport
where
    F: FnOnce(VerificationReport) -> crate::Result<VerificationReport>,
{
    let start = Instant::now();
    let fallback = base.clone();
    match body(base) {
        Ok(r) => r.timed(start),
        Err(e) => fallback.error(&e).timed(start),
    }
}

/// Markdown summary: one row per check id with pass / fail / error counts,
/// followed by the details of every non-passing report.
pub fn markdown_summary(reports: &[VerificationReport]) -> String {
    let mut groups: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in reports {
        let g = groups.entry(r.check_id.as_str()).or_default();
        match r.verdict {
            Verdict::Pass => g[0] += 1,
            Verdict::Fail => g[1] += 1,
            Verdict::Error => g[2] += 1,
        }
    }
    let mut out = String::from("# Certification summary\n\n| check | pass | fail | error |\n|---|---:|---:|---:|\n");
    for (id, [p, f, e]) in &groups {
        out.push_str(&format!("| `{id}` | {p} | {f} | {e} |\n"));
    }
    let total_bad = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("\n**{} checks, {} not passing.**\n", reports.len(), total_bad));
    if total_bad > 0 {
        out.push_str("\n## Non-passing checks\n\n| check | params | expected | actual |\n|---|---|---|---|\n");
        for r in reports.iter().filter(|r| !r.passed()) {
            let params = serde_json::to_string(&r.params).unwrap_or_default();
            out.push_str(&format!("| `{}` | `{}` | {} | {} |\n", r.check_id, params, r.expected, r.actual));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_report_has_witness() {
        let r = VerificationReport::new("x").outcome(false, "0", "1");
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.is_some());
    }

    #[test]
    fn json_line_is_single_line() {
        let r = VerificationReport::new("x").param("n", 10).outcome(true, "a", "a");
        let line = r.to_json_line();
        assert!(!line.contains('\n'));
        let v: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["params"]["n"], 10);
    }

    #[test]
    fn errors_become_error_reports() {
        let r = run_check(VerificationReport::new("e"), |_| Err(crate::Error::Domain("bad".into())));
        assert_eq!(r.verdict, Verdict::Error);
    }

    #[test]
    fn markdown_lists_failures() {
        let rs = vec![
            VerificationReport::new("a").outcome(true, "", ""),
            VerificationReport::new("b").outcome(false, "PD", "indefinite"),
        ];
        let md = markdown_summary(&rs);
        assert!(md.contains("| `b` | 0 | 1 | 0 |"));
        assert!(md.contains("indefinite"));
    }
}
