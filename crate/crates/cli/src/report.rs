//! Audit reports: one line per check plus a summary, in a human table or a
//! JSON mirror.

use moduli_audit::CertificateKind;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ops::{render, run_op, OpError};
use crate::scenario::{select, Context, Scenario};
use crate::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "PASS-BOUNDED")]
    PassBounded,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::PassBounded => "PASS-BOUNDED",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportLine {
    pub id: String,
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub verdict: Verdict,
    pub certificate: Option<CertificateKind>,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub pass_bounded: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub lines: Vec<ReportLine>,
    pub summary: Summary,
    pub exit_status: i32,
}

/// Everything `explain` prints for one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Explanation {
    pub id: String,
    pub claim: String,
    pub op: String,
    pub formula: String,
    pub inputs: Vec<(String, String)>,
    pub anchor: String,
    pub assumptions: Vec<String>,
    pub certificate: Option<CertificateKind>,
}

pub fn run_scenario(sc: &Scenario) -> Result<(Report, Vec<Explanation>), InputError> {
    let mut ctx = Context::new(sc)?;
    let mut lines = Vec::new();
    let mut explanations = Vec::new();
    for check in &sc.checks {
        let located = |m: String| InputError(format!("check {:?}: {m}", check.id));
        let args = ctx.resolve(&check.args).map_err(|e| located(e.0))?;
        let outcome = run_op(&check.op, &args, &ctx);
        let expected = match &check.expect {
            Some(v) => render(v),
            None => "refusal".to_string(),
        };
        let mut line = ReportLine {
            id: check.id.clone(),
            claim: check.claim.clone(),
            computed: String::new(),
            expected,
            verdict: Verdict::Fail,
            certificate: None,
            anchor: check.anchor.clone(),
            diff: None,
        };
        let mut explanation = Explanation {
            id: check.id.clone(),
            claim: check.claim.clone(),
            op: check.op.clone(),
            formula: String::new(),
            inputs: Vec::new(),
            anchor: check.anchor.clone(),
            assumptions: Vec::new(),
            certificate: None,
        };
        match outcome {
            Err(OpError::Input(m)) => return Err(located(m)),
            Err(OpError::Refused(m)) => {
                line.computed = format!("refused: {m}");
                explanation.formula = line.computed.clone();
                if check.expect_refusal {
                    line.verdict = Verdict::Pass;
                } else {
                    line.diff = Some(format!("expected {}, but the operation refused: {m}", line.expected));
                }
            }
            Ok(o) => {
                let compared: Value = match &check.select {
                    Some(path) => select(&o.value, path)
                        .cloned()
                        .ok_or_else(|| located(format!("result has no field {path:?}")))?,
                    None => o.value.clone(),
                };
                line.computed = render(&compared);
                line.certificate = o.certificate;
                let matches = check.expect.as_ref() == Some(&compared);
                if matches {
                    line.verdict = if o.certificate == Some(CertificateKind::BoundLimited) {
                        Verdict::PassBounded
                    } else {
                        Verdict::Pass
                    };
                } else if check.expect_refusal {
                    line.diff = Some(format!("expected a refusal, computed {}", line.computed));
                } else {
                    line.diff = Some(format!("expected {}, computed {}", line.expected, line.computed));
                }
                explanation.formula = o.formula;
                explanation.inputs = o.inputs;
                explanation.assumptions = o.assumptions;
                explanation.certificate = o.certificate;
                ctx.results.insert(check.id.clone(), o.value);
            }
        }
        lines.push(line);
        explanations.push(explanation);
    }
    let mut summary = Summary::default();
    for l in &lines {
        match l.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::PassBounded => summary.pass_bounded += 1,
            Verdict::Fail => summary.fail += 1,
        }
    }
    let exit_status = if summary.fail > 0 { 1 } else { 0 };
    Ok((Report { scenario: sc.name.clone(), lines, summary, exit_status }, explanations))
}

impl Report {
    pub fn human(&self) -> String {
        let w_id = self.lines.iter().map(|l| l.id.chars().count()).max().unwrap_or(0);
        let w_claim = self.lines.iter().map(|l| l.claim.chars().count()).max().unwrap_or(0);
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        let mut out = format!("scenario {}\n", if self.scenario.is_empty() { "(unnamed)" } else { &self.scenario });
        for l in &self.lines {
            let cert = l.certificate.map(|c| c.as_str()).unwrap_or("-");
            out.push_str(&format!(
                "{}  {}  {}  computed {}  [{cert}]",
                pad(l.verdict.as_str(), 12),
                pad(&l.id, w_id),
                pad(&l.claim, w_claim),
                l.computed
            ));
            if !l.anchor.is_empty() {
                out.push_str(&format!("  ({})", l.anchor));
            }
            out.push('\n');
            if let Some(d) = &l.diff {
                out.push_str(&format!("    diff: {d}\n"));
            }
        }
        let s = self.summary;
        out.push_str(&format!("summary: {} PASS, {} PASS-BOUNDED, {} FAIL\n", s.pass, s.pass_bounded, s.fail));
        out
    }

    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl Explanation {
    pub fn human(&self) -> String {
        let mut out = format!("check {}\n", self.id);
        out.push_str(&format!("claim: {}\n", self.claim));
        out.push_str(&format!("operation: {}\n", self.op));
        out.push_str(&format!("formula: {}\n", self.formula));
        if !self.inputs.is_empty() {
            out.push_str("inputs:\n");
            for (k, v) in &self.inputs {
                out.push_str(&format!("  {k} = {v}\n"));
            }
        }
        out.push_str(&format!("anchor: {}\n", self.anchor));
        out.push_str(&format!("certificate: {}\n", self.certificate.map(|c| c.as_str()).unwrap_or("-")));
        if !self.assumptions.is_empty() {
            out.push_str("assumptions:\n");
            for a in &self.assumptions {
                out.push_str(&format!("  - {a}\n"));
            }
        }
        out
    }
}
