//! Document and corpus runners.

use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use aqcalc_core::classify::implication_chain_check;

use crate::elaborate::{elaborate, Workspace};
use crate::jobs::{execute_job, JobOutcome, Settings};
use crate::report::{caps_value, envelope, CertificateFile, TOOL, VERSION};
use crate::syntax::{parse_syntax, DeclKind, Diagnostic, FieldSpec, Over, SourceDocument};

/// Rewrites every declared field to `GF(p)`, or to `QQ` when `p` is zero.
pub fn with_characteristic(doc: &mut SourceDocument, p: u64) {
    let field = if p == 0 { FieldSpec::Rational } else { FieldSpec::Prime(p) };
    for d in &mut doc.decls {
        match &mut d.kind {
            DeclKind::Ring(r) => r.field = field.clone(),
            DeclKind::Dga(a) => {
                if let Over::Field(f) = &mut a.over {
                    *f = field.clone();
                }
            }
            _ => {}
        }
    }
}

/// Parses and elaborates a source text.
pub fn load(src: &str, characteristic: Option<u64>) -> Result<(SourceDocument, Workspace), Diagnostic> {
    let mut doc = parse_syntax(src).map_err(|d| d.locate(src))?;
    if let Some(p) = characteristic {
        with_characteristic(&mut doc, p);
    }
    let ws = elaborate(&doc).map_err(|d| d.locate(src))?;
    Ok((doc, ws))
}

/// Runs every job of a document in order. A job that fails on bad input does not stop the rest.
pub fn run_document(src: &str, settings: &Settings, characteristic: Option<u64>) -> Result<Vec<Result<JobOutcome, Diagnostic>>, Diagnostic> {
    let (doc, ws) = load(src, characteristic)?;
    Ok(doc.jobs().map(|j| execute_job(&ws, j, settings).map_err(|d| d.locate(src))).collect())
}

pub fn diagnostic_value(d: &Diagnostic) -> Value {
    json!({ "code": d.code, "message": d.message, "line": d.line, "column": d.column })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub jobs: usize,
    pub violations: usize,
    pub unsettled: usize,
    /// Files that failed to parse or elaborate.
    pub parse_failures: usize,
    /// Jobs refused at execution time.
    pub job_errors: usize,
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub aggregate: Value,
    pub certificates: Vec<CertificateFile>,
    pub tally: Tally,
}

struct Item {
    file: String,
    outcome: Result<Vec<Result<JobOutcome, Diagnostic>>, Diagnostic>,
}

/// Runs every `.aq` file under `dir` on `jobs` threads. Items are merged in file-name order,
/// so the aggregate does not depend on the thread count.
pub fn corpus_run(dir: &Path, settings: &Settings, characteristic: Option<u64>, jobs: usize) -> std::io::Result<CorpusReport> {
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "aq"))
        .collect();
    files.sort();
    let sources = files
        .iter()
        .map(|p| Ok((p.file_name().unwrap_or_default().to_string_lossy().into_owned(), std::fs::read_to_string(p)?)))
        .collect::<std::io::Result<Vec<_>>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(std::io::Error::other)?;
    let items: Vec<Item> = pool.install(|| {
        sources
            .par_iter()
            .map(|(file, src)| Item {
                file: file.clone(),
                outcome: run_document(src, settings, characteristic),
            })
            .collect()
    });
    Ok(aggregate(&items, settings))
}

fn aggregate(items: &[Item], settings: &Settings) -> CorpusReport {
    let mut tally = Tally::default();
    let mut certificates = Vec::new();
    let mut reports = Vec::new();
    let mut out = Map::new();
    for item in items {
        let v = match &item.outcome {
            Err(d) => {
                tally.parse_failures += 1;
                json!({ "status": "parse_error", "diagnostic": diagnostic_value(d) })
            }
            Ok(results) => {
                let mut jobs = Vec::new();
                for r in results {
                    tally.jobs += 1;
                    match r {
                        Ok(o) => {
                            tally.violations += o.violations.len();
                            tally.unsettled += o.unsettled.len();
                            if let Some(c) = &o.classification {
                                let mut c = c.clone();
                                c.id = format!("{}:{}", item.file, c.id);
                                reports.push(c);
                            }
                            let (env, files) = envelope(o);
                            certificates.extend(files);
                            jobs.push(json!({ "id": o.id(), "report": env }));
                        }
                        Err(d) => {
                            tally.job_errors += 1;
                            jobs.push(json!({ "error": diagnostic_value(d) }));
                        }
                    }
                }
                json!({ "status": "ok", "jobs": jobs })
            }
        };
        out.insert(item.file.clone(), v);
    }
    let chain = implication_chain_check(&reports);
    tally.violations += chain.violations.len();
    certificates.sort_by(|a, b| a.name.cmp(&b.name));
    certificates.dedup();
    let aggregate = json!({
        "tool": TOOL,
        "version": VERSION,
        "job": { "command": "corpus_run", "targets": items.iter().map(|i| i.file.clone()).collect::<Vec<_>>() },
        "caps": caps_value(settings),
        "result": {
            "items": out,
            "implications": serde_json::to_value(&chain).expect("reports serialize to JSON"),
            "summary": {
                "items": items.len(),
                "jobs": tally.jobs,
                "violations": tally.violations,
                "unsettled": tally.unsettled,
                "parse_failures": tally.parse_failures,
                "job_errors": tally.job_errors,
            },
        },
        "certificates": certificates.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
    });
    CorpusReport {
        aggregate,
        certificates,
        tally,
    }
}
