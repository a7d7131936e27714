//! End-to-end acceptance checks over the bundled corpus. Prints one line per criterion
//! and exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use aqcalc::jobs::Settings;
use aqcalc::run_document;

struct Run {
    aggregate: Value,
    bytes: Vec<u8>,
    dir: PathBuf,
    elapsed: Duration,
    status: Option<i32>,
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run_corpus(jobs: usize, tag: &str) -> Run {
    let dir = std::env::temp_dir().join(format!("aqcalc-acceptance-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("corpus.json");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_aqcalc"))
        .arg("corpus")
        .arg(corpus_dir())
        .args(["--jobs", &jobs.to_string(), "--out"])
        .arg(&out)
        .status()
        .expect("the binary runs");
    let elapsed = start.elapsed();
    let bytes = std::fs::read(&out).unwrap_or_default();
    let aggregate = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    Run {
        aggregate,
        bytes,
        dir,
        elapsed,
        status: status.code(),
    }
}

impl Run {
    fn items(&self) -> &serde_json::Map<String, Value> {
        static EMPTY: std::sync::OnceLock<serde_json::Map<String, Value>> = std::sync::OnceLock::new();
        self.aggregate["result"]["items"].as_object().unwrap_or_else(|| EMPTY.get_or_init(Default::default))
    }

    /// The report of the job `id` in corpus file `file`.
    fn job(&self, file: &str, id: &str) -> Option<&Value> {
        self.items()
            .get(file)?
            .get("jobs")?
            .as_array()?
            .iter()
            .find(|j| j["id"] == id)
            .map(|j| &j["report"])
    }

    fn result(&self, file: &str, id: &str) -> &Value {
        self.job(file, id).map_or(&Value::Null, |r| &r["result"])
    }

    fn certificate(&self, report: &Value, label: &str) -> Option<Value> {
        let name = report["certificates"][label].as_str()?;
        let text = std::fs::read_to_string(self.dir.join(name)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Every classify job as (file, report).
    fn classifications(&self) -> Vec<(&str, &Value)> {
        let mut out = Vec::new();
        for (file, item) in self.items() {
            for j in item["jobs"].as_array().into_iter().flatten() {
                if j["report"]["job"]["command"] == "classify" {
                    out.push((file.as_str(), &j["report"]));
                }
            }
        }
        out
    }
}

fn flag(report: &Value, name: &str) -> Option<bool> {
    report["result"]["flags"][name]["value"].as_bool()
}

fn no_violations(report: Option<&Value>) -> bool {
    report.is_some_and(|r| r["job"]["violations"].as_array().is_some_and(|v| v.is_empty()))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn implication_chain(run: &Run) -> Outcome {
    let summary = &run.aggregate["result"]["summary"];
    let violations = summary["violations"].as_u64();
    let chain = run.aggregate["result"]["implications"]["violations"].as_array().map(Vec::len);
    let classes = run.classifications();
    let has = |pred: &dyn Fn(&Value) -> bool| classes.iter().any(|(_, r)| pred(r));
    let mix = has(&|r| flag(r, "ci") == Some(true))
        && has(&|r| flag(r, "gorenstein") == Some(true) && flag(r, "ci") == Some(false))
        && has(&|r| flag(r, "cm") == Some(true) && flag(r, "gorenstein") == Some(false))
        && has(&|r| flag(r, "cm") == Some(false))
        && has(&|r| r["result"]["kind"] == "homotopy");
    let items = run.items().len();
    let pass = run.status == Some(0) && violations == Some(0) && chain == Some(0) && mix && items == 15 && run.elapsed < Duration::from_secs(120);
    outcome(
        pass,
        format!("{items} items, {} classifications, violations {violations:?}, mixed {mix}, {:.1}s", classes.len(), run.elapsed.as_secs_f64()),
    )
}

fn lci_agreement() -> Outcome {
    let src = std::fs::read_to_string(corpus_dir().join("15_complete_intersection_tests.aq")).unwrap();
    let start = Instant::now();
    let results = run_document(&src, &Settings::default(), None).unwrap();
    let elapsed = start.elapsed();
    let Some(Ok(lci)) = results.iter().find(|r| r.as_ref().is_ok_and(|o| o.command == "lci")) else {
        return outcome(false, "no lci job");
    };
    let items = lci.result["items"].as_array().cloned().unwrap_or_default();
    let agree = items.iter().all(|i| {
        let d2 = i["d2_zero"].as_bool();
        i["consistent"] == true && d2 == i["eps3_zero"].as_bool() && d2 == i["regular_sequence"].as_bool()
    });
    let decided_both = items.iter().any(|i| i["d2_zero"] == true) && items.iter().any(|i| i["d2_zero"] == false);
    let pass = items.len() >= 10 && agree && decided_both && lci.settings.homological == 8 && lci.violations.is_empty() && elapsed < Duration::from_secs(120);
    outcome(pass, format!("{} quotients, all three tests agree: {agree}, {:.1}s", items.len(), elapsed.as_secs_f64()))
}

fn type_is_socle(run: &Run) -> Outcome {
    let mut checked = 0;
    let mut ok = true;
    for (_, r) in run.classifications() {
        if let Some(c) = run.certificate(r, "socle") {
            checked += 1;
            ok &= c["total"] == c["ext_type"];
        }
    }
    let socle_of = |file: &str| {
        let r = run.job(file, "classify R")?;
        run.certificate(r, "socle").and_then(|c| c["ext_type"].as_u64())
    };
    let squares = socle_of("01_ci_squares.aq");
    let square_ideal = socle_of("02_square_of_maximal_ideal.aq");
    outcome(
        ok && checked >= 4 && squares == Some(1) && square_ideal == Some(2),
        format!("{checked} Artinian items, (x²,y²) type {squares:?}, (x,y)² type {square_ideal:?}"),
    )
}

fn betti_dual_numbers() -> Outcome {
    let start = Instant::now();
    let results = run_document("ring D = QQ[x] / (x^2);\njob betti D cap = 20;\n", &Settings::default(), None).unwrap();
    let elapsed = start.elapsed();
    let rows = match &results[0] {
        Ok(o) => o.result["betti"].as_array().cloned().unwrap_or_default(),
        Err(_) => Vec::new(),
    };
    let mut totals = [0u64; 21];
    for r in &rows {
        let s = r[0].as_u64().unwrap_or(99) as usize;
        if s <= 20 {
            totals[s] += r[2].as_u64().unwrap_or(0);
        }
    }
    let pass = totals.iter().all(|&t| t == 1) && elapsed < Duration::from_secs(10);
    outcome(pass, format!("ranks {:?}, {:.2}s", &totals[..], elapsed.as_secs_f64()))
}

fn deviations(run: &Run) -> Outcome {
    let ci = run.result("01_ci_squares.aq", "deviations R");
    let eps: Vec<u64> = ci["eps"].as_array().into_iter().flatten().filter_map(Value::as_u64).collect();
    let ci_ok = eps.len() >= 8 && eps[..2] == [2, 2] && eps[2..8].iter().all(|&e| e == 0) && ci["settled"] == true && ci["cap"] == 8;
    let m2 = run.result("02_square_of_maximal_ideal.aq", "deviations R");
    let eps3 = m2["eps"][2].as_u64();
    outcome(ci_ok && eps3.is_some_and(|e| e > 0), format!("ε(x²,y²) = {:?}, ε₃((x,y)²) = {eps3:?}", &eps[..eps.len().min(8)]))
}

fn model_soundness(run: &Run) -> Outcome {
    let items = [
        ("08_exterior_two.aq", "model E"),
        ("09_polynomial_even.aq", "model L"),
        ("10_truncated_even.aq", "model B"),
        ("11_square_zero_odd.aq", "model Z"),
        ("12_square_zero_even.aq", "model W"),
    ];
    let sound = items.iter().filter(|(f, id)| {
        let r = run.result(f, id);
        r["decomposable"] == true && r["quasi_iso"] == true && r["cap"].as_u64().is_some_and(|c| c >= 8) && no_violations(run.job(f, id))
    });
    let n = sound.count();
    let hq = &run.result("10_truncated_even.aq", "model B")["hq_dims"];
    let expected: Value = serde_json::json!({ "2": 1, "5": 1 });
    outcome(n == 5 && *hq == expected, format!("{n} of 5 models sound, hq of ℓ[y₂]/(y²) = {hq}"))
}

fn ext_factorization(run: &Run) -> Outcome {
    let cases = [
        ("08_exterior_two.aq", "ext_factor E"),
        ("10_truncated_even.aq", "ext_factor B"),
        ("13_exterior_mod_two.aq", "ext_factor F"),
    ];
    let ok: Vec<bool> = cases
        .iter()
        .map(|(f, id)| {
            let r = run.result(f, id);
            r["equal"] == true && r["window"] == serde_json::json!([-24, 0])
        })
        .collect();
    outcome(ok.iter().all(|&b| b), format!("Λ(x,y), ℓ[y₂]/(y²), Λ(x) over GF(2): {ok:?}"))
}

fn truncation(run: &Run) -> Outcome {
    let r = run.result("10_truncated_even.aq", "truncation B");
    let tor: Vec<u64> = r["tor"].as_array().into_iter().flatten().filter_map(Value::as_u64).collect();
    // H(A) lives in degrees 0 and 2; the shifted copy in 7 and 9.
    let expected: Vec<u64> = (0..=12).map(|d| u64::from([0, 2, 7, 9].contains(&d))).collect();
    outcome(r["equal"] == true && tor == expected, format!("Tor totals {tor:?}"))
}

fn unbounded_probe(run: &Run) -> Outcome {
    let model = run.result("12_square_zero_even.aq", "model W");
    let high: Vec<u64> = model["hq_dims"]
        .as_object()
        .into_iter()
        .flatten()
        .filter(|(d, n)| d.parse::<u32>().is_ok_and(|d| (10..=12).contains(&d)) && n.as_u64() > Some(0))
        .filter_map(|(d, _)| d.parse().ok())
        .collect();
    let probe = &run.result("12_square_zero_even.aq", "probe W")["probe"];
    let witness = probe["witness"].as_str().map(String::from);
    let pass = !high.is_empty() && witness.is_some() && probe["survived"] == 16 && probe["iterations"] == 16 && model["cap"] == 12;
    outcome(pass, format!("hq nonzero in degrees {high:?}, witness {witness:?}"))
}

fn sequences(run: &Run) -> Outcome {
    let f = "14_sequences.aq";
    let exact = ["transitivity A B C", "transitivity A A B"].iter().all(|id| run.result(f, id)["exact"] == true);
    let bases: Vec<&Value> = run
        .items()
        .get(f)
        .and_then(|i| i["jobs"].as_array())
        .into_iter()
        .flatten()
        .filter(|j| j["report"]["job"]["command"] == "base_change")
        .map(|j| &j["report"]["result"])
        .collect();
    let equal = bases.len() >= 3 && bases.iter().all(|b| b["equal"] == true);
    outcome(exact && equal, format!("transitivity exact {exact}, {} base changes equal {equal}", bases.len()))
}

fn cofiber(run: &Run) -> Outcome {
    let r = run.result("14_sequences.aq", "cofiber P");
    let fiber: Vec<u64> = r["fiber_homology"].as_array().into_iter().flatten().filter_map(Value::as_u64).collect();
    let pass = r["equal"] == true && r["degree_one_match"] == true && fiber.get(..2) == Some(&[1, 1][..]) && fiber[2..].iter().all(|&d| d == 0);
    outcome(pass, format!("fiber homology {:?}, cotangent {}", &fiber[..fiber.len().min(4)], r["cotangent"]))
}

fn determinism(one: &Run, four: &Run) -> Outcome {
    let same = !one.bytes.is_empty() && one.bytes == four.bytes;
    outcome(same, format!("{} bytes with --jobs 1, {} with --jobs 4", one.bytes.len(), four.bytes.len()))
}

fn main() {
    let one = run_corpus(1, "serial");
    let four = run_corpus(4, "parallel");
    let checks: Vec<(&str, Outcome)> = vec![
        ("implication chain on the corpus", implication_chain(&one)),
        ("complete intersection tests agree", lci_agreement()),
        ("Ext type equals socle dimension", type_is_socle(&one)),
        ("Betti numbers of k over QQ[x]/(x^2)", betti_dual_numbers()),
        ("deviations", deviations(&one)),
        ("minimal model soundness", model_soundness(&one)),
        ("Ext factorization", ext_factorization(&one)),
        ("truncation", truncation(&one)),
        ("unbounded indecomposables and probe", unbounded_probe(&one)),
        ("transitivity and flat base change", sequences(&one)),
        ("cofiber sequence", cofiber(&one)),
        ("determinism across thread counts", determinism(&one, &four)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in checks.iter().enumerate() {
        println!("criterion {:>2} {}: {name} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    let _ = std::fs::remove_dir_all(&one.dir);
    let _ = std::fs::remove_dir_all(&four.dir);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", checks.len());
}
