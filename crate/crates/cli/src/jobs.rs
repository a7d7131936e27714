//! Runs one `job` declaration against an elaborated workspace.

use serde::Serialize;
use serde_json::{json, Value};

use aqcalc_core::aq::{
    flat_base_change_check, hurewicz_compare, ls_cotangent, transitivity_check, vanishing_profile, vanishing_profile_dg,
    FlatExtension, RelativePresentation,
};
use aqcalc_core::classify::{
    classify_homotopy, classify_ring, cofiber_sequence_check, default_window, lci_characterization_check,
    regular_degenerate_check, ClassificationReport,
};
use aqcalc_core::dga::{
    acyclic_closure_dg, degeneracy_probe_over, dg_ext, dg_homology, ext_factorization_check, free_on_one, tate_closure,
    truncation_tor_check, AlgebraUnder, DGAlgebra, Element,
};
use aqcalc_core::error::AlgebraError;
use aqcalc_core::expr::Expr;
use aqcalc_core::graded::ModulePresentation;
use aqcalc_core::groebner::is_regular_sequence;
use aqcalc_core::model::{minimal_model, o1_probe, o_decomposition};
use aqcalc_core::poly::{Polynomial, RingPresentation};
use aqcalc_core::resolution::{depth_dim_type, minimal_free_resolution, BettiTable, Caps};

use crate::elaborate::{core_diag, Object, Workspace};
use crate::syntax::{Diagnostic, JobDecl, Name, OptionValue};

/// Caps and limits in force for a job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub homological: usize,
    pub internal: i32,
    pub window: Option<(i64, i64)>,
    pub iterations: usize,
}

impl Default for Settings {
    fn default() -> Settings {
        Settings {
            homological: 12,
            internal: 24,
            window: None,
            iterations: 16,
        }
    }
}

impl Settings {
    pub fn caps(&self) -> Caps {
        Caps {
            homological: self.homological,
            internal: self.internal,
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobOutcome {
    pub command: String,
    pub targets: Vec<String>,
    pub settings: Settings,
    pub result: Value,
    /// Labelled certificates, written out as separate files.
    pub certificates: Vec<(String, Value)>,
    pub violations: Vec<String>,
    pub unsettled: Vec<String>,
    pub classification: Option<ClassificationReport>,
}

impl JobOutcome {
    fn new(j: &JobDecl, settings: Settings) -> JobOutcome {
        JobOutcome {
            command: j.command.text.clone(),
            targets: j.targets.iter().map(|t| t.text.clone()).collect(),
            settings,
            result: Value::Null,
            certificates: Vec::new(),
            violations: Vec::new(),
            unsettled: Vec::new(),
            classification: None,
        }
    }

    pub fn id(&self) -> String {
        format!("{} {}", self.command, self.targets.join(" "))
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.violations.push(what.into());
        }
    }
}

fn option<'a>(j: &'a JobDecl, key: &str) -> Option<&'a OptionValue> {
    j.options.iter().find(|(k, _)| k.text == key).map(|(_, v)| v)
}

fn option_span(j: &JobDecl, key: &str) -> crate::syntax::Span {
    j.options.iter().find(|(k, _)| k.text == key).map_or(j.command.span, |(k, _)| k.span)
}

fn int_value(e: &Expr) -> Option<i64> {
    match e {
        Expr::Num(n, 1) => Some(*n),
        Expr::Neg(a) => int_value(a).map(|n| -n),
        _ => None,
    }
}

fn option_int(j: &JobDecl, key: &str) -> Result<Option<i64>, Diagnostic> {
    match option(j, key) {
        None => Ok(None),
        Some(OptionValue::Expr(e)) => int_value(&e.expr)
            .map(Some)
            .ok_or_else(|| Diagnostic::new("P-OPTION", format!("{key} must be an integer"), e.span)),
        Some(_) => Err(Diagnostic::new("P-OPTION", format!("{key} must be an integer"), option_span(j, key))),
    }
}

fn option_name(j: &JobDecl, key: &str) -> Result<Option<Name>, Diagnostic> {
    match option(j, key) {
        None => Ok(None),
        Some(OptionValue::Expr(e)) => match &e.expr {
            Expr::Var(v) => Ok(Some(Name {
                text: v.clone(),
                span: e.span,
            })),
            _ => Err(Diagnostic::new("P-OPTION", format!("{key} must be a name"), e.span)),
        },
        Some(_) => Err(Diagnostic::new("P-OPTION", format!("{key} must be a name"), option_span(j, key))),
    }
}

fn option_exprs<'a>(j: &'a JobDecl, key: &str) -> Result<Option<Vec<&'a crate::syntax::SExpr>>, Diagnostic> {
    match option(j, key) {
        None => Ok(None),
        Some(OptionValue::Expr(e)) => Ok(Some(vec![e])),
        Some(OptionValue::List(es)) => Ok(Some(es.iter().collect())),
        Some(OptionValue::Window(..)) => Err(Diagnostic::new("P-OPTION", format!("{key} takes expressions"), option_span(j, key))),
    }
}

fn option_polys(j: &JobDecl, key: &str, q: &RingPresentation) -> Result<Option<Vec<Polynomial>>, Diagnostic> {
    let Some(es) = option_exprs(j, key)? else { return Ok(None) };
    es.iter()
        .map(|e| Polynomial::from_expr(&q.ring, &e.expr).map_err(|err| core_diag(err, e.span)))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// Global settings overridden by the job's own options.
pub fn job_settings(j: &JobDecl, global: &Settings) -> Result<Settings, Diagnostic> {
    let mut s = global.clone();
    let nonneg = |key: &str, v: i64| {
        if v < 0 {
            Err(Diagnostic::new("P-OPTION", format!("{key} must not be negative"), option_span(j, key)))
        } else {
            Ok(v)
        }
    };
    if let Some(v) = option_int(j, "cap")? {
        s.homological = nonneg("cap", v)? as usize;
    }
    if let Some(v) = option_int(j, "internal")? {
        s.internal = nonneg("internal", v)? as i32;
    }
    if let Some(v) = option_int(j, "iterations")? {
        s.iterations = nonneg("iterations", v)? as usize;
    }
    match option(j, "window") {
        None => {}
        Some(OptionValue::Window(a, b)) if a <= b => s.window = Some((*a, *b)),
        Some(_) => return Err(Diagnostic::new("P-OPTION", "window must be [low, high] with low <= high", option_span(j, "window"))),
    }
    Ok(s)
}

fn arity(j: &JobDecl, min: usize, max: usize) -> Result<(), Diagnostic> {
    let n = j.targets.len();
    if n < min || n > max {
        let want = if min == max { format!("{min}") } else { format!("{min} to {max}") };
        return Err(Diagnostic::new("P-ARITY", format!("{} takes {want} targets, got {n}", j.command.text), j.command.span));
    }
    Ok(())
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize to JSON")
}

fn betti_value(t: &BettiTable) -> Value {
    let rows: Vec<[i64; 3]> = t.entries.iter().map(|(&(s, q), &n)| [s, q, n as i64]).collect();
    json!({ "betti": rows })
}

/// The generator of `a` named by the `at` option.
fn generator_at(j: &JobDecl, a: &DGAlgebra) -> Result<(usize, Element), Diagnostic> {
    let name = option_name(j, "at")?.ok_or_else(|| Diagnostic::new("P-OPTION", format!("{} needs at = <generator>", j.command.text), j.command.span))?;
    let i = a
        .generator_index(&name.text)
        .ok_or_else(|| Diagnostic::new("P-NAME", format!("{} is not a generator", name.text), name.span))?;
    Ok((i, a.gen(i)))
}

/// `A` as an algebra under the ring `r`, matching variables by name.
fn under_ring(r: &RingPresentation, a: &DGAlgebra, span: crate::syntax::Span) -> Result<AlgebraUnder, Diagnostic> {
    let src = DGAlgebra::new(r.clone()).map_err(|e| core_diag(e, span))?;
    let mut base = Vec::new();
    for v in &r.ring.vars {
        match a.base.ring.var_index(v) {
            Some(i) => base.push(a.base_var(i)),
            None => return Err(Diagnostic::new("P-NAME", format!("{v} has no counterpart in the target"), span)),
        }
    }
    AlgebraUnder::new(&src, a.clone(), base, Vec::new()).map_err(|e| core_diag(e, span))
}

/// Executes a job. Core failures that signal a broken invariant become violations,
/// undecidable cases become unsettled markers, and the rest are input errors.
pub fn execute_job(ws: &Workspace, j: &JobDecl, global: &Settings) -> Result<JobOutcome, Diagnostic> {
    let settings = job_settings(j, global)?;
    let mut out = JobOutcome::new(j, settings.clone());
    match run(ws, j, &settings, &mut out) {
        Ok(()) => Ok(out),
        Err(Failure::Input(d)) => Err(d),
        Err(Failure::Core(e)) => {
            let code = e.code();
            out.result = json!({ "error": { "code": code, "message": e.to_string() } });
            match e {
                AlgebraError::Differential(_) | AlgebraError::NotACycle(_) | AlgebraError::DecompositionResidue(_) => {
                    out.violations.push(format!("[{code}] {e}"))
                }
                AlgebraError::Unsupported(_) | AlgebraError::Uncertified(_) => out.unsettled.push(format!("[{code}] {e}")),
                _ => return Err(core_diag(e, j.command.span)),
            }
            Ok(out)
        }
    }
}

enum Failure {
    Input(Diagnostic),
    Core(AlgebraError),
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Failure {
        Failure::Input(d)
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Failure {
        Failure::Core(e)
    }
}

fn run(ws: &Workspace, j: &JobDecl, s: &Settings, out: &mut JobOutcome) -> Result<(), Failure> {
    let caps = s.caps();
    let t = &j.targets;
    match j.command.text.as_str() {
        "classify" => {
            arity(j, 1, 1)?;
            let report = match ws.get(&t[0])? {
                Object::Ring(q) => classify_ring(&t[0].text, q, caps)?,
                _ => classify_homotopy(&t[0].text, &ws.algebra(&t[0])?, caps, s.window)?,
            };
            if let Err(e) = report.check_coherence() {
                out.violations.push(e.to_string());
            }
            for (name, flag) in &report.flags {
                if flag.value.is_none() {
                    out.unsettled.push(format!("{name}: {}", flag.qualifier.clone().unwrap_or_default()));
                }
            }
            let mut v = to_value(&report);
            if let Value::Object(m) = &mut v {
                m.remove("certificates");
                m.insert("qualifiers".into(), json!([format!("verified to degree {}", s.homological)]));
            }
            out.result = v;
            out.certificates = report.certificates.iter().map(|(k, c)| (k.clone(), to_value(c))).collect();
            out.classification = Some(report);
        }
        "deviations" => {
            arity(j, 1, 1)?;
            let table = match ws.get(&t[0])? {
                Object::Ring(q) => tate_closure(q, caps)?.1,
                _ => acyclic_closure_dg(&ws.algebra(&t[0])?, caps)?.1,
            };
            if !table.settled {
                out.unsettled.push(table.qualifier.clone().unwrap_or_else(|| "deviations not settled".into()));
            }
            out.result = to_value(&table);
        }
        "betti" => {
            arity(j, 1, 2)?;
            let q = ws.ring(&t[0])?;
            let m = match t.get(1) {
                None => ModulePresentation::residue_field(q),
                Some(n) => match ws.get(n)? {
                    Object::Module { ring, module } if *ring == t[0].text => module.clone(),
                    _ => return Err(Diagnostic::new("P-KIND", format!("{} is not a module over {}", n.text, t[0].text), n.span).into()),
                },
            };
            out.result = betti_value(&minimal_free_resolution(q, &m, caps)?.betti());
        }
        "depth" => {
            arity(j, 1, 1)?;
            let r = depth_dim_type(ws.ring(&t[0])?, caps)?;
            if let Some(q) = &r.qualifier {
                out.unsettled.push(q.clone());
            }
            out.result = to_value(&r);
        }
        "homology" => {
            arity(j, 1, 1)?;
            out.result = betti_value(&dg_homology(&ws.algebra(&t[0])?, caps)?);
        }
        "ext_window" => {
            arity(j, 1, 1)?;
            let a = ws.algebra(&t[0])?;
            let window = s.window.unwrap_or_else(|| default_window(&a, s.homological));
            let e = dg_ext(&a, window, caps)?;
            if !e.settled {
                out.unsettled.push(e.qualifier.clone().unwrap_or_else(|| "ext window not settled".into()));
            }
            out.result = to_value(&e);
        }
        "model" => {
            arity(j, 1, 1)?;
            let mm = minimal_model(&ws.algebra(&t[0])?, caps)?;
            let decomposable = mm.check_decomposable();
            out.check(decomposable.is_ok(), "model differential is not decomposable");
            let quasi_iso = mm.check_quasi_iso()?;
            out.check(quasi_iso, "comparison map is not a quasi-isomorphism through the cap");
            let hq: serde_json::Map<String, Value> = mm
                .hq_dims()
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(n, &d)| (n.to_string(), json!(d)))
                .collect();
            out.result = json!({
                "cap": mm.cap,
                "generators": mm.dump().len(),
                "hq_dims": hq,
                "decomposable": decomposable.is_ok(),
                "quasi_iso": quasi_iso,
            });
            out.certificates.push(("model".into(), to_value(&mm.dump())));
        }
        "profile" => {
            arity(j, 1, 1)?;
            let p = match ws.get(&t[0])? {
                Object::Ring(q) => match option_name(j, "over")? {
                    Some(n) => vanishing_profile(&RelativePresentation::quotient(ws.ring(&n)?, q.ideal.clone())?, caps)?,
                    None => vanishing_profile(&RelativePresentation::over_field(q)?, caps)?,
                },
                _ => vanishing_profile_dg(&ws.algebra(&t[0])?, caps)?,
            };
            out.unsettled.extend(p.unsettled.iter().map(|s| format!("degree {s}")));
            out.result = to_value(&p);
        }
        "cotangent" => {
            arity(j, 1, 1)?;
            let q = ws.ring(&t[0])?;
            let p = match option_name(j, "over")? {
                Some(n) => RelativePresentation::quotient(ws.ring(&n)?, q.ideal.clone())?,
                None => RelativePresentation::over_field(q)?,
            };
            out.result = to_value(&ls_cotangent(&p, s.homological.min(2))?);
        }
        "hurewicz" => {
            arity(j, 1, 1)?;
            let r = hurewicz_compare(&ws.algebra(&t[0])?, caps)?;
            out.check(r.agree, "Tor and indecomposables differ below the connectivity");
            out.result = to_value(&r);
        }
        "probe" => {
            arity(j, 1, 1)?;
            let a = ws.algebra(&t[0])?;
            let (_, x) = generator_at(j, &a)?;
            let mm = minimal_model(&a, caps)?;
            let idx = mm
                .comparison
                .gen_images
                .iter()
                .position(|img| *img == x)
                .ok_or_else(|| Diagnostic::new("P-OPTION", "the generator is not hit by a model generator", option_span(j, "at")))?;
            let data = o_decomposition(&mm, idx)?;
            let r = o1_probe(&data, mm.cap, s.iterations);
            if !r.settled {
                out.unsettled.push(r.qualifier.clone().unwrap_or_else(|| "probe not settled".into()));
            }
            out.result = json!({ "model_generator": mm.model.generators[idx].name, "summary": to_value(&data.summary(&mm.model)), "probe": to_value(&r) });
        }
        "ext_factor" => {
            arity(j, 1, 1)?;
            let a = ws.algebra(&t[0])?;
            let (_, x) = generator_at(j, &a)?;
            let window = s.window.unwrap_or((-2 * s.homological as i64, 0));
            let r = ext_factorization_check(&a, &x, window, caps)?;
            out.check(r.equal, "Ext does not factor");
            out.result = to_value(&r);
        }
        "truncation" => {
            arity(j, 1, 1)?;
            let a = ws.algebra(&t[0])?;
            let (i, x) = generator_at(j, &a)?;
            let k = option_int(j, "k")?.filter(|&k| k >= 1).ok_or_else(|| Diagnostic::new("P-OPTION", "truncation needs k >= 1", j.command.span))?;
            let n = a.generators[i].degree;
            let src = free_on_one(a.field, n);
            let under = AlgebraUnder::new(&src, a.clone(), Vec::new(), vec![x])?;
            let r = truncation_tor_check(&under, n, k as u32, caps)?;
            out.check(r.equal, "Tor differs from the truncated prediction");
            out.result = to_value(&r);
        }
        "transitivity" => {
            arity(j, 3, 3)?;
            let r = transitivity_check(ws.ring(&t[0])?, ws.ring(&t[1])?, ws.ring(&t[2])?)?;
            out.check(r.exact, "nine-term sequence is not exact");
            out.result = to_value(&r);
        }
        "base_change" => {
            arity(j, 1, 1)?;
            let q = ws.ring(&t[0])?;
            let p = match option_name(j, "over")? {
                Some(n) => RelativePresentation::quotient(ws.ring(&n)?, q.ideal.clone())?,
                None => RelativePresentation::over_field(q)?,
            };
            let ext = if let Some(es) = option_exprs(j, "poly")? {
                let mut names = Vec::new();
                for e in es {
                    match &e.expr {
                        Expr::Var(v) => names.push((v.clone(), 1)),
                        _ => return Err(Diagnostic::new("P-OPTION", "poly takes variable names", e.span).into()),
                    }
                }
                FlatExtension::Polynomial(names)
            } else if let Some(n) = option_int(j, "product")? {
                FlatExtension::Product(n.max(0) as usize)
            } else {
                FlatExtension::Identity
            };
            let r = flat_base_change_check(&p, &ext)?;
            out.check(r.equal, "cotangent modules change under flat base change");
            out.result = to_value(&r);
        }
        "lci" => {
            arity(j, 1, usize::MAX)?;
            let items = t.iter().map(|n| Ok((n.text.clone(), ws.ring(n)?.clone()))).collect::<Result<Vec<_>, Diagnostic>>()?;
            let r = lci_characterization_check(&items, caps)?;
            out.check(r.consistent, "complete intersection tests disagree");
            for it in r.items.iter().filter(|i| i.consistent.is_none()) {
                out.unsettled.push(it.id.clone());
            }
            out.result = to_value(&r);
        }
        "cofiber" => {
            arity(j, 1, 2)?;
            let r = ws.ring(&t[0])?;
            let xs = option_polys(j, "at", r)?.unwrap_or_default();
            let [x] = xs.as_slice() else {
                return Err(Diagnostic::new("P-OPTION", "cofiber needs at = <one element>", j.command.span).into());
            };
            let target = match t.get(1) {
                Some(n) => ws.algebra(n)?,
                None => DGAlgebra::new(r.clone())?,
            };
            let a = under_ring(r, &target, j.command.span)?;
            let rep = cofiber_sequence_check(r, x, &a, caps)?;
            out.check(rep.degree_one_match, "fiber homology does not match the cotangent module in degree one");
            out.check(rep.equal, "the two derived tensor products differ");
            out.result = to_value(&rep);
        }
        "degenerate" => {
            arity(j, 1, 1)?;
            let a = ws.algebra(&t[0])?;
            let r0 = match option_name(j, "over")? {
                Some(n) => ws.ring(&n)?.clone(),
                None => a.base.clone(),
            };
            match option_polys(j, "seq", &r0)? {
                Some(seq) => {
                    let r = regular_degenerate_check(&r0, &seq, &a, caps)?;
                    if r.sequence.regular && r.generates_kernel {
                        out.check(r.degenerate, "spectral sequence does not degenerate over a regular sequence");
                    }
                    out.result = to_value(&r);
                }
                None => out.result = to_value(&degeneracy_probe_over(&r0, &a, caps)?),
            }
        }
        "regular_seq" => {
            arity(j, 1, 1)?;
            let q = ws.ring(&t[0])?;
            let seq = option_polys(j, "seq", q)?.ok_or_else(|| Diagnostic::new("P-OPTION", "regular_seq needs seq = (..)", j.command.span))?;
            let r = is_regular_sequence(&seq, q)?;
            out.result = to_value(&r);
        }
        other => return Err(Diagnostic::new("P-COMMAND", format!("unknown command {other}"), j.command.span).into()),
    }
    Ok(())
}
