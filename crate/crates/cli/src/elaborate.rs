//! Name resolution, degree checks and construction of the core objects.

use std::collections::{BTreeMap, HashSet};

use aqcalc_core::dga::{AlgebraUnder, DGAlgebra, Element, GeneratorKind};
use aqcalc_core::error::AlgebraError;
use aqcalc_core::expr::Expr;
use aqcalc_core::graded::ModulePresentation;
use aqcalc_core::poly::{MonomialOrder, PolyRing, Polynomial, RingPresentation};
use aqcalc_core::scalar::Field;

use crate::syntax::{DeclKind, Diagnostic, DgaDecl, FieldSpec, JobDecl, MapDecl, Name, Over, RingDecl, SExpr, SourceDocument, Span};

#[derive(Clone, Debug)]
pub enum Object {
    Ring(RingPresentation),
    Dga(DGAlgebra),
    Module { ring: String, module: ModulePresentation },
    Map { source: DGAlgebra, map: AlgebraUnder },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Dga(_) => "dga",
            Object::Module { .. } => "module",
            Object::Map { .. } => "map",
        }
    }
}

/// Every command a job may name.
pub const COMMANDS: &[&str] = &[
    "classify",
    "deviations",
    "betti",
    "depth",
    "homology",
    "ext_window",
    "model",
    "profile",
    "cotangent",
    "hurewicz",
    "probe",
    "ext_factor",
    "truncation",
    "transitivity",
    "base_change",
    "lci",
    "cofiber",
    "degenerate",
    "regular_seq",
];

pub const OPTION_KEYS: &[&str] = &["cap", "internal", "window", "iterations", "at", "k", "over", "seq", "poly", "product"];

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub objects: BTreeMap<String, Object>,
}

impl Workspace {
    pub fn get(&self, name: &Name) -> Result<&Object, Diagnostic> {
        self.objects
            .get(&name.text)
            .ok_or_else(|| Diagnostic::new("P-NAME", format!("unknown name {}", name.text), name.span))
    }

    pub fn ring(&self, name: &Name) -> Result<&RingPresentation, Diagnostic> {
        match self.get(name)? {
            Object::Ring(r) => Ok(r),
            o => Err(Diagnostic::new("P-KIND", format!("{} is a {}, not a ring", name.text, o.kind()), name.span)),
        }
    }

    /// A DG algebra, with rings read as algebras concentrated in degree zero.
    pub fn algebra(&self, name: &Name) -> Result<DGAlgebra, Diagnostic> {
        match self.get(name)? {
            Object::Dga(a) => Ok(a.clone()),
            Object::Ring(r) => DGAlgebra::new(r.clone()).map_err(|e| core_diag(e, name.span)),
            o => Err(Diagnostic::new("P-KIND", format!("{} is a {}, not an algebra", name.text, o.kind()), name.span)),
        }
    }
}

pub fn core_diag(e: AlgebraError, span: Span) -> Diagnostic {
    Diagnostic::new(e.code(), e.to_string(), span)
}

fn field_of(fs: &FieldSpec, span: Span) -> Result<Field, Diagnostic> {
    match fs {
        FieldSpec::Rational => Ok(Field::Rational),
        FieldSpec::Prime(p) => Field::prime(*p).map_err(|_| Diagnostic::new("P-FIELD", format!("{p} is not a supported prime"), span)),
    }
}

/// Checks names, references and degrees, building every declared object.
pub fn elaborate(doc: &SourceDocument) -> Result<Workspace, Diagnostic> {
    let declared: HashSet<&str> = doc.decls.iter().filter_map(|d| d.binds()).map(|n| n.text.as_str()).collect();
    let mut ws = Workspace::default();
    for decl in &doc.decls {
        if let Some(n) = decl.binds() {
            if ws.objects.contains_key(&n.text) {
                return Err(Diagnostic::new("P-NAME", format!("duplicate name {}", n.text), n.span));
            }
        }
        let resolve = |n: &Name| -> Result<(), Diagnostic> {
            if ws.objects.contains_key(&n.text) {
                Ok(())
            } else if declared.contains(n.text.as_str()) {
                Err(Diagnostic::new("P-NAME", format!("forward reference to {}", n.text), n.span))
            } else {
                Err(Diagnostic::new("P-NAME", format!("unknown name {}", n.text), n.span))
            }
        };
        match &decl.kind {
            DeclKind::Ring(r) => {
                let obj = ring(r, decl.span)?;
                ws.objects.insert(r.name.text.clone(), Object::Ring(obj));
            }
            DeclKind::Dga(d) => {
                if let Over::Ring(n) = &d.over {
                    resolve(n)?;
                }
                let obj = dga(d, &ws)?;
                ws.objects.insert(d.name.text.clone(), Object::Dga(obj));
            }
            DeclKind::Module(m) => {
                resolve(&m.ring)?;
                let q = ws.ring(&m.ring)?;
                let gens = m.relations.iter().map(|e| poly(&q.ring, e)).collect::<Result<Vec<_>, _>>()?;
                ws.objects.insert(
                    m.name.text.clone(),
                    Object::Module {
                        ring: m.ring.text.clone(),
                        module: ModulePresentation::cyclic(q, &gens),
                    },
                );
            }
            DeclKind::Map(m) => {
                resolve(&m.source)?;
                resolve(&m.target)?;
                let (source, map) = map(m, &ws)?;
                ws.objects.insert(m.name.text.clone(), Object::Map { source, map });
            }
            DeclKind::Job(j) => job(j, &resolve)?,
        }
    }
    Ok(ws)
}

fn ring(r: &RingDecl, span: Span) -> Result<RingPresentation, Diagnostic> {
    let field = field_of(&r.field, span)?;
    let order = match r.order.as_ref().map(|o| o.text.as_str()) {
        None | Some("degrevlex") => MonomialOrder::Degrevlex,
        Some("deglex") => MonomialOrder::Deglex,
        Some("lex") => MonomialOrder::Lex,
        Some(other) => {
            return Err(Diagnostic::new(
                "P-NAME",
                format!("unknown monomial order {other}"),
                r.order.as_ref().map_or(span, |o| o.span),
            ))
        }
    };
    let names: Vec<String> = r.vars.iter().map(|(v, _)| v.text.clone()).collect();
    for (i, (v, w)) in r.vars.iter().enumerate() {
        if names[..i].contains(&v.text) {
            return Err(Diagnostic::new("P-NAME", format!("duplicate variable {}", v.text), v.span));
        }
        if *w == Some(0) {
            return Err(Diagnostic::new("P-DEGREE", format!("variable {} needs a positive weight", v.text), v.span));
        }
    }
    let weights = r.vars.iter().map(|(_, w)| w.unwrap_or(1)).collect();
    let ring = PolyRing::with(field, names, Some(weights), order).map_err(|e| core_diag(e, span))?;
    let mut ideal = Vec::new();
    for e in &r.ideal {
        let g = poly(&ring, e)?;
        // Only graded-local rings are supported.
        let single = RingPresentation::new(ring.clone(), vec![g.clone()]).map_err(|err| core_diag(err, e.span))?;
        single.require_graded_local().map_err(|err| core_diag(err, e.span))?;
        ideal.push(g);
    }
    RingPresentation::new(ring, ideal).map_err(|e| core_diag(e, span))
}

fn poly(ring: &std::sync::Arc<PolyRing>, e: &SExpr) -> Result<Polynomial, Diagnostic> {
    for v in e.expr.variables() {
        if ring.var_index(&v).is_none() {
            return Err(Diagnostic::new("P-NAME", format!("unknown variable {v}"), e.span));
        }
    }
    Polynomial::from_expr(ring, &e.expr).map_err(|err| core_diag(err, e.span))
}

/// Formal `(degree, weight)` of an expression, read off the syntax so that
/// products which vanish in the algebra still carry a degree. `None` for zero.
fn formal_degree(e: &Expr, lookup: &dyn Fn(&str) -> Option<(u32, u32)>) -> Result<Option<(u32, u32)>, String> {
    Ok(match e {
        Expr::Num(0, _) => None,
        Expr::Num(..) => Some((0, 0)),
        Expr::Var(v) => Some(lookup(v).ok_or_else(|| format!("unknown name {v}"))?),
        Expr::Neg(a) => formal_degree(a, lookup)?,
        Expr::Pow(a, n) => formal_degree(a, lookup)?.map(|(d, w)| (d * n, w * n)),
        Expr::Mul(a, b) => match (formal_degree(a, lookup)?, formal_degree(b, lookup)?) {
            (Some((d1, w1)), Some((d2, w2))) => Some((d1 + d2, w1 + w2)),
            _ => None,
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => match (formal_degree(a, lookup)?, formal_degree(b, lookup)?) {
            (Some(x), Some(y)) if x != y => return Err(format!("{} and {} have different degrees", crate::syntax::pretty(a), crate::syntax::pretty(b))),
            (x, y) => x.or(y),
        },
    })
}

fn dga(d: &DgaDecl, ws: &Workspace) -> Result<DGAlgebra, Diagnostic> {
    let mut a = match &d.over {
        Over::Field(fs) => DGAlgebra::over_field(field_of(fs, d.name.span)?),
        Over::Ring(n) => DGAlgebra::new(ws.ring(n)?.clone()).map_err(|e| core_diag(e, n.span))?,
    };
    let gen_names: Vec<&str> = d.gens.iter().map(|g| g.name.text.as_str()).collect();
    for (n, _) in &d.diff {
        if !gen_names.contains(&n.text.as_str()) {
            return Err(Diagnostic::new("P-NAME", format!("{} is not a generator of {}", n.text, d.name.text), n.span));
        }
        if d.diff.iter().filter(|(m, _)| m.text == n.text).count() > 1 {
            return Err(Diagnostic::new("P-NAME", format!("differential of {} given twice", n.text), n.span));
        }
    }
    for (i, g) in d.gens.iter().enumerate() {
        let name = &g.name.text;
        if gen_names[..i].contains(&name.as_str()) || a.base.ring.var_index(name).is_some() {
            return Err(Diagnostic::new("P-NAME", format!("duplicate name {name}"), g.name.span));
        }
        let kind = match g.kind.as_ref().map(|k| k.text.as_str()) {
            None if g.degree % 2 == 1 => GeneratorKind::Exterior,
            None => GeneratorKind::Polynomial,
            Some("exterior") => GeneratorKind::Exterior,
            Some("polynomial") => GeneratorKind::Polynomial,
            Some("divided") => GeneratorKind::DividedPower,
            Some(other) => {
                let span = g.kind.as_ref().map_or(g.name.span, |k| k.span);
                return Err(Diagnostic::new("P-NAME", format!("unknown generator kind {other}"), span));
            }
        };
        if g.degree == 0 {
            return Err(Diagnostic::new("P-DEGREE", format!("generator {name} needs a positive degree"), g.name.span));
        }
        let expr = d.diff.iter().find(|(n, _)| n.text == *name).map(|(_, e)| e);
        let (dx, weight) = match expr {
            None => (Element::zero(), g.weight.unwrap_or(0)),
            Some(e) => {
                for v in e.expr.variables() {
                    if gen_names[i..].contains(&v.as_str()) {
                        return Err(Diagnostic::new(
                            "P-NAME",
                            format!("forward reference to generator {v} in the differential of {name}"),
                            e.span,
                        ));
                    }
                }
                let lookup = |v: &str| -> Option<(u32, u32)> {
                    if let Some(j) = a.generator_index(v) {
                        let gj = &a.generators[j];
                        Some((gj.degree, gj.weight))
                    } else {
                        a.base.ring.var_index(v).map(|j| (0, a.base.ring.weights[j]))
                    }
                };
                let formal = formal_degree(&e.expr, &lookup).map_err(|m| Diagnostic::new("P-DEGREE", m, e.span))?;
                let weight = match formal {
                    Some((deg, w)) => {
                        if deg + 1 != g.degree {
                            return Err(Diagnostic::new(
                                "P-DEGREE",
                                format!(
                                    "differential must lower degree by 1 ({name}: {} → {}, {} has degree {deg})",
                                    g.degree,
                                    g.degree - 1,
                                    crate::syntax::pretty(&e.expr)
                                ),
                                e.span,
                            ));
                        }
                        if g.weight.is_some_and(|gw| gw != w) {
                            return Err(Diagnostic::new(
                                "P-DEGREE",
                                format!("{name} has weight {} but its differential has weight {w}", g.weight.unwrap_or(0)),
                                e.span,
                            ));
                        }
                        w
                    }
                    None => g.weight.unwrap_or(0),
                };
                (a.from_expr(&e.expr).map_err(|err| core_diag(err, e.span))?, weight)
            }
        };
        a.add_generator(name, g.degree, weight, kind, dx).map_err(|e| core_diag(e, g.name.span))?;
    }
    for r in &d.rels {
        let mut exps = vec![0u32; a.ngens()];
        monomial_exponents(&r.expr, &a, &mut exps, 1)
            .map_err(|m| Diagnostic::new("P-RELATION", format!("relation {}: {m}", crate::syntax::pretty(&r.expr)), r.span))?;
        a.add_relation(exps).map_err(|e| core_diag(e, r.span))?;
    }
    a.check_d_squared().map_err(|e| core_diag(e, d.name.span))?;
    Ok(a)
}

fn monomial_exponents(e: &Expr, a: &DGAlgebra, exps: &mut [u32], times: u32) -> Result<(), String> {
    match e {
        Expr::Var(v) => {
            let i = a.generator_index(v).ok_or_else(|| format!("{v} is not a generator"))?;
            exps[i] += times;
            Ok(())
        }
        Expr::Pow(b, n) => monomial_exponents(b, a, exps, times * n),
        Expr::Mul(x, y) => {
            monomial_exponents(x, a, exps, times)?;
            monomial_exponents(y, a, exps, times)
        }
        _ => Err("relations must be monomials in the generators".into()),
    }
}

fn map(m: &MapDecl, ws: &Workspace) -> Result<(DGAlgebra, AlgebraUnder), Diagnostic> {
    let source = ws.algebra(&m.source)?;
    let target = ws.algebra(&m.target)?;
    for (n, _) in &m.images {
        if source.generator_index(&n.text).is_none() && source.base.ring.var_index(&n.text).is_none() {
            return Err(Diagnostic::new("P-NAME", format!("{} is not a name in {}", n.text, m.source.text), n.span));
        }
    }
    let image = |name: &str| -> Option<Result<Element, Diagnostic>> {
        m.images
            .iter()
            .find(|(n, _)| n.text == name)
            .map(|(_, e)| target.from_expr(&e.expr).map_err(|err| core_diag(err, e.span)))
    };
    let mut base_images = Vec::new();
    for v in &source.base.ring.vars {
        let img = match image(v) {
            Some(r) => r?,
            None => match target.base.ring.var_index(v) {
                Some(j) => target.base_var(j),
                None => return Err(Diagnostic::new("P-NAME", format!("no image given for {v}"), m.name.span)),
            },
        };
        base_images.push(img);
    }
    let mut gen_images = Vec::new();
    for g in &source.generators {
        match image(&g.name) {
            Some(r) => gen_images.push(r?),
            None => return Err(Diagnostic::new("P-NAME", format!("no image given for {}", g.name), m.name.span)),
        }
    }
    let map = AlgebraUnder::new(&source, target, base_images, gen_images).map_err(|e| core_diag(e, m.name.span))?;
    Ok((source, map))
}

fn job(j: &JobDecl, resolve: &dyn Fn(&Name) -> Result<(), Diagnostic>) -> Result<(), Diagnostic> {
    if !COMMANDS.contains(&j.command.text.as_str()) {
        return Err(Diagnostic::new("P-COMMAND", format!("unknown command {}", j.command.text), j.command.span));
    }
    for t in &j.targets {
        resolve(t)?;
    }
    for (k, _) in &j.options {
        if !OPTION_KEYS.contains(&k.text.as_str()) {
            return Err(Diagnostic::new("P-OPTION", format!("unknown option {}", k.text), k.span));
        }
        if j.options.iter().filter(|(o, _)| o.text == k.text).count() > 1 {
            return Err(Diagnostic::new("P-OPTION", format!("option {} given twice", k.text), k.span));
        }
    }
    if let Some((_, crate::syntax::OptionValue::Expr(e))) = j.options.iter().find(|(k, _)| k.text == "over") {
        if let Expr::Var(v) = &e.expr {
            resolve(&Name { text: v.clone(), span: e.span })?;
        }
    }
    Ok(())
}

/// Parses and checks a document.
pub fn parse_source(src: &str) -> Result<SourceDocument, Diagnostic> {
    let doc = crate::syntax::parse_syntax(src)?;
    elaborate(&doc).map_err(|d| d.locate(src))?;
    Ok(doc)
}
