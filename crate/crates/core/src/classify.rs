//! Discrete and homotopy classification, plus the corpus-level checks built on it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::aq::{ls_cotangent, vanishing_profile, CotangentTable, RelativePresentation};
use crate::dga::{
    acyclic_closure_dg, degeneracy_probe_over, dg_ext, dg_homology, dg_tor, homology_top, low_deviations, tate_closure,
    AlgebraUnder, DGAlgebra, DegeneracyReport, DeviationTable, Element, ExtWindow, GeneratorKind,
};
use crate::error::{AlgebraError, Result};
use crate::graded::QuotientRing;
use crate::groebner::{buchberger_in, is_regular_sequence, RegularSequenceCertificate};
use crate::linalg::{rank, SVec};
use crate::model::{minimal_model, GeneratorDump};
use crate::poly::{Polynomial, RingPresentation};
use crate::resolution::{depth_dim_type, Caps, DepthReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Jacobian { minimal_generators: Vec<String>, linear_rank: usize },
    RegularSequence { sequence: Vec<String>, result: RegularSequenceCertificate },
    Cotangent(CotangentTable),
    Deviations(DeviationTable),
    Depth(DepthReport),
    Socle { by_degree: BTreeMap<u32, usize>, total: usize, ext_type: Option<usize> },
    Homology { totals: Vec<usize>, bounded: bool },
    ExtWindow(ExtWindow),
    Model { generators: Vec<GeneratorDump> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    /// `None` when the caps do not decide the property.
    pub value: Option<bool>,
    pub qualifier: Option<String>,
    /// Keys into the report's certificate map.
    pub certificates: Vec<String>,
}

impl Flag {
    fn decided(value: bool, certificates: &[&str]) -> Flag {
        Flag {
            value: Some(value),
            qualifier: None,
            certificates: certificates.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn unsettled(reason: String) -> Flag {
        Flag {
            value: None,
            qualifier: Some(reason),
            certificates: Vec::new(),
        }
    }

    fn qualified(mut self, q: Option<String>) -> Flag {
        if self.qualifier.is_none() {
            self.qualifier = q;
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Discrete,
    Homotopy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub id: String,
    pub kind: ReportKind,
    pub flags: BTreeMap<String, Flag>,
    pub certificates: BTreeMap<String, Certificate>,
}

impl ClassificationReport {
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.get(name).and_then(|f| f.value)
    }

    /// Every true flag names a certificate that is present.
    pub fn check_coherence(&self) -> Result<()> {
        for (name, f) in &self.flags {
            if f.value == Some(true) && (f.certificates.is_empty() || f.certificates.iter().any(|c| !self.certificates.contains_key(c))) {
                return Err(AlgebraError::Uncertified(format!("{}: flag {name} lacks a certificate", self.id)));
            }
            if f.value.is_none() && f.qualifier.is_none() {
                return Err(AlgebraError::Uncertified(format!("{}: flag {name} is unsettled without a marker", self.id)));
            }
        }
        Ok(())
    }
}

/// A minimal homogeneous generating set, chosen greedily by degree.
pub fn minimal_generators(q: &RingPresentation) -> Result<Vec<Polynomial>> {
    q.require_homogeneous()?;
    let mut gens: Vec<Polynomial> = q.ideal.clone();
    gens.sort_by_key(|g| g.degree().unwrap_or(0));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !buchberger_in(&q.ring, &kept)?.contains(&g) {
            kept.push(g);
        }
    }
    Ok(kept)
}

/// Rank of the linear parts of the generators at the origin.
fn jacobian_rank(ring: &RingPresentation, gens: &[Polynomial]) -> usize {
    let field = ring.ring.field;
    let rows: Vec<SVec> = gens
        .iter()
        .map(|g| SVec::from_pairs((0..ring.ring.nvars()).map(|v| (v, g.derivative(v).constant_coefficient())).filter(|(_, c)| !c.is_zero())))
        .collect();
    rank(field, &rows)
}

/// Flags `regular`, `ci`, `gorenstein`, `cm` for a graded quotient of a polynomial ring.
pub fn classify_ring(id: &str, q: &RingPresentation, caps: Caps) -> Result<ClassificationReport> {
    q.require_graded_local()?;
    let mut flags = BTreeMap::new();
    let mut certs = BTreeMap::new();
    let gens = minimal_generators(q)?;
    let names: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let linear_rank = jacobian_rank(q, &gens);
    certs.insert(
        "jacobian".to_string(),
        Certificate::Jacobian {
            minimal_generators: names.clone(),
            linear_rank,
        },
    );
    flags.insert("regular".to_string(), Flag::decided(linear_rank == gens.len(), &["jacobian"]));

    // the three complete-intersection witnesses must agree
    let polynomial = RingPresentation::new(q.ring.clone(), Vec::new())?;
    let reg = is_regular_sequence(&gens, &polynomial)?;
    let ls = ls_cotangent(&RelativePresentation::quotient(&polynomial, gens.clone())?, 2)?;
    let eps = low_deviations(q, caps)?;
    let d2_zero = ls.total(2) == 0;
    if d2_zero != reg.regular {
        return Err(AlgebraError::Differential(format!(
            "{id}: D_2 = {} but the regular-sequence test says {}",
            ls.total(2),
            reg.regular
        )));
    }
    if eps.settled && (eps.eps(3) == 0) != reg.regular {
        return Err(AlgebraError::Differential(format!(
            "{id}: ε_3 = {} but the regular-sequence test says {}",
            eps.eps(3),
            reg.regular
        )));
    }
    certs.insert(
        "regular_sequence".to_string(),
        Certificate::RegularSequence {
            sequence: names,
            result: reg.clone(),
        },
    );
    certs.insert("cotangent".to_string(), Certificate::Cotangent(ls));
    let eps_q = eps.qualifier.clone();
    certs.insert("deviations".to_string(), Certificate::Deviations(eps));
    flags.insert(
        "ci".to_string(),
        Flag::decided(reg.regular, &["regular_sequence", "cotangent", "deviations"]).qualified(eps_q),
    );

    match depth_dim_type(q, caps) {
        Ok(depth) => {
            let q_depth = depth.qualifier.clone();
            let mut gor_certs = vec!["depth"];
            if depth.dim == 0 {
                let ring = QuotientRing::new(q, caps.internal.max(1) as u32)?;
                if let Some(top) = ring.top_degree() {
                    let by_degree: BTreeMap<u32, usize> =
                        (0..=top).map(|d| (d, ring.socle_dim(d))).filter(|&(_, n)| n > 0).collect();
                    let total = by_degree.values().sum();
                    if depth.cm_type != Some(total) {
                        return Err(AlgebraError::Differential(format!(
                            "{id}: socle dimension {total} differs from the Ext type {:?}",
                            depth.cm_type
                        )));
                    }
                    certs.insert(
                        "socle".to_string(),
                        Certificate::Socle {
                            by_degree,
                            total,
                            ext_type: depth.cm_type,
                        },
                    );
                    gor_certs.push("socle");
                }
            }
            flags.insert("cm".to_string(), Flag::decided(depth.cohen_macaulay, &["depth"]).qualified(q_depth.clone()));
            flags.insert("gorenstein".to_string(), Flag::decided(depth.gorenstein, &gor_certs).qualified(q_depth));
            certs.insert("depth".to_string(), Certificate::Depth(depth));
        }
        Err(AlgebraError::Uncertified(why)) => {
            flags.insert("cm".to_string(), Flag::unsettled(why.clone()));
            flags.insert("gorenstein".to_string(), Flag::unsettled(why));
        }
        Err(e) => return Err(e),
    }
    let report = ClassificationReport {
        id: id.to_string(),
        kind: ReportKind::Discrete,
        flags,
        certificates: certs,
    };
    report.check_coherence()?;
    Ok(report)
}

/// Default Ext window: `[-2 cap, 0]`, widened to `[-2 cap, 2 cap]` when `H(A)` is not bounded.
pub fn default_window(a: &DGAlgebra, cap: usize) -> (i64, i64) {
    let c = 2 * cap as i64;
    let bounded = a.finite_top().is_some() || homology_top(a, cap as u32).1;
    if bounded {
        (-c, 0)
    } else {
        (-c, c)
    }
}

/// Flags `h_ci`, `h_gorenstein`, `h_cm` for a connected DG algebra over a field.
pub fn classify_homotopy(id: &str, a: &DGAlgebra, caps: Caps, window: Option<(i64, i64)>) -> Result<ClassificationReport> {
    if a.nbase() != 0 {
        return Err(AlgebraError::InvalidInput("homotopy classification needs an algebra over a field".into()));
    }
    a.check_d_squared()?;
    let cap = caps.homological;
    let h = dg_homology(a, caps)?;
    if h.total(0) != 1 {
        return Err(AlgebraError::InvalidInput(format!("{id}: H_0 is not the ground field")));
    }
    let bounded = a.finite_top().is_some() || homology_top(a, cap as u32).1;
    let mut flags = BTreeMap::new();
    let mut certs = BTreeMap::new();
    certs.insert(
        "homology".to_string(),
        Certificate::Homology {
            totals: h.totals(0..=cap as i64),
            bounded,
        },
    );
    let verified = format!("verified to degree {cap}");

    let h_ci = if a.field.characteristic() == 0 {
        let mm = minimal_model(a, caps)?;
        let only_degree_one = mm.model.generators.iter().all(|g| g.degree == 1);
        certs.insert("model".to_string(), Certificate::Model { generators: mm.dump() });
        let f = Flag::decided(only_degree_one, &["model"]);
        if only_degree_one {
            f.qualified(Some(verified.clone()))
        } else {
            f
        }
    } else {
        // finiteness of the acyclic closure stands in for finite H^Q
        let (_, eps) = acyclic_closure_dg(a, caps)?;
        let higher = eps.eps.iter().enumerate().any(|(i, &n)| i + 1 >= 3 && n > 0);
        let q = eps.qualifier.clone();
        certs.insert("closure".to_string(), Certificate::Deviations(eps));
        if higher {
            Flag::decided(false, &["closure"])
        } else if bounded {
            Flag::decided(true, &["closure", "homology"]).qualified(q.or(Some(verified.clone())))
        } else {
            Flag::unsettled(format!("homology not bounded through degree {cap}"))
        }
    };
    flags.insert("h_ci".to_string(), h_ci);

    let window = window.unwrap_or_else(|| default_window(a, cap));
    match dg_ext(a, window, caps) {
        Ok(ext) => {
            let nonzero = ext.nonzero();
            let q = ext.qualifier.clone().or_else(|| Some(format!("window [{}, {}]", window.0, window.1)));
            if nonzero.is_empty() {
                let why = format!("Ext vanishes in the window [{}, {}]", window.0, window.1);
                flags.insert("h_cm".to_string(), Flag::unsettled(why.clone()));
                flags.insert("h_gorenstein".to_string(), Flag::unsettled(why));
            } else {
                let cm = nonzero.len() == 1;
                let gor = cm && nonzero[0].1 == 1;
                let qual = |v: bool| if v { q.clone() } else { None };
                flags.insert("h_cm".to_string(), Flag::decided(cm, &["ext"]).qualified(qual(cm)));
                flags.insert("h_gorenstein".to_string(), Flag::decided(gor, &["ext"]).qualified(qual(gor)));
            }
            certs.insert("ext".to_string(), Certificate::ExtWindow(ext));
        }
        Err(AlgebraError::Unsupported(why)) => {
            flags.insert("h_cm".to_string(), Flag::unsettled(why.clone()));
            flags.insert("h_gorenstein".to_string(), Flag::unsettled(why));
        }
        Err(e) => return Err(e),
    }
    let report = ClassificationReport {
        id: id.to_string(),
        kind: ReportKind::Homotopy,
        flags,
        certificates: certs,
    };
    report.check_coherence()?;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub id: String,
    pub premise: String,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// `(id, flag)` pairs left undecided by the caps.
    pub unsettled: Vec<(String, String)>,
}

const CHAINS: [(&str, &str); 5] = [
    ("regular", "ci"),
    ("ci", "gorenstein"),
    ("gorenstein", "cm"),
    ("h_ci", "h_gorenstein"),
    ("h_gorenstein", "h_cm"),
];

/// `regular ⟹ ci ⟹ gorenstein ⟹ cm` and `h_ci ⟹ h_gorenstein ⟹ h_cm`, item by item.
pub fn implication_chain_check(reports: &[ClassificationReport]) -> ChainReport {
    let mut violations = Vec::new();
    let mut unsettled = Vec::new();
    for r in reports {
        for (name, f) in &r.flags {
            if f.value.is_none() {
                unsettled.push((r.id.clone(), name.clone()));
            }
        }
        for (p, c) in CHAINS {
            if r.flag(p) == Some(true) && r.flag(c) == Some(false) {
                violations.push(Violation {
                    id: r.id.clone(),
                    premise: p.to_string(),
                    conclusion: c.to_string(),
                });
            }
        }
    }
    ChainReport {
        checked: reports.len(),
        violations,
        unsettled,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LciItem {
    pub id: String,
    pub d2_zero: bool,
    /// Every deviation proxy above degree two vanishes within the cap.
    pub proxy_vanishing: bool,
    pub eps3_zero: bool,
    pub regular_sequence: bool,
    /// `None` for items the caps leave undecided.
    pub consistent: Option<bool>,
    pub qualifier: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LciReport {
    pub items: Vec<LciItem>,
    pub decided: usize,
    pub consistent: bool,
}

/// `D_2 = 0` with vanishing proxies ⟺ `ε_3 = 0` ⟺ the kernel is generated by a regular sequence.
pub fn lci_characterization_check(items: &[(String, RingPresentation)], caps: Caps) -> Result<LciReport> {
    let mut out = Vec::new();
    for (id, s) in items {
        s.require_graded_local()?;
        let gens = minimal_generators(s)?;
        let r = RingPresentation::new(s.ring.clone(), Vec::new())?;
        let profile = vanishing_profile(&RelativePresentation::quotient(&r, gens.clone())?, caps)?;
        let d2_zero = profile.total(2) == Some(0);
        let proxy_vanishing = profile.entries.iter().filter(|e| e.s >= 3).all(|e| e.total == 0);
        let eps = low_deviations(s, caps)?;
        let eps3_zero = eps.eps(3) == 0;
        let regular_sequence = is_regular_sequence(&gens, &r)?.regular;
        let settled = profile.unsettled.is_empty() && eps.settled;
        let agree = (d2_zero && proxy_vanishing) == regular_sequence && eps3_zero == regular_sequence;
        out.push(LciItem {
            id: id.clone(),
            d2_zero,
            proxy_vanishing,
            eps3_zero,
            regular_sequence,
            consistent: settled.then_some(agree),
            qualifier: profile.qualifier.clone().or(eps.qualifier.clone()),
        });
    }
    let decided = out.iter().filter(|i| i.consistent.is_some()).count();
    let consistent = out.iter().all(|i| i.consistent != Some(false));
    Ok(LciReport {
        items: out,
        decided,
        consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofiberReport {
    /// `H(R/(x) ⊗^L_R ℓ)`, expected `ℓ ⊕ ℓ·u` with `|u| = 1`.
    pub fiber_homology: Vec<usize>,
    /// `D_s(R/(x)|R; ℓ)` for `s <= 2`.
    pub cotangent: [usize; 3],
    pub degree_one_match: bool,
    /// `H((Ã ⊗^L_R ℓ) ⊗^L_E ℓ)` by total degree.
    pub left: Vec<usize>,
    /// `H(Ã ⊗^L_{R/(x)} ℓ)` by total degree.
    pub right: Vec<usize>,
    pub equal: bool,
}

/// Appends `e` with `de = x`, returning the new algebra and the index of `e`.
fn kill(a: &DGAlgebra, x: &Element, w: u32, name: &str) -> Result<(DGAlgebra, usize)> {
    let mut b = a.clone();
    let i = b.add_generator(name, 1, w, GeneratorKind::Exterior, x.clone())?;
    Ok((b, i))
}

/// `t` generators of `T` appended to `b`, with `R` acting through `base_images`.
fn adjoin_closure(t: &DGAlgebra, b: &DGAlgebra, base_images: &[Element]) -> Result<(DGAlgebra, Vec<Element>)> {
    let mut out = b.clone();
    let mut images: Vec<Element> = vec![Element::zero(); t.ngens()];
    for i in 0..t.ngens() {
        let map = AlgebraUnder {
            target: out.clone(),
            base_images: base_images.to_vec(),
            gen_images: images.clone(),
        };
        let d = map.apply(t, &t.differential[i])?;
        let g = &t.generators[i];
        let j = out.add_generator(&format!("τ{}", g.name), g.degree, g.weight, g.kind, d)?;
        images[i] = out.gen(j);
    }
    Ok((out, images))
}

/// Homology-level check that `R/(x) ⊗^L_R ℓ → A ⊗^L_R ℓ → A ⊗^L_{R/(x)} ℓ` is a cofiber sequence.
/// `A` is made into an `R/(x)`-algebra by `Ã = A ⊗_R Kos_R(x)`.
pub fn cofiber_sequence_check(r: &RingPresentation, x: &Polynomial, a: &AlgebraUnder, caps: Caps) -> Result<CofiberReport> {
    r.require_graded_local()?;
    if !x.is_homogeneous() || x.is_zero() {
        return Err(AlgebraError::InvalidInput(format!("{x} is not a nonzero homogeneous element")));
    }
    if !is_regular_sequence(std::slice::from_ref(x), r)?.regular {
        return Err(AlgebraError::Uncertified(format!("{x} is a zero divisor")));
    }
    let rd = DGAlgebra::new(r.clone())?;
    if a.base_images.len() != rd.nbase() || !a.gen_images.is_empty() {
        return Err(AlgebraError::InvalidInput("the algebra must be given under the base ring".into()));
    }
    let w = x.degree().unwrap_or(0);
    let xr = rd.base_element(x)?;
    let (k, ke) = kill(&rd, &xr, w, "κ")?;
    let (tilde, te) = kill(&a.target, &a.apply(&rd, &xr)?, w, "κ")?;

    let (t, _) = tate_closure(r, Caps { homological: caps.homological + 1, ..caps })?;
    // E' = Kos_R(x) ⊗_R T models R/(x) ⊗^L_R ℓ
    let (e, _) = adjoin_closure(&t, &k, &(0..rd.nbase()).map(|v| k.base_var(v)).collect::<Vec<_>>())?;
    let (b, t_images) = adjoin_closure(&t, &tilde, &a.base_images)?;
    let mut e_images = vec![Element::zero(); e.ngens()];
    e_images[ke] = b.gen(te);
    for (i, img) in t_images.into_iter().enumerate() {
        e_images[k.ngens() + i] = img;
    }
    let b_under = AlgebraUnder::new(&e, b, a.base_images.clone(), e_images)?;
    let left = dg_tor(&e, &b_under, &AlgebraUnder::residue_field(&e), caps)?;

    let tilde_under = AlgebraUnder::new(&k, tilde.clone(), a.base_images.clone(), vec![tilde.gen(te)])?;
    let right = dg_tor(&k, &tilde_under, &AlgebraUnder::residue_field(&k), caps)?;

    let fiber = dg_homology(&e, caps)?;
    let ls = ls_cotangent(&RelativePresentation::quotient(r, vec![x.clone()])?, 2)?;
    let cap = caps.homological as i64;
    let fiber_homology = fiber.totals(0..=cap);
    let cotangent = [ls.total(0), ls.total(1), ls.total(2)];
    Ok(CofiberReport {
        degree_one_match: fiber_homology.get(1) == Some(&1) && cotangent == [0, 1, 0],
        fiber_homology,
        cotangent,
        left: left.totals(0..=cap),
        right: right.totals(0..=cap),
        equal: left.entries == right.entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularDegenerateReport {
    pub sequence: RegularSequenceCertificate,
    /// `(seq)` together with the ideal of `R0` cuts out the base ring of `A`.
    pub generates_kernel: bool,
    pub probe: DegeneracyReport,
    pub degenerate: bool,
    /// `Tor` is still nonzero at the cap.
    pub unbounded_signal: bool,
}

/// Runs the Künneth degeneracy probe for `A` over `R0/(seq)`.
pub fn regular_degenerate_check(r0: &RingPresentation, seq: &[Polynomial], a: &DGAlgebra, caps: Caps) -> Result<RegularDegenerateReport> {
    let sequence = is_regular_sequence(seq, r0)?;
    if !sequence.regular {
        return Err(AlgebraError::Uncertified("the sequence is not regular".into()));
    }
    let mut ideal = r0.ideal.clone();
    ideal.extend(seq.iter().cloned());
    let quotient = RingPresentation::new(r0.ring.clone(), ideal)?;
    let probe = degeneracy_probe_over(&quotient, a, caps)?;
    let gb = buchberger_in(&quotient.ring, &quotient.ideal)?;
    let generates_kernel = a.base.ideal.iter().all(|f| gb.contains(f));
    let unbounded_signal = probe.tor_totals.last().is_some_and(|&t| t > 0);
    Ok(RegularDegenerateReport {
        sequence,
        generates_kernel,
        degenerate: probe.degenerate_at_2,
        unbounded_signal,
        probe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn pres(vars: &[&str], gens: &[&str]) -> RingPresentation {
        RingPresentation::parse(Field::Rational, vars, gens).unwrap()
    }

    fn caps(h: i64) -> Caps {
        Caps::new(h, 24).unwrap()
    }

    fn flags(r: &ClassificationReport) -> Vec<(String, Option<bool>)> {
        r.flags.iter().map(|(k, f)| (k.clone(), f.value)).collect()
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let q = pres(&["x", "y"], &["x^2", "x^2*y", "x*y", "x^2 + x*y"]);
        let g = minimal_generators(&q).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn discrete_examples() {
        let r = classify_ring("ci", &pres(&["x", "y"], &["x^2", "y^2"]), caps(4)).unwrap();
        assert_eq!(
            flags(&r),
            vec![
                ("ci".into(), Some(true)),
                ("cm".into(), Some(true)),
                ("gorenstein".into(), Some(true)),
                ("regular".into(), Some(false))
            ]
        );
        let r = classify_ring("m2", &pres(&["x", "y"], &["x^2", "x*y", "y^2"]), caps(4)).unwrap();
        assert_eq!((r.flag("ci"), r.flag("gorenstein"), r.flag("cm")), (Some(false), Some(false), Some(true)));
        match &r.certificates["socle"] {
            Certificate::Socle { total, .. } => assert_eq!(*total, 2),
            other => panic!("{other:?}"),
        }
        let r = classify_ring("poly", &pres(&["x", "y"], &[]), caps(4)).unwrap();
        assert!(r.flags.values().all(|f| f.value == Some(true)));
        let r = classify_ring("lin", &pres(&["x", "y"], &["x + y"]), caps(4)).unwrap();
        assert_eq!(r.flag("regular"), Some(true));
        let r = classify_ring("noncm", &pres(&["x", "y"], &["x^2", "x*y"]), caps(4)).unwrap();
        assert_eq!((r.flag("ci"), r.flag("gorenstein"), r.flag("cm")), (Some(false), Some(false), Some(false)));
    }

    fn exterior(names: &[&str], field: Field) -> DGAlgebra {
        let mut a = DGAlgebra::over_field(field);
        for n in names {
            a.add_generator(n, 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        }
        a
    }

    #[test]
    fn homotopy_examples() {
        let r = classify_homotopy("lxy", &exterior(&["x", "y"], Field::Rational), caps(6), None).unwrap();
        assert_eq!((r.flag("h_ci"), r.flag("h_gorenstein"), r.flag("h_cm")), (Some(true), Some(true), Some(true)));

        let r = classify_homotopy("lxy2", &exterior(&["x", "y"], Field::prime(2).unwrap()), caps(6), None).unwrap();
        assert_eq!(r.flag("h_ci"), Some(true));

        let mut p = DGAlgebra::over_field(Field::Rational);
        p.add_generator("y", 2, 0, GeneratorKind::Polynomial, Element::zero()).unwrap();
        let r = classify_homotopy("y2", &p, caps(6), None).unwrap();
        assert_eq!((r.flag("h_ci"), r.flag("h_gorenstein")), (Some(false), Some(true)));

        let mut f = exterior(&["x", "y"], Field::Rational);
        f.add_relation(vec![1, 1]).unwrap();
        let r = classify_homotopy("sq0", &f, caps(6), None).unwrap();
        assert_eq!(r.flag("h_gorenstein"), Some(false));
        assert_eq!(r.flag("h_ci"), Some(false));
    }

    #[test]
    fn chain_flags_counterexamples() {
        let mut r = classify_ring("ci", &pres(&["x", "y"], &["x^2", "y^2"]), caps(4)).unwrap();
        assert!(implication_chain_check(std::slice::from_ref(&r)).violations.is_empty());
        r.flags.get_mut("cm").unwrap().value = Some(false);
        let c = implication_chain_check(&[r]);
        assert_eq!(c.violations.len(), 1);
        assert_eq!(c.violations[0].premise, "gorenstein");
    }

    #[test]
    fn lci_examples() {
        let items: Vec<(String, RingPresentation)> = [vec!["x^2", "y^2"], vec!["x^2", "x*y"], vec![]]
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("s{i}"), pres(&["x", "y"], &g)))
            .collect();
        let r = lci_characterization_check(&items, Caps::new(6, 24).unwrap()).unwrap();
        assert!(r.consistent);
        assert_eq!(r.decided, 3);
        assert!(r.items[0].regular_sequence && r.items[0].d2_zero);
        assert!(!r.items[1].regular_sequence && !r.items[1].d2_zero && !r.items[1].eps3_zero);
    }

    #[test]
    fn cofiber_on_the_base_ring() {
        let r = pres(&["x"], &[]);
        let x = Polynomial::parse(&r.ring, "x").unwrap();
        let rd = DGAlgebra::new(r.clone()).unwrap();
        let rep = cofiber_sequence_check(&r, &x, &AlgebraUnder::identity(&rd), caps(4)).unwrap();
        assert_eq!(rep.fiber_homology, vec![1, 1, 0, 0, 0]);
        assert!(rep.degree_one_match);
        assert!(rep.equal, "{rep:?}");
        assert_eq!(rep.left, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn cofiber_on_the_quotient_and_contractible() {
        let r = pres(&["x"], &[]);
        let x = Polynomial::parse(&r.ring, "x").unwrap();
        let rd = DGAlgebra::new(r.clone()).unwrap();
        let q = DGAlgebra::new(pres(&["x"], &["x"])).unwrap();
        let a = AlgebraUnder::new(&rd, q.clone(), vec![q.base_var(0)], Vec::new()).unwrap();
        let rep = cofiber_sequence_check(&r, &x, &a, caps(4)).unwrap();
        assert!(rep.equal, "{rep:?}");
        assert_eq!(rep.right, vec![1, 1, 0, 0, 0]);

        let (c, _) = kill(&rd, &rd.base_var(0), 1, "e").unwrap();
        let a = AlgebraUnder::new(&rd, c.clone(), vec![c.base_var(0)], Vec::new()).unwrap();
        let rep = cofiber_sequence_check(&r, &x, &a, caps(4)).unwrap();
        assert!(rep.equal, "{rep:?}");
    }

    #[test]
    fn zero_divisor_is_refused() {
        let r = pres(&["x", "y"], &["x*y"]);
        let x = Polynomial::parse(&r.ring, "x").unwrap();
        let rd = DGAlgebra::new(r.clone()).unwrap();
        let e = cofiber_sequence_check(&r, &x, &AlgebraUnder::identity(&rd), caps(3)).unwrap_err();
        assert_eq!(e.code(), "E-UNCERTIFIED");
    }

    #[test]
    fn degeneracy_examples() {
        let r0 = pres(&["x"], &[]);
        let x2 = vec![Polynomial::parse(&r0.ring, "x^2").unwrap()];
        let flat = DGAlgebra::new(pres(&["x"], &["x^2"])).unwrap();
        let rep = regular_degenerate_check(&r0, &x2, &flat, caps(5)).unwrap();
        assert!(rep.degenerate && !rep.unbounded_signal && rep.generates_kernel);

        let point = DGAlgebra::new(pres(&["x"], &["x"])).unwrap();
        let rep = regular_degenerate_check(&r0, &x2, &point, caps(5)).unwrap();
        assert_eq!(rep.probe.tor_totals, vec![1, 1, 1, 1, 1, 1]);
        assert!(rep.degenerate && rep.unbounded_signal && !rep.generates_kernel);

        let x1 = vec![Polynomial::parse(&r0.ring, "x").unwrap()];
        let rep = regular_degenerate_check(&r0, &x1, &point, caps(5)).unwrap();
        assert_eq!(rep.probe.tor_totals, vec![1, 0, 0, 0, 0, 0]);
        assert!(rep.degenerate && !rep.unbounded_signal && rep.generates_kernel);
    }
}
