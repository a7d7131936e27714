//! Low-degree André-Quillen homology through the Lichtenbaum–Schlessinger complex.

mod profile;
mod sequences;

pub use profile::*;
pub use sequences::*;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::graded::{GradedFree, ModulePresentation, QuotientRing};
use crate::groebner::{syzygy_basis, FreeModuleVector};
use crate::linalg::{kernel_and_image, rank, Echelon, SVec};
use crate::poly::{Polynomial, RingPresentation};

/// `S = P/J` with `P = R[X]`: `ambient` presents `P` (its ideal is the
/// ideal of `R`, in the base variables only), `relations` generate `J`.
#[derive(Clone, Debug)]
pub struct RelativePresentation {
    pub ambient: RingPresentation,
    pub relations: Vec<Polynomial>,
    pub relative: Vec<usize>,
}

impl RelativePresentation {
    pub fn new(ambient: RingPresentation, relations: Vec<Polynomial>, relative: Vec<usize>) -> Result<RelativePresentation> {
        let ring = &ambient.ring;
        if relative.iter().any(|&v| v >= ring.nvars()) {
            return Err(AlgebraError::InvalidInput("relative variable out of range".into()));
        }
        for f in &ambient.ideal {
            if f.terms().iter().any(|(_, m)| relative.iter().any(|&v| m.exps()[v] > 0)) {
                return Err(AlgebraError::InvalidInput(format!("base relation {f} involves a relative variable")));
            }
        }
        for f in &relations {
            if **f.ring() != **ring {
                return Err(AlgebraError::RingMismatch);
            }
            if !f.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous(f.to_string()));
            }
            if !f.constant_coefficient().is_zero() {
                return Err(AlgebraError::InvalidInput(format!("{f} is not in the maximal graded ideal")));
            }
        }
        Ok(RelativePresentation {
            ambient,
            relations,
            relative,
        })
    }

    /// `S` over its ground field.
    pub fn over_field(s: &RingPresentation) -> Result<RelativePresentation> {
        let ambient = RingPresentation::new(s.ring.clone(), Vec::new())?;
        RelativePresentation::new(ambient, s.ideal.clone(), (0..s.ring.nvars()).collect())
    }

    /// `R/(extra)` over `R`.
    pub fn quotient(r: &RingPresentation, extra: Vec<Polynomial>) -> Result<RelativePresentation> {
        RelativePresentation::new(r.clone(), extra, Vec::new())
    }

    pub fn target(&self) -> Result<RingPresentation> {
        let mut ideal = self.ambient.ideal.clone();
        ideal.extend(self.relations.iter().cloned());
        RingPresentation::new(self.ambient.ring.clone(), ideal)
    }

    /// `R` is a polynomial ring over the ground field.
    pub fn base_is_polynomial(&self) -> bool {
        self.ambient.ideal.iter().all(Polynomial::is_zero)
    }
}

/// `Ω_{S|R}` as the cokernel of the transposed Jacobian over `S`.
pub fn kahler_differentials(p: &RelativePresentation) -> Result<(RingPresentation, ModulePresentation)> {
    let s = p.target()?;
    let ring = &p.ambient.ring;
    let generator_degrees: Vec<i32> = p.relative.iter().map(|&v| ring.weights[v] as i32).collect();
    let relations = p
        .relations
        .iter()
        .map(|f| FreeModuleVector {
            coords: p.relative.iter().map(|&v| f.derivative(v)).collect(),
            shifts: generator_degrees.clone(),
        })
        .filter(|v| !v.is_zero())
        .collect();
    Ok((
        s,
        ModulePresentation {
            generator_degrees,
            relations,
        },
    ))
}

/// The LS complex `L₂ -> L₁ -> L₀` tensored with `k`, one internal degree at a time.
#[derive(Clone, Debug)]
pub(crate) struct LsComplex {
    pub pres: RelativePresentation,
    pub ring: Arc<QuotientRing>,
    pub free: GradedFree,
    /// Nonzero relations in `P` with their positions in `pres.relations`.
    pub gens: Vec<Polynomial>,
    pub origin: Vec<usize>,
    pub top: u32,
    pub pieces: Vec<LsDegree>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct LsDegree {
    /// Positions in `pres.relative` of the variables of this weight.
    pub xs: Vec<usize>,
    /// Indices into `gens` of the relations of this degree.
    pub fs: Vec<usize>,
    /// `L₁ ⊗ k -> L₀ ⊗ k`, one column per entry of `fs`.
    pub d1: Vec<SVec>,
    /// Basis of `Rel_w` in `F_w` coordinates.
    pub rel: Vec<SVec>,
    /// Spanning set of `(m·Rel + Kos)_w`.
    pub sub: Vec<SVec>,
    /// Representatives of `(Rel/Kos) ⊗ k` in this degree.
    pub reps: Vec<SVec>,
    /// `L₂ ⊗ k -> L₁ ⊗ k`, one column per rep.
    pub d2: Vec<SVec>,
}

impl LsComplex {
    pub fn new(pres: &RelativePresentation) -> Result<LsComplex> {
        let amb = &pres.ambient;
        let field = amb.ring.field;
        let pre = QuotientRing::new(amb, 0)?;
        let mut gens = Vec::new();
        let mut origin = Vec::new();
        for (i, f) in pres.relations.iter().enumerate() {
            let nf = pre.gb.normal_form(f);
            if !nf.is_zero() {
                gens.push(nf);
                origin.push(i);
            }
        }
        let degs: Vec<u32> = gens.iter().map(|f| f.degree().unwrap_or(0)).collect();
        let mut top = degs.iter().copied().max().unwrap_or(0);
        top = top.max(pres.relative.iter().map(|&v| amb.ring.weights[v]).max().unwrap_or(0));
        if !gens.is_empty() {
            let rank_one: Vec<FreeModuleVector> = gens.iter().map(|f| FreeModuleVector::new(vec![f.clone()])).collect();
            for s in syzygy_basis(amb, &rank_one)? {
                for (j, c) in s.coords.iter().enumerate() {
                    for (_, m) in c.terms() {
                        top = top.max(m.degree() + degs[j]);
                    }
                }
            }
        }
        let ring = QuotientRing::new(amb, top)?;
        let free = GradedFree::new(&ring, degs.iter().map(|&d| d as i32).collect());
        let fvecs: Vec<(u32, SVec)> = gens
            .iter()
            .map(|f| ring.element(f).map(|e| e.expect("nonzero relation")))
            .collect::<Result<_>>()?;
        let mut pieces: Vec<LsDegree> = Vec::new();
        for w in 0..=top {
            let mut piece = LsDegree {
                xs: (0..pres.relative.len())
                    .filter(|&i| amb.ring.weights[pres.relative[i]] == w)
                    .collect(),
                fs: (0..gens.len()).filter(|&j| degs[j] == w).collect(),
                ..Default::default()
            };
            for &j in &piece.fs {
                let col = SVec::from_pairs(piece.xs.iter().enumerate().filter_map(|(k, &i)| {
                    let c = gens[j].derivative(pres.relative[i]).constant_coefficient();
                    (!c.is_zero()).then_some((k, c))
                }));
                piece.d1.push(col);
            }
            // Rel_w = ker(F_w -> P_w)
            let fw = free.dim(w as i32);
            let cols: Vec<SVec> = (0..fw)
                .map(|k| {
                    let (j, i) = free.locate(w as i32, k);
                    let m = &ring.basis(w - degs[j])[i];
                    ring.mul_monomial(m, fvecs[j].0, &fvecs[j].1)
                })
                .collect();
            let (rel, _) = kernel_and_image(field, &cols);
            let mut sub = Vec::new();
            for v in 0..amb.ring.nvars() {
                let wt = amb.ring.weights[v];
                if wt == 0 || wt > w {
                    continue;
                }
                let xv = amb.ring.var_monomial(v);
                for r in &pieces[(w - wt) as usize].rel {
                    let p = free.mul_monomial(&xv, (w - wt) as i32, r);
                    if !p.is_zero() {
                        sub.push(p);
                    }
                }
            }
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    let dab = degs[a] + degs[b];
                    if dab > w {
                        continue;
                    }
                    let kab = free
                        .mul_poly(&gens[a], degs[b] as i32, &free.generator(b))
                        .add_scaled(&free.mul_poly(&gens[b], degs[a] as i32, &free.generator(a)), &-&field.one());
                    sub.extend(free.multiples(&kab, dab as i32, w as i32));
                }
            }
            let mut e = Echelon::new(field);
            for v in &sub {
                let _ = e.insert(v);
            }
            for r in &rel {
                if e.insert(r).is_ok() {
                    piece.reps.push(r.clone());
                }
            }
            for r in &piece.reps {
                piece.d2.push(constant_part(&free, w, &piece.fs, r));
            }
            piece.rel = rel;
            piece.sub = sub;
            pieces.push(piece);
        }
        Ok(LsComplex {
            pres: pres.clone(),
            ring,
            free,
            gens,
            origin,
            top,
            pieces,
        })
    }

    pub fn field(&self) -> crate::scalar::Field {
        self.ring.field()
    }

    pub fn dims(&self) -> [BTreeMap<u32, usize>; 3] {
        let field = self.field();
        let mut out: [BTreeMap<u32, usize>; 3] = Default::default();
        for (w, p) in self.pieces.iter().enumerate() {
            let r1 = rank(field, &p.d1);
            let r2 = rank(field, &p.d2);
            let d0 = p.xs.len() - r1;
            let d1 = p.fs.len() - r1 - r2;
            let d2 = p.reps.len() - r2;
            for (s, d) in [d0, d1, d2].into_iter().enumerate() {
                if d > 0 {
                    out[s].insert(w as u32, d);
                }
            }
        }
        out
    }
}

/// Components of `r` on generators of degree `w` (their `P_0` coefficients).
fn constant_part(free: &GradedFree, w: u32, fs: &[usize], r: &SVec) -> SVec {
    SVec::from_pairs(fs.iter().enumerate().filter_map(|(k, &j)| {
        let off = free.offset(w as i32, j);
        r.get(off).map(|c| (k, c.clone()))
    }))
}

trait AddScaled {
    fn add_scaled(&self, other: &SVec, c: &crate::scalar::Scalar) -> SVec;
}

impl AddScaled for SVec {
    fn add_scaled(&self, other: &SVec, c: &crate::scalar::Scalar) -> SVec {
        let mut out = self.clone();
        out.axpy(c, other);
        out
    }
}

/// Graded dimensions of `D_s(S|R; k)` for `s = 0, 1, 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CotangentTable {
    pub d0: BTreeMap<u32, usize>,
    pub d1: BTreeMap<u32, usize>,
    pub d2: BTreeMap<u32, usize>,
}

impl CotangentTable {
    pub fn total(&self, s: usize) -> usize {
        match s {
            0 => self.d0.values().sum(),
            1 => self.d1.values().sum(),
            2 => self.d2.values().sum(),
            _ => 0,
        }
    }
}

/// `D_s(S|R; k)` for `s <= cap <= 2`.
pub fn ls_cotangent(p: &RelativePresentation, cap: usize) -> Result<CotangentTable> {
    if cap > 2 {
        return Err(AlgebraError::Unsupported(
            "the Lichtenbaum–Schlessinger complex stops at degree 2; use the Tate or minimal-model paths above".into(),
        ));
    }
    let [d0, d1, d2] = LsComplex::new(p)?.dims();
    let keep = |s: usize, m: BTreeMap<u32, usize>| if s <= cap { m } else { BTreeMap::new() };
    Ok(CotangentTable {
        d0: keep(0, d0),
        d1: keep(1, d1),
        d2: keep(2, d2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedModule;
    use crate::scalar::Field;

    fn pres(vars: &[&str], gens: &[&str]) -> RingPresentation {
        RingPresentation::parse(Field::Rational, vars, gens).unwrap()
    }

    #[test]
    fn kahler_examples() {
        let (_, om) = kahler_differentials(&RelativePresentation::over_field(&pres(&["x"], &[])).unwrap()).unwrap();
        assert_eq!(om.generator_degrees, vec![1]);
        assert!(om.relations.is_empty());
        let (_, om) = kahler_differentials(&RelativePresentation::over_field(&pres(&["x"], &["x^2"])).unwrap()).unwrap();
        assert_eq!(om.relations.len(), 1);
        assert_eq!(om.relations[0].coords[0].to_string(), "2*x");
        let r = pres(&["x"], &[]);
        let (_, om) = kahler_differentials(&RelativePresentation::quotient(&r, vec![]).unwrap()).unwrap();
        assert!(om.generator_degrees.is_empty());
    }

    #[test]
    fn identity_has_no_cotangent_homology() {
        let r = pres(&["x", "y"], &["x*y"]);
        let t = ls_cotangent(&RelativePresentation::quotient(&r, vec![]).unwrap(), 2).unwrap();
        assert_eq!((t.total(0), t.total(1), t.total(2)), (0, 0, 0));
    }

    #[test]
    fn nonzerodivisor_quotient() {
        let r = pres(&["x"], &[]);
        let x = Polynomial::parse(&r.ring, "x").unwrap();
        let t = ls_cotangent(&RelativePresentation::quotient(&r, vec![x]).unwrap(), 2).unwrap();
        assert_eq!(t.d1, BTreeMap::from([(1, 1)]));
        assert_eq!((t.total(0), t.total(2)), (0, 0));
    }

    #[test]
    fn non_ci_has_d2() {
        let s = pres(&["x", "y"], &["x^2", "x*y"]);
        let t = ls_cotangent(&RelativePresentation::over_field(&s).unwrap(), 2).unwrap();
        assert_eq!(t.total(2), 1);
        assert_eq!(t.total(1), 2);
        assert_eq!(t.total(0), 2);
    }

    #[test]
    fn regular_sequences_have_d1_length() {
        let s = pres(&["x", "y", "z"], &["x^2", "y^3", "z^2 + x*y"]);
        let t = ls_cotangent(&RelativePresentation::over_field(&s).unwrap(), 2).unwrap();
        assert_eq!(t.total(1), 3);
        assert_eq!(t.total(2), 0);
    }

    #[test]
    fn d0_agrees_with_kahler() {
        for (vars, gens) in [(&["x", "y"][..], &["x^2", "x*y"][..]), (&["x"][..], &["x^3"][..]), (&["x", "y"][..], &["x*y - y^2"][..])] {
            let p = RelativePresentation::over_field(&pres(vars, gens)).unwrap();
            let t = ls_cotangent(&p, 0).unwrap();
            let (s, om) = kahler_differentials(&p).unwrap();
            let q = QuotientRing::new(&s, 4).unwrap();
            let m = GradedModule::new(&q, &om, 4).unwrap();
            // Ω ⊗ k: minimal generators = dim Ω_d − dim (m·Ω)_d; here the generators sit in degree 1
            let min_gens = m.dim(1) - 0;
            assert_eq!(t.total(0), min_gens, "{vars:?} {gens:?}");
        }
    }
}
