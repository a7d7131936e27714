//! Degreewise linear algebra over a graded quotient ring `Q = P / I`.
//!
//! Every graded piece is a finite-dimensional vector space with a basis of
//! standard monomials; modules are handled one degree at a time.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::groebner::{groebner_of, standard_monomials, FreeModuleVector, GroebnerBasis};
use crate::linalg::{Echelon, SVec};
use crate::poly::{Monomial, Polynomial, RingPresentation};
use crate::scalar::Field;

#[derive(Debug)]
pub struct QuotientRing {
    pub pres: RingPresentation,
    pub gb: GroebnerBasis,
    max_degree: u32,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    /// `var_mult[v][d][j]`: `x_v * basis[d][j]` in degree `d + w_v`.
    var_mult: Vec<Vec<Vec<SVec>>>,
}

impl QuotientRing {
    /// Tabulates `Q` through internal degree `max_degree`.
    pub fn new(pres: &RingPresentation, max_degree: u32) -> Result<Arc<QuotientRing>> {
        pres.require_graded_local()?;
        let gb = groebner_of(pres)?;
        if gb.is_unit_ideal() {
            return Err(AlgebraError::InvalidInput("the quotient ring is zero".into()));
        }
        let bases: Vec<Vec<Monomial>> = (0..=max_degree).map(|d| standard_monomials(&gb, d)).collect();
        let index: Vec<HashMap<Monomial, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        let ring = &pres.ring;
        let mut q = QuotientRing {
            pres: pres.clone(),
            gb,
            max_degree,
            bases,
            index,
            var_mult: Vec::new(),
        };
        let mut var_mult = Vec::new();
        for v in 0..ring.nvars() {
            let w = ring.weights[v];
            let xv = ring.var_monomial(v);
            let mut per_degree = Vec::new();
            for d in 0..=max_degree {
                if d + w > max_degree {
                    per_degree.push(Vec::new());
                    continue;
                }
                let row = q.bases[d as usize]
                    .iter()
                    .map(|m| {
                        let p = Polynomial::term(ring, ring.field.one(), m.mul(&xv));
                        q.coords(&q.gb.normal_form(&p), d + w)
                    })
                    .collect();
                per_degree.push(row);
            }
            var_mult.push(per_degree);
        }
        q.var_mult = var_mult;
        Ok(Arc::new(q))
    }

    pub fn field(&self) -> Field {
        self.pres.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.pres.ring.nvars()
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.pres.ring.weights[v]
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < 0 || d as u32 > self.max_degree {
            0
        } else {
            self.bases[d as usize].len()
        }
    }

    pub fn basis(&self, d: u32) -> &[Monomial] {
        &self.bases[d as usize]
    }

    /// Coordinates of a reduced homogeneous polynomial of degree `d`.
    fn coords(&self, nf: &Polynomial, d: u32) -> SVec {
        SVec::from_pairs(nf.terms().iter().map(|(c, m)| (self.index[d as usize][m], c.clone())))
    }

    /// Homogeneous element `f` as `(degree, coordinates)`; `None` if `f` is zero in `Q`.
    pub fn element(&self, f: &Polynomial) -> Result<Option<(u32, SVec)>> {
        if !f.is_homogeneous() {
            return Err(AlgebraError::Inhomogeneous(f.to_string()));
        }
        let nf = self.gb.normal_form(f);
        let Some(d) = nf.degree() else { return Ok(None) };
        if d > self.max_degree {
            return Err(AlgebraError::InvalidInput(format!("{f} exceeds the internal degree cap")));
        }
        Ok(Some((d, self.coords(&nf, d))))
    }

    pub fn to_poly(&self, d: u32, v: &SVec) -> Polynomial {
        let ring = &self.pres.ring;
        let terms = v.iter().map(|(i, c)| (c.clone(), self.bases[d as usize][i].clone())).collect();
        Polynomial::from_terms(ring, terms)
    }

    /// `x_v * a` for `a` in degree `d`; empty beyond the tabulated range.
    pub fn mul_var(&self, v: usize, d: u32, a: &SVec) -> SVec {
        let mut out = SVec::new();
        if d + self.weight(v) > self.max_degree {
            return out;
        }
        let table = &self.var_mult[v][d as usize];
        for (j, c) in a.iter() {
            out.axpy(c, &table[j]);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, d: u32, a: &SVec) -> SVec {
        let mut cur = a.clone();
        let mut deg = d;
        for (v, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                cur = self.mul_var(v, deg, &cur);
                deg += self.weight(v);
                if cur.is_zero() {
                    return cur;
                }
            }
        }
        cur
    }

    /// `f * a` for homogeneous `f`.
    pub fn mul_poly(&self, f: &Polynomial, d: u32, a: &SVec) -> SVec {
        let mut out = SVec::new();
        for (c, m) in f.terms() {
            out.axpy(c, &self.mul_monomial(m, d, a));
        }
        out
    }

    /// Largest degree with `Q_d != 0`, if `Q` vanishes in a full window of
    /// tabulated degrees (so it is Artinian).
    pub fn top_degree(&self) -> Option<u32> {
        let wmax = self.pres.ring.weights.iter().copied().max().unwrap_or(1);
        let mut last = 0;
        for d in 0..=self.max_degree {
            if !self.bases[d as usize].is_empty() {
                last = d;
            } else if d >= last + wmax {
                return Some(last);
            }
        }
        None
    }

    /// Basis of the socle `0 :_Q m` in degree `d`, by direct annihilator computation.
    pub fn socle_dim(&self, d: u32) -> usize {
        let n = self.dim(d as i32);
        let mut images = Vec::with_capacity(n);
        let mut offsets = Vec::new();
        let mut off = 0;
        for v in 0..self.nvars() {
            offsets.push(off);
            off += self.dim((d + self.weight(v)) as i32);
        }
        for j in 0..n {
            let unit = SVec::unit(j, self.field());
            let mut img = SVec::new();
            for v in 0..self.nvars() {
                for (k, c) in self.mul_var(v, d, &unit).iter() {
                    img.add_at(offsets[v] + k, c);
                }
            }
            images.push(img);
        }
        crate::linalg::kernel_and_image(self.field(), &images).0.len()
    }
}

/// Graded free module `⊕ Q(-a_i)`.
#[derive(Clone, Debug)]
pub struct GradedFree {
    pub ring: Arc<QuotientRing>,
    pub shifts: Vec<i32>,
}

impl GradedFree {
    pub fn new(ring: &Arc<QuotientRing>, shifts: Vec<i32>) -> GradedFree {
        GradedFree {
            ring: ring.clone(),
            shifts,
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn dim(&self, d: i32) -> usize {
        self.shifts.iter().map(|&a| self.ring.dim(d - a)).sum()
    }

    /// Offset of generator `i`'s block in degree `d`.
    pub fn offset(&self, d: i32, i: usize) -> usize {
        self.shifts[..i].iter().map(|&a| self.ring.dim(d - a)).sum()
    }

    /// `(generator, ring basis index)` for a coordinate in degree `d`.
    pub fn locate(&self, d: i32, mut k: usize) -> (usize, usize) {
        for (i, &a) in self.shifts.iter().enumerate() {
            let n = self.ring.dim(d - a);
            if k < n {
                return (i, k);
            }
            k -= n;
        }
        panic!("coordinate out of range");
    }

    /// The generator `e_i` as a coordinate vector in degree `a_i`.
    pub fn generator(&self, i: usize) -> SVec {
        SVec::unit(self.offset(self.shifts[i], i), self.ring.field())
    }

    fn split(&self, d: i32, v: &SVec) -> Vec<SVec> {
        let mut parts = vec![SVec::new(); self.rank()];
        for (k, c) in v.iter() {
            let (i, j) = self.locate(d, k);
            parts[i].add_at(j, c);
        }
        parts
    }

    fn join(&self, d: i32, parts: &[SVec]) -> SVec {
        let mut out = SVec::new();
        for (i, p) in parts.iter().enumerate() {
            let off = self.offset(d, i);
            for (j, c) in p.iter() {
                out.add_at(off + j, c);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, d: i32, v: &SVec) -> SVec {
        let e = m.degree() as i32;
        let parts: Vec<SVec> = self
            .split(d, v)
            .iter()
            .zip(&self.shifts)
            .map(|(p, &a)| if p.is_zero() { SVec::new() } else { self.ring.mul_monomial(m, (d - a) as u32, p) })
            .collect();
        self.join(d + e, &parts)
    }

    pub fn mul_poly(&self, f: &Polynomial, d: i32, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (c, m) in f.terms() {
            out.axpy(c, &self.mul_monomial(m, d, v));
        }
        out
    }

    /// Homogeneous vector to `(degree, coordinates)`; `None` when zero.
    pub fn element(&self, v: &FreeModuleVector) -> Result<Option<(i32, SVec)>> {
        let mut degree: Option<i32> = None;
        let mut parts: Vec<(usize, u32, SVec)> = Vec::new();
        for (i, c) in v.coords.iter().enumerate() {
            if let Some((dc, sv)) = self.ring.element(c)? {
                let d = dc as i32 + self.shifts[i];
                if degree.is_some_and(|e| e != d) {
                    return Err(AlgebraError::Inhomogeneous(v.to_string()));
                }
                degree = Some(d);
                parts.push((i, dc, sv));
            }
        }
        let Some(d) = degree else { return Ok(None) };
        let mut full = vec![SVec::new(); self.rank()];
        for (i, _, sv) in parts {
            full[i] = sv;
        }
        Ok(Some((d, self.join(d, &full))))
    }

    pub fn to_vector(&self, d: i32, v: &SVec) -> FreeModuleVector {
        let coords = self
            .split(d, v)
            .iter()
            .zip(&self.shifts)
            .map(|(p, &a)| {
                if d - a < 0 {
                    Polynomial::zero(&self.ring.pres.ring)
                } else {
                    self.ring.to_poly((d - a) as u32, p)
                }
            })
            .collect();
        FreeModuleVector {
            coords,
            shifts: self.shifts.clone(),
        }
    }

    /// Span of `m * g` over ring basis monomials `m`, for homogeneous `g` of
    /// degree `b`, landing in degree `d`.
    pub fn multiples(&self, g: &SVec, b: i32, d: i32) -> Vec<SVec> {
        if d < b {
            return Vec::new();
        }
        self.ring
            .basis((d - b) as u32)
            .iter()
            .map(|m| self.mul_monomial(m, b, g))
            .filter(|v| !v.is_zero())
            .collect()
    }
}

/// Finitely presented graded module `F / R` handled degreewise.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub free: GradedFree,
    /// Homogeneous relations with their degrees.
    pub relations: Vec<(i32, SVec)>,
    min_degree: i32,
    relation_spans: Vec<Echelon>,
}

/// Module presentation: generator degrees and relation vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub generator_degrees: Vec<i32>,
    pub relations: Vec<FreeModuleVector>,
}

impl ModulePresentation {
    /// `k = Q / m`.
    pub fn residue_field(q: &RingPresentation) -> ModulePresentation {
        let relations = (0..q.ring.nvars())
            .map(|v| FreeModuleVector::new(vec![Polynomial::var(&q.ring, v)]))
            .collect();
        ModulePresentation {
            generator_degrees: vec![0],
            relations,
        }
    }

    pub fn ring_itself() -> ModulePresentation {
        ModulePresentation {
            generator_degrees: vec![0],
            relations: Vec::new(),
        }
    }

    /// `Q / (f_1..f_r)` for homogeneous `f_i`.
    pub fn cyclic(q: &RingPresentation, gens: &[Polynomial]) -> ModulePresentation {
        let _ = q;
        ModulePresentation {
            generator_degrees: vec![0],
            relations: gens.iter().map(|f| FreeModuleVector::new(vec![f.clone()])).collect(),
        }
    }

    pub fn free(shifts: Vec<i32>) -> ModulePresentation {
        ModulePresentation {
            generator_degrees: shifts,
            relations: Vec::new(),
        }
    }
}

impl GradedModule {
    /// Tabulates the module in degrees `min..=max` of the free cover.
    pub fn new(ring: &Arc<QuotientRing>, pres: &ModulePresentation, max_degree: i32) -> Result<GradedModule> {
        let free = GradedFree::new(ring, pres.generator_degrees.clone());
        let mut relations = Vec::new();
        for r in &pres.relations {
            if r.rank() != free.rank() {
                return Err(AlgebraError::InvalidInput("relation rank differs from generator count".into()));
            }
            let mut r = r.clone();
            r.shifts = free.shifts.clone();
            if let Some(e) = free.element(&r)? {
                relations.push(e);
            }
        }
        let min_degree = free.shifts.iter().copied().min().unwrap_or(0);
        let mut relation_spans = Vec::new();
        for d in min_degree..=max_degree {
            let mut e = Echelon::new(ring.field());
            for (b, g) in &relations {
                for v in free.multiples(g, *b, d) {
                    let _ = e.insert(&v);
                }
            }
            relation_spans.push(e);
        }
        Ok(GradedModule {
            free,
            relations,
            min_degree,
            relation_spans,
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.free.ring
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.relation_spans.len() as i32 - 1
    }

    fn span(&self, d: i32) -> Option<&Echelon> {
        if d < self.min_degree {
            None
        } else {
            self.relation_spans.get((d - self.min_degree) as usize)
        }
    }

    pub fn dim(&self, d: i32) -> usize {
        match self.span(d) {
            Some(e) => self.free.dim(d) - e.rank(),
            None => 0,
        }
    }

    /// Canonical representative in `F_d` of a class.
    pub fn reduce(&self, d: i32, v: &SVec) -> SVec {
        match self.span(d) {
            Some(e) => e.reduce(v),
            None => SVec::new(),
        }
    }

    /// Free-module coordinates forming a basis of `M_d` (the non-pivots).
    pub fn basis(&self, d: i32) -> Vec<usize> {
        match self.span(d) {
            Some(e) => (0..self.free.dim(d)).filter(|k| !e.is_pivot(*k)).collect(),
            None => Vec::new(),
        }
    }

    /// Coordinates of a reduced vector relative to `basis(d)`.
    pub fn basis_coords(&self, d: i32, v: &SVec) -> SVec {
        let basis = self.basis(d);
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        SVec::from_pairs(self.reduce(d, v).iter().map(|(k, c)| (pos[&k], c.clone())))
    }

    pub fn mul_monomial(&self, m: &Monomial, d: i32, v: &SVec) -> SVec {
        let e = d + m.degree() as i32;
        if e > self.max_degree() {
            return SVec::new();
        }
        self.reduce(e, &self.free.mul_monomial(m, d, v))
    }

    pub fn mul_poly(&self, f: &Polynomial, d: i32, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (c, m) in f.terms() {
            out.axpy(c, &self.mul_monomial(m, d, v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
        QuotientRing::new(&RingPresentation::parse(Field::Rational, vars, gens).unwrap(), 8).unwrap()
    }

    #[test]
    fn tabulates_dims_and_top_degree() {
        let r = q(&["x", "y"], &["x^2", "y^2"]);
        assert_eq!((0..4).map(|d| r.dim(d)).collect::<Vec<_>>(), vec![1, 2, 1, 0]);
        assert_eq!(r.top_degree(), Some(2));
        assert_eq!(q(&["x"], &[]).top_degree(), None);
    }

    #[test]
    fn socles() {
        let r = q(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(r.socle_dim(1), 2);
        assert_eq!(r.socle_dim(0), 0);
        let g = q(&["x", "y"], &["x^2", "y^2"]);
        assert_eq!((0..3).map(|d| g.socle_dim(d)).sum::<usize>(), 1);
    }

    #[test]
    fn residue_field_module() {
        let r = q(&["x", "y"], &["x^2"]);
        let k = GradedModule::new(&r, &ModulePresentation::residue_field(&r.pres), 6).unwrap();
        assert_eq!((0..4).map(|d| k.dim(d)).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn multiplication_respects_relations() {
        let r = q(&["x", "y"], &["x^2 - y^2"]);
        let x = r.element(&Polynomial::parse(&r.pres.ring, "x").unwrap()).unwrap().unwrap();
        let xx = r.mul_poly(&Polynomial::parse(&r.pres.ring, "x").unwrap(), x.0, &x.1);
        let yy = r.element(&Polynomial::parse(&r.pres.ring, "y^2").unwrap()).unwrap().unwrap();
        assert_eq!(xx, yy.1);
    }
}
