//! Free graded-commutative DG algebras over a graded-local base ring.
//!
//! An algebra is `Q ⊗ Λ(odd) ⊗ S(even) ⊗ Γ(even)` modulo optional monomial
//! relations on the positive-degree generators, where `Q = P / I` sits in
//! homological degree zero. Everything is bigraded by (homological degree,
//! internal degree) and each bigraded piece is finite.

mod homology;
mod semifree;
mod tate;
mod fiber;

pub use fiber::*;
pub use homology::*;
pub use semifree::*;
pub use tate::*;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::expr::{parse_expr, Expr};
use crate::groebner::{groebner_of, standard_monomials, GroebnerBasis};
use crate::linalg::SVec;
use crate::poly::{Monomial, PolyRing, Polynomial, RingPresentation};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Polynomial,
    Exterior,
    DividedPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GCGenerator {
    pub name: String,
    pub degree: u32,
    /// Internal degree; zero for ungraded inputs.
    pub weight: u32,
    pub kind: GeneratorKind,
}

/// A basis monomial: a standard monomial of the base ring times a product
/// of positive generators in index order. Trailing zero exponents of `pos`
/// are trimmed so that monomials stay comparable as generators are added.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub base: Vec<u32>,
    pub pos: Vec<u32>,
}

impl Mono {
    pub fn unit(nbase: usize) -> Mono {
        Mono {
            base: vec![0; nbase],
            pos: Vec::new(),
        }
    }

    fn trimmed(mut self) -> Mono {
        while self.pos.last() == Some(&0) {
            self.pos.pop();
        }
        self
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.pos.get(i).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.pos.is_empty() && self.base.iter().all(|&e| e == 0)
    }
}

/// Finite linear combination of basis monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    pub terms: BTreeMap<Mono, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn mono(c: Scalar, m: Mono) -> Element {
        let mut e = Element::zero();
        e.add_term(&m, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: &Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(e) => {
                let s = &*e + c;
                if s.is_zero() {
                    self.terms.remove(m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn axpy(&mut self, c: &Scalar, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m, &(c * x));
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.axpy(c, self);
        out
    }
}

#[derive(Clone, Debug)]
pub struct DGAlgebra {
    pub field: Field,
    pub base: RingPresentation,
    base_gb: Arc<GroebnerBasis>,
    pub generators: Vec<GCGenerator>,
    pub differential: Vec<Element>,
    /// Monomial relations among positive generators (exponent vectors).
    pub relations: Vec<Vec<u32>>,
}

impl DGAlgebra {
    /// The base ring `Q` itself, concentrated in degree zero.
    pub fn new(base: RingPresentation) -> Result<DGAlgebra> {
        base.require_graded_local()?;
        let gb = groebner_of(&base)?;
        if gb.is_unit_ideal() {
            return Err(AlgebraError::InvalidInput("the base ring is zero".into()));
        }
        Ok(DGAlgebra {
            field: base.ring.field,
            base,
            base_gb: Arc::new(gb),
            generators: Vec::new(),
            differential: Vec::new(),
            relations: Vec::new(),
        })
    }

    pub fn over_field(field: Field) -> DGAlgebra {
        let ring = PolyRing::with(field, Vec::new(), None, crate::poly::MonomialOrder::Degrevlex).expect("empty ring");
        DGAlgebra::new(RingPresentation::new(ring, Vec::new()).unwrap()).unwrap()
    }

    pub fn nbase(&self) -> usize {
        self.base.ring.nvars()
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// True when every bigraded piece has internal degree zero.
    pub fn is_ungraded(&self) -> bool {
        self.nbase() == 0 && self.generators.iter().all(|g| g.weight == 0)
    }

    pub fn one(&self) -> Element {
        Element::mono(self.field.one(), Mono::unit(self.nbase()))
    }

    pub fn scalar(&self, c: Scalar) -> Element {
        Element::mono(c, Mono::unit(self.nbase()))
    }

    pub fn gen(&self, i: usize) -> Element {
        let mut pos = vec![0; i + 1];
        pos[i] = 1;
        Element::mono(
            self.field.one(),
            Mono {
                base: vec![0; self.nbase()],
                pos,
            },
        )
    }

    /// `g_i^{(a)}` for divided powers, `g_i^a` otherwise.
    pub fn gen_power(&self, i: usize, a: u32) -> Element {
        let mut pos = vec![0; i + 1];
        pos[i] = a;
        Element::mono(
            self.field.one(),
            Mono {
                base: vec![0; self.nbase()],
                pos,
            }
            .trimmed(),
        )
    }

    pub fn base_element(&self, f: &Polynomial) -> Result<Element> {
        if **f.ring() != *self.base.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let nf = self.base_gb.normal_form(f);
        let mut e = Element::zero();
        for (c, m) in nf.terms() {
            e.add_term(
                &Mono {
                    base: m.exps().to_vec(),
                    pos: Vec::new(),
                },
                c,
            );
        }
        Ok(e)
    }

    pub fn base_var(&self, v: usize) -> Element {
        self.base_element(&Polynomial::var(&self.base.ring, v)).unwrap()
    }

    pub fn mono_degree(&self, m: &Mono) -> (u32, u32) {
        let mut h = 0;
        let mut w: u32 = m.base.iter().zip(&self.base.ring.weights).map(|(e, w)| e * w).sum();
        for (i, &e) in m.pos.iter().enumerate() {
            h += e * self.generators[i].degree;
            w += e * self.generators[i].weight;
        }
        (h, w)
    }

    /// Bidegree of a nonzero homogeneous element.
    pub fn degree_of(&self, e: &Element) -> Option<(u32, u32)> {
        let mut it = e.terms.keys().map(|m| self.mono_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Adjoins a generator with the given differential.
    pub fn add_generator(&mut self, name: &str, degree: u32, weight: u32, kind: GeneratorKind, d: Element) -> Result<usize> {
        if degree == 0 {
            return Err(AlgebraError::InvalidInput(format!("generator {name} must have positive degree")));
        }
        if self.generator_index(name).is_some() || self.base.ring.var_index(name).is_some() {
            return Err(AlgebraError::InvalidInput(format!("duplicate name {name}")));
        }
        let ok_kind = match kind {
            GeneratorKind::Exterior => degree % 2 == 1,
            GeneratorKind::Polynomial | GeneratorKind::DividedPower => degree % 2 == 0,
        };
        if !ok_kind {
            return Err(AlgebraError::InvalidInput(format!("{kind:?} generator {name} has degree {degree} of the wrong parity")));
        }
        if !d.is_zero() {
            match self.degree_of(&d) {
                Some((h, w)) if h + 1 == degree && w == weight => {}
                _ => {
                    return Err(AlgebraError::Differential(format!(
                        "differential of {name} must be homogeneous of bidegree ({}, {weight})",
                        degree - 1
                    )))
                }
            }
        }
        self.generators.push(GCGenerator {
            name: name.to_string(),
            degree,
            weight,
            kind,
        });
        self.differential.push(d);
        Ok(self.generators.len() - 1)
    }

    /// Adds a monomial relation `m = 0` among positive generators.
    pub fn add_relation(&mut self, exps: Vec<u32>) -> Result<()> {
        if exps.len() > self.ngens() || exps.iter().all(|&e| e == 0) {
            return Err(AlgebraError::InvalidInput("relation must be a nonconstant monomial in the generators".into()));
        }
        self.relations.push(exps);
        Ok(())
    }

    fn killed_by_relation(&self, pos: &[u32]) -> bool {
        self.relations
            .iter()
            .any(|r| r.iter().enumerate().all(|(i, &e)| pos.get(i).copied().unwrap_or(0) >= e))
    }

    /// Product of two monomials with Koszul sign and divided-power factors.
    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Element {
        let n = a.pos.len().max(b.pos.len());
        let mut coef = self.field.one();
        let mut negative = false;
        let mut pos = vec![0u32; n];
        // odd generators of b that must pass odd generators of a with larger index
        let mut odd_a_above = 0u32;
        for i in (0..n).rev() {
            let (x, y) = (a.exp(i), b.exp(i));
            let g = &self.generators[i];
            if g.kind == GeneratorKind::Exterior {
                if x > 0 && y > 0 {
                    return Element::zero();
                }
                if y > 0 && odd_a_above % 2 == 1 {
                    negative = !negative;
                }
                odd_a_above += x;
            }
            if g.kind == GeneratorKind::DividedPower && x > 0 && y > 0 {
                coef = &coef * &self.field.binomial((x + y) as u64, x as u64);
                if coef.is_zero() {
                    return Element::zero();
                }
            }
            pos[i] = x + y;
        }
        if self.killed_by_relation(&pos) {
            return Element::zero();
        }
        if negative {
            coef = -&coef;
        }
        let pos = Mono { base: Vec::new(), pos }.trimmed().pos;
        let base_prod: Vec<u32> = a.base.iter().zip(&b.base).map(|(x, y)| x + y).collect();
        let mut out = Element::zero();
        if self.base.ideal.is_empty() {
            out.add_term(&Mono { base: base_prod, pos }, &coef);
            return out;
        }
        let ring = &self.base.ring;
        let p = Polynomial::term(ring, coef, ring.monomial(base_prod));
        for (c, m) in self.base_gb.normal_form(&p).terms() {
            out.add_term(
                &Mono {
                    base: m.exps().to_vec(),
                    pos: pos.clone(),
                },
                c,
            );
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca * cb;
                out.axpy(&c, &self.mul_mono(ma, mb));
            }
        }
        out
    }

    pub fn pow(&self, a: &Element, n: u32) -> Element {
        let mut out = self.one();
        for _ in 0..n {
            out = self.mul(&out, a);
        }
        out
    }

    /// Differential of a basis monomial via the signed Leibniz rule.
    pub fn d_mono(&self, m: &Mono) -> Element {
        let mut out = Element::zero();
        let mut before = Mono {
            base: m.base.clone(),
            pos: Vec::new(),
        };
        let mut before_degree = 0u32;
        for i in 0..m.pos.len() {
            let a = m.pos[i];
            if a == 0 {
                continue;
            }
            let g = &self.generators[i];
            if !self.differential[i].is_zero() {
                let coef = match g.kind {
                    GeneratorKind::Polynomial => self.field.from_i64(a as i64),
                    _ => self.field.one(),
                };
                let mut lower = before.pos.clone();
                lower.resize(i + 1, 0);
                lower[i] = a - 1;
                let lower = Mono {
                    base: before.base.clone(),
                    pos: lower,
                }
                .trimmed();
                let mut after = vec![0; m.pos.len()];
                after[i + 1..].copy_from_slice(&m.pos[i + 1..]);
                let after = Mono {
                    base: vec![0; m.base.len()],
                    pos: after,
                }
                .trimmed();
                let head = Element::mono(coef, lower);
                let mut term = self.mul(&self.mul(&head, &self.differential[i]), &Element::mono(self.field.one(), after));
                if before_degree % 2 == 1 {
                    term = term.scale(&self.field.from_i64(-1));
                }
                out = out.add(&term);
            }
            before.pos.resize(i + 1, 0);
            before.pos[i] = a;
            before_degree += a * g.degree;
        }
        out
    }

    pub fn d(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in &e.terms {
            out.axpy(c, &self.d_mono(m));
        }
        out
    }

    /// `d(d(g)) = 0` on every generator.
    pub fn check_d_squared(&self) -> Result<()> {
        for (i, dg) in self.differential.iter().enumerate() {
            if !self.d(dg).is_zero() {
                return Err(AlgebraError::Differential(format!("d^2 != 0 on {}", self.generators[i].name)));
            }
        }
        Ok(())
    }

    /// Parses an expression in base variables and generator names.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let e = parse_expr(text).map_err(|e| AlgebraError::InvalidInput(format!("{text}: {e}")))?;
        self.from_expr(&e)
    }

    pub fn from_expr(&self, e: &Expr) -> Result<Element> {
        Ok(match e {
            Expr::Num(n, d) => {
                let c = self
                    .field
                    .fraction(*n, *d)
                    .ok_or_else(|| AlgebraError::InvalidInput(format!("{n}/{d} is not defined in {}", self.field)))?;
                self.scalar(c)
            }
            Expr::Var(v) => {
                if let Some(i) = self.generator_index(v) {
                    self.gen(i)
                } else if let Some(i) = self.base.ring.var_index(v) {
                    self.base_var(i)
                } else {
                    return Err(AlgebraError::InvalidInput(format!("unknown name {v}")));
                }
            }
            Expr::Neg(a) => self.from_expr(a)?.scale(&self.field.from_i64(-1)),
            Expr::Add(a, b) => self.from_expr(a)?.add(&self.from_expr(b)?),
            Expr::Sub(a, b) => self.from_expr(a)?.add(&self.from_expr(b)?.scale(&self.field.from_i64(-1))),
            Expr::Mul(a, b) => self.mul(&self.from_expr(a)?, &self.from_expr(b)?),
            Expr::Pow(a, n) => self.pow(&self.from_expr(a)?, *n),
        })
    }

    pub fn format_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        let bm: Monomial = self.base.ring.monomial(m.base.clone());
        if !bm.is_one() {
            parts.push(self.base.ring.format_monomial(&bm));
        }
        for (i, &e) in m.pos.iter().enumerate() {
            let g = &self.generators[i];
            match (e, g.kind) {
                (0, _) => {}
                (1, _) => parts.push(g.name.clone()),
                (e, GeneratorKind::DividedPower) => parts.push(format!("{}^({e})", g.name)),
                (e, _) => parts.push(format!("{}^{e}", g.name)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in e.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_mono(m);
            if mono == "1" {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }

    /// Homological degree of the top nonzero piece, when the underlying
    /// graded vector space is finite (every even generator nilpotent through
    /// relations and the base Artinian). `None` otherwise.
    pub fn finite_top(&self) -> Option<u32> {
        if self.nbase() > 0 {
            return None;
        }
        let mut top = 0;
        for (i, g) in self.generators.iter().enumerate() {
            let bound = match g.kind {
                GeneratorKind::Exterior => 1,
                _ => self
                    .relations
                    .iter()
                    .filter(|r| r.iter().enumerate().all(|(j, &e)| e == 0 || j == i))
                    .filter_map(|r| r.get(i).copied().filter(|&e| e > 0))
                    .min()?
                    .saturating_sub(1),
            };
            top += bound * g.degree;
        }
        Some(top)
    }
}

impl fmt::Display for DGAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for (g, d) in self.generators.iter().zip(&self.differential) {
            write!(f, "; {}:{} d = {}", g.name, g.degree, self.format(d))?;
        }
        Ok(())
    }
}

/// Memoized bases of bigraded pieces of one algebra.
#[derive(Clone, Debug, Default)]
pub struct Tables {
    ngens: usize,
    bases: HashMap<(u32, u32), Arc<Vec<Mono>>>,
    index: HashMap<(u32, u32), Arc<HashMap<Mono, usize>>>,
    base_monos: HashMap<u32, Vec<Vec<u32>>>,
}

impl Tables {
    pub fn new() -> Tables {
        Tables::default()
    }

    /// Drops cached pieces in homological degree `>= h` (after adjoining
    /// generators of degree `h`).
    pub fn invalidate_from(&mut self, h: u32) {
        self.bases.retain(|k, _| k.0 < h);
        self.index.retain(|k, _| k.0 < h);
    }

    fn sync(&mut self, a: &DGAlgebra) {
        if self.ngens != a.ngens() {
            let lowest = a.generators[self.ngens.min(a.ngens())..]
                .iter()
                .map(|g| g.degree)
                .min()
                .unwrap_or(0);
            if self.ngens > a.ngens() {
                self.bases.clear();
                self.index.clear();
            } else {
                self.invalidate_from(lowest);
            }
            self.ngens = a.ngens();
        }
    }

    fn base_monomials(&mut self, a: &DGAlgebra, w: u32) -> &Vec<Vec<u32>> {
        self.base_monos.entry(w).or_insert_with(|| {
            standard_monomials(&a.base_gb, w).into_iter().map(|m| m.exps().to_vec()).collect()
        })
    }

    pub fn basis(&mut self, a: &DGAlgebra, h: u32, w: u32) -> Arc<Vec<Mono>> {
        self.sync(a);
        if let Some(b) = self.bases.get(&(h, w)) {
            return b.clone();
        }
        let mut positives = Vec::new();
        let mut cur = Vec::new();
        enumerate_positive(a, 0, h, w, &mut cur, &mut positives);
        let mut out = Vec::new();
        for (pos, wpos) in positives {
            for b in self.base_monomials(a, w - wpos).clone() {
                out.push(Mono { base: b, pos: pos.clone() }.trimmed());
            }
        }
        out.sort();
        let idx: HashMap<Mono, usize> = out.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let out = Arc::new(out);
        self.bases.insert((h, w), out.clone());
        self.index.insert((h, w), Arc::new(idx));
        out
    }

    pub fn dim(&mut self, a: &DGAlgebra, h: u32, w: u32) -> usize {
        self.basis(a, h, w).len()
    }

    /// Coordinates of a homogeneous element of bidegree `(h, w)`.
    pub fn coords(&mut self, a: &DGAlgebra, h: u32, w: u32, e: &Element) -> SVec {
        self.basis(a, h, w);
        let idx = self.index[&(h, w)].clone();
        SVec::from_pairs(e.terms.iter().map(|(m, c)| {
            let k = *idx
                .get(m)
                .unwrap_or_else(|| panic!("monomial {} not in piece ({h},{w})", a.format_mono(m)));
            (k, c.clone())
        }))
    }

    pub fn element(&mut self, a: &DGAlgebra, h: u32, w: u32, v: &SVec) -> Element {
        let basis = self.basis(a, h, w);
        let mut e = Element::zero();
        for (k, c) in v.iter() {
            e.add_term(&basis[k], c);
        }
        e
    }

    /// Columns of `d: A_{(h,w)} -> A_{(h-1,w)}`.
    pub fn d_matrix(&mut self, a: &DGAlgebra, h: u32, w: u32) -> Vec<SVec> {
        if h == 0 {
            return vec![SVec::new(); self.dim(a, 0, w)];
        }
        let basis = self.basis(a, h, w);
        basis
            .iter()
            .map(|m| {
                let dm = a.d_mono(m);
                self.coords(a, h - 1, w, &dm)
            })
            .collect()
    }
}

fn enumerate_positive(a: &DGAlgebra, i: usize, h: u32, wmax: u32, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u32)>) {
    if i == a.ngens() {
        if h == 0 && !a.killed_by_relation(cur) {
            let w = cur.iter().zip(&a.generators).map(|(e, g)| e * g.weight).sum();
            if w <= wmax {
                out.push((cur.clone(), w));
            }
        }
        return;
    }
    let g = &a.generators[i];
    let max_e = match g.kind {
        GeneratorKind::Exterior => 1,
        _ => h / g.degree,
    };
    for e in 0..=max_e {
        if e * g.degree > h {
            break;
        }
        cur.push(e);
        enumerate_positive(a, i + 1, h - e * g.degree, wmax, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda_two() -> DGAlgebra {
        let mut a = DGAlgebra::over_field(Field::Rational);
        a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        a.add_generator("y", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        a
    }

    #[test]
    fn exterior_signs() {
        let a = lambda_two();
        let xy = a.mul(&a.gen(0), &a.gen(1));
        let yx = a.mul(&a.gen(1), &a.gen(0));
        assert_eq!(xy, yx.scale(&Field::Rational.from_i64(-1)));
        assert!(a.mul(&a.gen(0), &a.gen(0)).is_zero());
    }

    #[test]
    fn divided_power_products() {
        let mut a = DGAlgebra::over_field(Field::prime(3).unwrap());
        a.add_generator("y", 2, 0, GeneratorKind::DividedPower, Element::zero()).unwrap();
        // y * y = 2 y^(2); y^(2) * y = 3 y^(3) = 0 in characteristic 3
        let yy = a.mul(&a.gen(0), &a.gen(0));
        assert_eq!(yy, a.gen_power(0, 2).scale(&a.field.from_i64(2)));
        assert!(a.mul(&a.gen_power(0, 2), &a.gen(0)).is_zero());
    }

    #[test]
    fn leibniz_and_d_squared() {
        let mut a = DGAlgebra::new(RingPresentation::parse(Field::Rational, &["x"], &["x^2"]).unwrap()).unwrap();
        let x = a.base_var(0);
        let e = a.add_generator("e", 1, 1, GeneratorKind::Exterior, x.clone()).unwrap();
        let ge = a.gen(e);
        a.add_generator("y", 2, 2, GeneratorKind::DividedPower, a.mul(&x, &ge)).unwrap();
        a.check_d_squared().unwrap();
        let y = a.gen(1);
        for (p, q) in [(ge.clone(), y.clone()), (y.clone(), ge.clone()), (y.clone(), y.clone())] {
            let lhs = a.d(&a.mul(&p, &q));
            let sign = if a.degree_of(&p).unwrap().0 % 2 == 1 { -1 } else { 1 };
            let rhs = a.mul(&a.d(&p), &q).add(&a.mul(&p, &a.d(&q)).scale(&a.field.from_i64(sign)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bases_respect_relations() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        a.add_generator("y", 2, 0, GeneratorKind::Polynomial, Element::zero()).unwrap();
        a.add_relation(vec![2]).unwrap();
        let mut t = Tables::new();
        assert_eq!((0..6).map(|h| t.dim(&a, h, 0)).collect::<Vec<_>>(), vec![1, 0, 1, 0, 0, 0]);
        assert_eq!(a.finite_top(), Some(2));
    }

    #[test]
    fn rejects_bad_generators() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        assert!(a.add_generator("x", 2, 0, GeneratorKind::Exterior, Element::zero()).is_err());
        let x = a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let gx = a.gen(x);
        assert!(a.add_generator("y", 3, 0, GeneratorKind::Exterior, gx).is_err());
    }
}
