//! Semifree resolutions of DG algebras under `A`, and DG Tor / Ext.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{DGAlgebra, Element, GeneratorKind, Mono, Tables};
use crate::error::{AlgebraError, Result};
use crate::linalg::{kernel_and_image, rank, Echelon, SVec};
use crate::resolution::{BettiTable, Caps};
use crate::scalar::Scalar;

/// A DG algebra `B` with a DG algebra map `φ: A -> B`; the DG `A`-modules
/// handled here are all of this form.
#[derive(Clone, Debug)]
pub struct AlgebraUnder {
    pub target: DGAlgebra,
    pub base_images: Vec<Element>,
    pub gen_images: Vec<Element>,
}

impl AlgebraUnder {
    pub fn new(a: &DGAlgebra, target: DGAlgebra, base_images: Vec<Element>, gen_images: Vec<Element>) -> Result<AlgebraUnder> {
        if base_images.len() != a.nbase() || gen_images.len() != a.ngens() {
            return Err(AlgebraError::InvalidInput("map must give an image for every variable and generator".into()));
        }
        if a.field != target.field {
            return Err(AlgebraError::CharacteristicMismatch);
        }
        let m = AlgebraUnder {
            target,
            base_images,
            gen_images,
        };
        // degrees and the chain-map condition
        for (i, g) in a.generators.iter().enumerate() {
            let img = &m.gen_images[i];
            if let Some((h, _)) = m.target.degree_of(img) {
                if h != g.degree {
                    return Err(AlgebraError::InvalidInput(format!("image of {} has the wrong degree", g.name)));
                }
            } else if !img.is_zero() {
                return Err(AlgebraError::Inhomogeneous(m.target.format(img)));
            }
            let lhs = m.target.d(img);
            let rhs = m.apply(a, &a.differential[i])?;
            if lhs != rhs {
                return Err(AlgebraError::Differential(format!("the map does not commute with d on {}", g.name)));
            }
        }
        for img in &m.base_images {
            if m.target.degree_of(img).is_some_and(|(h, _)| h != 0) {
                return Err(AlgebraError::InvalidInput("base variables must map to degree zero".into()));
            }
        }
        Ok(m)
    }

    /// `A` as a module over itself.
    pub fn identity(a: &DGAlgebra) -> AlgebraUnder {
        AlgebraUnder {
            target: a.clone(),
            base_images: (0..a.nbase()).map(|v| a.base_var(v)).collect(),
            gen_images: (0..a.ngens()).map(|i| a.gen(i)).collect(),
        }
    }

    /// The residue field through the augmentation.
    pub fn residue_field(a: &DGAlgebra) -> AlgebraUnder {
        AlgebraUnder {
            target: DGAlgebra::over_field(a.field),
            base_images: vec![Element::zero(); a.nbase()],
            gen_images: vec![Element::zero(); a.ngens()],
        }
    }

    fn image_of_power(&self, a: &DGAlgebra, i: usize, e: u32) -> Result<Element> {
        let b = &self.target;
        let img = &self.gen_images[i];
        if a.generators[i].kind != GeneratorKind::DividedPower || e <= 1 {
            return Ok(b.pow(img, e));
        }
        if img.is_zero() {
            return Ok(Element::zero());
        }
        // γ_e(g) -> γ_e(h) when g maps to a divided-power generator h
        if img.terms.len() == 1 {
            let (m, c) = img.terms.iter().next().unwrap();
            let single = m.pos.iter().filter(|&&x| x > 0).count() == 1 && m.base.iter().all(|&x| x == 0);
            if single && c.is_one() {
                let j = m.pos.iter().position(|&x| x == 1);
                if let Some(j) = j {
                    if b.generators[j].kind == GeneratorKind::DividedPower {
                        return Ok(b.gen_power(j, e));
                    }
                }
            }
        }
        if a.field.characteristic() == 0 {
            let mut fact = a.field.one();
            for k in 1..=e {
                fact = &fact * &a.field.from_i64(k as i64);
            }
            return Ok(b.pow(img, e).scale(&fact.inv().unwrap()));
        }
        Err(AlgebraError::Unsupported("divided powers of a general image in positive characteristic".into()))
    }

    pub fn apply_mono(&self, a: &DGAlgebra, m: &Mono) -> Result<Element> {
        let b = &self.target;
        let mut out = b.one();
        for (v, &e) in m.base.iter().enumerate() {
            if e > 0 {
                out = b.mul(&out, &b.pow(&self.base_images[v], e));
            }
        }
        for (i, &e) in m.pos.iter().enumerate() {
            if e > 0 {
                out = b.mul(&out, &self.image_of_power(a, i, e)?);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, a: &DGAlgebra, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in &x.terms {
            out.axpy(c, &self.apply_mono(a, m)?);
        }
        Ok(out)
    }
}

/// Element `Σ c · m · v_i` of a semifree module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModElement {
    pub terms: BTreeMap<(usize, Mono), Scalar>,
}

impl ModElement {
    fn add_term(&mut self, k: (usize, Mono), c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&k) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleGenerator {
    pub degree: u32,
    pub weight: u32,
}

/// `P = A ⊗ V` with a differential and a quasi-isomorphism `P -> B`.
#[derive(Clone, Debug)]
pub struct SemifreeResolution {
    pub base: DGAlgebra,
    pub module: AlgebraUnder,
    pub generators: Vec<ModuleGenerator>,
    pub differential: Vec<ModElement>,
    pub augmentation: Vec<Element>,
    /// Generators are complete through this homological degree.
    pub degree_cap: u32,
    pub weight_cap: u32,
}

struct Builder<'a> {
    a: &'a DGAlgebra,
    ta: Tables,
    tb: Tables,
    res: SemifreeResolution,
}

impl<'a> Builder<'a> {
    fn basis(&mut self, n: u32, w: u32) -> Vec<(usize, Mono)> {
        let mut out = Vec::new();
        for (i, g) in self.res.generators.iter().enumerate() {
            if g.degree <= n && g.weight <= w {
                for m in self.ta.basis(self.a, n - g.degree, w - g.weight).iter() {
                    out.push((i, m.clone()));
                }
            }
        }
        out
    }

    fn d_term(&self, i: usize, m: &Mono) -> ModElement {
        let a = self.a;
        let mut out = ModElement::default();
        for (mm, c) in &a.d_mono(m).terms {
            out.add_term((i, mm.clone()), c);
        }
        let (h, _) = a.mono_degree(m);
        let sign = if h % 2 == 1 { a.field.from_i64(-1) } else { a.field.one() };
        let me = Element::mono(sign, m.clone());
        for ((j, am), c) in &self.res.differential[i].terms {
            let prod = a.mul(&me, &Element::mono(c.clone(), am.clone()));
            for (pm, pc) in &prod.terms {
                out.add_term((*j, pm.clone()), pc);
            }
        }
        out
    }

    fn coords(index: &HashMap<(usize, Mono), usize>, e: &ModElement) -> SVec {
        SVec::from_pairs(e.terms.iter().map(|(k, c)| (index[k], c.clone())))
    }

    fn index(basis: &[(usize, Mono)]) -> HashMap<(usize, Mono), usize> {
        basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()
    }

    /// Columns of `d_P` on `P_{(n,w)}`.
    fn d_matrix(&mut self, n: u32, w: u32) -> Vec<SVec> {
        let basis = self.basis(n, w);
        if n == 0 {
            return vec![SVec::new(); basis.len()];
        }
        let target = Self::index(&self.basis(n - 1, w));
        basis.iter().map(|(i, m)| Self::coords(&target, &self.d_term(*i, m))).collect()
    }

    fn augment(&mut self, n: u32, w: u32, v: &SVec, basis: &[(usize, Mono)]) -> Result<SVec> {
        let b = &self.res.module.target;
        let mut out = Element::zero();
        for (k, c) in v.iter() {
            let (i, m) = &basis[k];
            let img = b.mul(&self.res.module.apply_mono(self.a, m)?, &self.res.augmentation[*i]);
            out.axpy(c, &img);
        }
        Ok(self.tb.coords(b, n, w, &out))
    }

    fn element(&self, v: &SVec, basis: &[(usize, Mono)]) -> ModElement {
        let mut e = ModElement::default();
        for (k, c) in v.iter() {
            e.add_term(basis[k].clone(), c);
        }
        e
    }

    fn add(&mut self, n: u32, w: u32, d: ModElement, eps: Element) {
        self.res.generators.push(ModuleGenerator { degree: n, weight: w });
        self.res.differential.push(d);
        self.res.augmentation.push(eps);
    }

    /// Kills classes of `H_{n-1}(P)_w` that vanish in `H(B)`.
    fn kill_kernel(&mut self, n: u32, w: u32) -> Result<()> {
        let field = self.a.field;
        let b = self.res.module.target.clone();
        let low = self.basis(n - 1, w);
        if low.is_empty() {
            return Ok(());
        }
        let out = self.d_matrix(n - 1, w);
        let (cycles, _) = kernel_and_image(field, &out);
        let mut bounds_p = Echelon::new(field);
        for v in self.d_matrix(n, w) {
            let _ = bounds_p.insert(&v);
        }
        let b_cols = self.tb.d_matrix(&b, n, w);
        let mut bounds_b = Echelon::tracked(field);
        for c in &b_cols {
            let _ = bounds_b.insert(c);
        }
        // ε(z) modulo boundaries of B, as a linear map on the cycle space
        let mut images = Vec::new();
        for z in &cycles {
            let e = self.augment(n - 1, w, z, &low)?;
            images.push(bounds_b.reduce(&e));
        }
        let (ker, _) = kernel_and_image(field, &images);
        for combo in ker {
            let mut z = SVec::new();
            for (j, c) in combo.iter() {
                z.axpy(c, &cycles[j]);
            }
            if bounds_p.insert(&z).is_err() {
                continue;
            }
            let e = self.augment(n - 1, w, &z, &low)?;
            let pre = bounds_b.solve(&e).expect("class maps to a boundary");
            let mut lift = SVec::new();
            for (j, c) in pre.iter() {
                lift.add_at(j, c);
            }
            let eps = self.tb.element(&b, n, w, &lift);
            let d = self.element(&z, &low);
            self.add(n, w, d, eps);
        }
        Ok(())
    }

    /// Adds cycles mapping onto classes of `H_n(B)_w` not yet hit.
    fn hit_homology(&mut self, n: u32, w: u32) -> Result<()> {
        let field = self.a.field;
        let b = self.res.module.target.clone();
        if self.tb.dim(&b, n, w) == 0 {
            return Ok(());
        }
        let mut span = Echelon::new(field);
        for v in self.tb.d_matrix(&b, n + 1, w) {
            let _ = span.insert(&v);
        }
        let here = self.basis(n, w);
        if !here.is_empty() {
            let (cycles, _) = kernel_and_image(field, &self.d_matrix(n, w));
            for z in cycles {
                let e = self.augment(n, w, &z, &here)?;
                let _ = span.insert(&e);
            }
        }
        let zb = super::cycles(&b, &mut self.tb, n, w);
        for z in zb {
            let v = self.tb.coords(&b, n, w, &z);
            if span.insert(&v).is_ok() {
                self.add(n, w, ModElement::default(), z);
            }
        }
        Ok(())
    }
}

fn weight_range(a: &DGAlgebra, b: &DGAlgebra, caps: Caps) -> u32 {
    if a.is_ungraded() && b.is_ungraded() {
        0
    } else {
        caps.internal.max(0) as u32
    }
}

/// Builds `P -> B` with generators through homological degree `degree_cap`.
pub fn semifree_resolution_to(a: &DGAlgebra, m: &AlgebraUnder, degree_cap: u32, caps: Caps) -> Result<SemifreeResolution> {
    a.check_d_squared()?;
    m.target.check_d_squared()?;
    let wmax = weight_range(a, &m.target, caps);
    let mut b = Builder {
        a,
        ta: Tables::new(),
        tb: Tables::new(),
        res: SemifreeResolution {
            base: a.clone(),
            module: m.clone(),
            generators: Vec::new(),
            differential: Vec::new(),
            augmentation: Vec::new(),
            degree_cap,
            weight_cap: wmax,
        },
    };
    for n in 0..=degree_cap {
        for w in 0..=wmax {
            if n > 0 {
                b.kill_kernel(n, w)?;
            }
            b.hit_homology(n, w)?;
        }
    }
    Ok(b.res)
}

/// Resolution complete through degree `caps.homological + 1`.
pub fn semifree_resolution(a: &DGAlgebra, m: &AlgebraUnder, caps: Caps) -> Result<SemifreeResolution> {
    semifree_resolution_to(a, m, caps.homological as u32 + 1, caps)
}

impl SemifreeResolution {
    /// Generator counts per homological degree.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree_cap as usize + 1];
        for g in &self.generators {
            out[g.degree as usize] += 1;
        }
        out
    }

    /// Checks that `H(P) -> H(B)` is an isomorphism through `n_max`.
    pub fn verify_quasi_iso(&self, n_max: u32) -> Result<bool> {
        let a = &self.base;
        let mut b = Builder {
            a,
            ta: Tables::new(),
            tb: Tables::new(),
            res: self.clone(),
        };
        let target = self.module.target.clone();
        for n in 0..=n_max.min(self.degree_cap.saturating_sub(1)) {
            for w in 0..=self.weight_cap {
                let hb = super::homology_dim(&target, &mut b.tb, n, w);
                let basis = b.basis(n, w);
                let outg = b.d_matrix(n, w);
                let inc = b.d_matrix(n + 1, w);
                let hp = basis.len() - if n == 0 { 0 } else { rank(a.field, &outg) } - rank(a.field, &inc);
                if hp != hb {
                    return Ok(false);
                }
                // injectivity: cycles mapping to boundaries are boundaries
                let (cycles, _) = kernel_and_image(a.field, &outg);
                let mut bounds = Echelon::new(a.field);
                for v in b.tb.d_matrix(&target, n + 1, w) {
                    let _ = bounds.insert(&v);
                }
                let mut imgs = Vec::new();
                for z in &cycles {
                    imgs.push(bounds.reduce(&b.augment(n, w, z, &basis)?));
                }
                if rank(a.field, &imgs) != hp {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `Tor^A(K, L)`: homology of `P ⊗_A L` where `P` resolves `K`.
pub fn dg_tor(a: &DGAlgebra, k: &AlgebraUnder, l: &AlgebraUnder, caps: Caps) -> Result<BettiTable> {
    let res = semifree_resolution(a, k, caps)?;
    tor_from_resolution(&res, l, caps)
}

pub fn tor_from_resolution(res: &SemifreeResolution, l: &AlgebraUnder, caps: Caps) -> Result<BettiTable> {
    let a = &res.base;
    let lb = &l.target;
    let field = a.field;
    let mut tl = Tables::new();
    let wmax = res.weight_cap.max(weight_range(a, lb, caps));
    let gens = &res.generators;
    let mut table = BettiTable::new(caps);
    // blocks of C_{(n,w)} = ⊕_i L_{(n - |v_i|, w - w_i)}
    let blocks = |tl: &mut Tables, n: u32, w: u32| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for g in gens {
            let d = if g.degree <= n && g.weight <= w { tl.dim(lb, n - g.degree, w - g.weight) } else { 0 };
            out.push((off, d));
            off += d;
        }
        out
    };
    let boundary = |tl: &mut Tables, n: u32, w: u32| -> Result<Vec<SVec>> {
        let src = blocks(tl, n, w);
        let dst = if n == 0 { Vec::new() } else { blocks(tl, n - 1, w) };
        let mut cols = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if src[i].1 == 0 {
                continue;
            }
            let lbasis = tl.basis(lb, n - g.degree, w - g.weight);
            for lm in lbasis.iter() {
                let lel = Element::mono(field.one(), lm.clone());
                let mut col = SVec::new();
                if n > 0 {
                    for ((j, am), c) in &res.differential[i].terms {
                        let (ha, _) = a.mono_degree(am);
                        let gj = &gens[*j];
                        let sign = if (ha * gj.degree) % 2 == 1 { -c } else { c.clone() };
                        let img = lb.mul(&l.apply_mono(a, am)?, &lel);
                        if img.is_zero() {
                            continue;
                        }
                        let v = tl.coords(lb, n - 1 - gj.degree, w - gj.weight, &img);
                        for (p, x) in v.iter() {
                            col.add_at(dst[*j].0 + p, &(&sign * x));
                        }
                    }
                    let dl = lb.d(&lel);
                    if !dl.is_zero() {
                        let sign = if g.degree % 2 == 1 { field.from_i64(-1) } else { field.one() };
                        let v = tl.coords(lb, n - g.degree - 1, w - g.weight, &dl);
                        for (p, x) in v.iter() {
                            col.add_at(dst[i].0 + p, &(&sign * x));
                        }
                    }
                }
                cols.push(col);
            }
        }
        Ok(cols)
    };
    let n_top = (caps.homological as u32).min(res.degree_cap.saturating_sub(1));
    for n in 0..=n_top {
        for w in 0..=wmax {
            let dim: usize = blocks(&mut tl, n, w).iter().map(|b| b.1).sum();
            if dim == 0 {
                continue;
            }
            let out = if n == 0 { 0 } else { rank(field, &boundary(&mut tl, n, w)?) };
            let inc = rank(field, &boundary(&mut tl, n + 1, w)?);
            table.add(n as i64, w as i64, dim - out - inc);
        }
    }
    table.truncated = n_top < caps.homological as u32 || wmax > 0;
    table.qualifier = table.truncated.then(|| format!("verified through degree {n_top}, internal degree {wmax}"));
    Ok(table)
}

/// Target of a Hom complex: an algebra under `A`, optionally replaced by its
/// quotient `B / (B_{>N} + d B_{N+1})`.
struct HomTarget<'a> {
    m: &'a AlgebraUnder,
    top: Option<u32>,
    t: Tables,
    top_span: Option<Echelon>,
}

impl<'a> HomTarget<'a> {
    fn new(m: &'a AlgebraUnder, top: Option<u32>) -> HomTarget<'a> {
        let mut t = Tables::new();
        let top_span = top.map(|n| {
            let mut e = Echelon::new(m.target.field);
            for v in t.d_matrix(&m.target, n + 1, 0) {
                let _ = e.insert(&v);
            }
            e
        });
        HomTarget { m, top, t, top_span }
    }

    fn b(&self) -> &DGAlgebra {
        &self.m.target
    }

    /// Basis coordinates (in the full piece) of the quotient in degree `h`.
    fn basis(&mut self, h: i64) -> Vec<usize> {
        if h < 0 || self.top.is_some_and(|n| h as u32 > n) {
            return Vec::new();
        }
        let dim = self.t.dim(&self.m.target, h as u32, 0);
        match (&self.top_span, self.top) {
            (Some(e), Some(n)) if h as u32 == n => (0..dim).filter(|k| !e.is_pivot(*k)).collect(),
            _ => (0..dim).collect(),
        }
    }

    fn reduce(&self, h: i64, v: SVec) -> SVec {
        match (&self.top_span, self.top) {
            (_, Some(n)) if h as u32 > n => SVec::new(),
            (Some(e), Some(n)) if h as u32 == n => e.reduce(&v),
            _ => v,
        }
    }

    fn to_coords(&mut self, h: i64, e: &Element) -> SVec {
        if h < 0 || self.top.is_some_and(|n| h as u32 > n) {
            return SVec::new();
        }
        let b = self.m.target.clone();
        let v = self.t.coords(&b, h as u32, 0, e);
        self.reduce(h, v)
    }

    fn element(&mut self, h: i64, v: &SVec) -> Element {
        let b = self.m.target.clone();
        self.t.element(&b, h as u32, 0, v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtWindow {
    /// `(i, dim Ext^i)` for cohomological degrees `i` in the window.
    pub dims: Vec<(i64, usize)>,
    pub window: (i64, i64),
    pub settled: bool,
    pub qualifier: Option<String>,
}

impl ExtWindow {
    pub fn total(&self) -> usize {
        self.dims.iter().map(|d| d.1).sum()
    }

    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.dims.iter().copied().filter(|d| d.1 > 0).collect()
    }

    pub fn get(&self, i: i64) -> usize {
        self.dims.iter().find(|d| d.0 == i).map(|d| d.1).unwrap_or(0)
    }
}

/// Largest `n <= cap` with `H_n(A) != 0`, and whether `H` vanishes above it
/// through the cap.
pub fn homology_top(a: &DGAlgebra, cap: u32) -> (u32, bool) {
    let mut t = Tables::new();
    let mut top = 0;
    for n in 0..=cap {
        if super::homology_dim(a, &mut t, n, 0) > 0 {
            top = n;
        }
    }
    (top, top < cap)
}

/// `dim Ext^i_A(k, A)` for `i` in `window` (cohomological degrees; a class
/// of `Ext^i` is represented by a map lowering degree by `i`).
pub fn dg_ext(a: &DGAlgebra, window: (i64, i64), caps: Caps) -> Result<ExtWindow> {
    if !a.is_ungraded() {
        return Err(AlgebraError::Unsupported("DG Ext is computed for algebras without internal grading".into()));
    }
    let n = AlgebraUnder::identity(a);
    dg_ext_into(a, &n, window, caps)
}

pub fn dg_ext_into(a: &DGAlgebra, n: &AlgebraUnder, window: (i64, i64), caps: Caps) -> Result<ExtWindow> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(AlgebraError::InvalidInput("empty window".into()));
    }
    let field = a.field;
    // a finite model of the target when its homology is bounded
    let finite = n.target.finite_top();
    let (htop, bounded) = homology_top(&n.target, caps.homological as u32);
    let top = match finite {
        Some(t) => Some(t),
        None if bounded => Some(htop),
        None => None,
    };
    let deg_cap = match top {
        Some(t) => (t as i64 + hi + 1).max(1) as u32,
        None => caps.homological as u32 + 1,
    };
    let res = semifree_resolution_to(a, &AlgebraUnder::residue_field(a), deg_cap, caps)?;
    let mut target = HomTarget::new(n, if finite.is_some() { None } else { top });
    let gens = res.generators.clone();
    // Hom_s = ⊕_i N_{|v_i| + s}
    let blocks = |target: &mut HomTarget, s: i64| -> Vec<(usize, Vec<usize>)> {
        let mut off = 0;
        gens.iter()
            .map(|g| {
                let b = target.basis(g.degree as i64 + s);
                let o = off;
                off += b.len();
                (o, b)
            })
            .collect()
    };
    let coboundary = |target: &mut HomTarget, s: i64| -> Result<Vec<SVec>> {
        let src = blocks(target, s);
        let dst = blocks(target, s - 1);
        let sign_s = if s.rem_euclid(2) == 1 { field.from_i64(-1) } else { field.one() };
        let b = target.b().clone();
        let mut cols = Vec::new();
        for (k, (_, basis)) in src.iter().enumerate() {
            for &p in basis {
                let hk = gens[k].degree as i64 + s;
                let f_vk = target.element(hk, &SVec::unit(p, field));
                let mut col = SVec::new();
                // d_N(f(v_k)) lands in block k
                if hk > 0 {
                    let dv = b.d(&f_vk);
                    let v = target.to_coords(hk - 1, &dv);
                    for (q, c) in v.iter() {
                        let pos = dst[k].1.iter().position(|&x| x == q).expect("reduced coordinate");
                        col.add_at(dst[k].0 + pos, c);
                    }
                }
                // -(-1)^s f(d v_i) for each v_i whose differential involves v_k
                for (i, dvi) in res.differential.iter().enumerate() {
                    for ((j, am), c) in &dvi.terms {
                        if *j != k {
                            continue;
                        }
                        let (ha, _) = a.mono_degree(am);
                        let mut coef = -&(&sign_s * c);
                        if (s * ha as i64).rem_euclid(2) == 1 {
                            coef = -&coef;
                        }
                        let img = b.mul(&n.apply_mono(a, am)?, &f_vk);
                        let hi_deg = gens[i].degree as i64 + s - 1;
                        let v = target.to_coords(hi_deg, &img);
                        for (q, x) in v.iter() {
                            let pos = dst[i].1.iter().position(|&y| y == q).expect("reduced coordinate");
                            col.add_at(dst[i].0 + pos, &(&coef * x));
                        }
                    }
                }
                cols.push(col);
            }
        }
        Ok(cols)
    };
    let mut dims = Vec::new();
    for i in lo..=hi {
        let s = -i;
        let dim: usize = blocks(&mut target, s).iter().map(|b| b.1.len()).sum();
        if dim == 0 {
            dims.push((i, 0));
            continue;
        }
        let out = rank(field, &coboundary(&mut target, s)?);
        let inc = rank(field, &coboundary(&mut target, s + 1)?);
        dims.push((i, dim - out - inc));
    }
    let settled = top.is_some();
    Ok(ExtWindow {
        dims,
        window,
        settled,
        qualifier: (!settled).then(|| format!("verified through resolution degree {deg_cap}")),
    })
}
