use serde::Serialize;

use super::{dg_ext, dg_homology, dg_tor, AlgebraUnder, DGAlgebra, Element, ExtWindow, GeneratorKind, Tables};
use crate::error::{AlgebraError, Result};
use crate::poly::RingPresentation;
use crate::resolution::{BettiTable, Caps};
use crate::scalar::Field;

/// `A⟨z⟩` with `dz = φ(x)` for a cycle `φ(x)` of degree `n`: a model of
/// `A ⊗^L_{ℓ[x]} ℓ`.
pub fn homotopy_fiber(a: &DGAlgebra, image: &Element, name: &str) -> Result<DGAlgebra> {
    let (n, w) = match a.degree_of(image) {
        Some(d) => d,
        None if image.is_zero() => {
            return Err(AlgebraError::InvalidInput("a zero image needs an explicit degree; use homotopy_fiber_of_degree".into()))
        }
        None => return Err(AlgebraError::Inhomogeneous(a.format(image))),
    };
    homotopy_fiber_of_degree(a, image, n, w, name)
}

pub fn homotopy_fiber_of_degree(a: &DGAlgebra, image: &Element, n: u32, w: u32, name: &str) -> Result<DGAlgebra> {
    if n == 0 {
        return Err(AlgebraError::InvalidInput("the distinguished generator must have positive degree".into()));
    }
    if !a.d(image).is_zero() {
        return Err(AlgebraError::NotACycle(a.format(image)));
    }
    let mut f = a.clone();
    let kind = if (n + 1) % 2 == 1 { GeneratorKind::Exterior } else { GeneratorKind::DividedPower };
    f.add_generator(name, n + 1, w, kind, image.clone())?;
    Ok(f)
}

/// `S_ℓ(n)`: the free algebra on one generator of degree `n`, zero differential.
pub fn free_on_one(field: Field, n: u32) -> DGAlgebra {
    let mut s = DGAlgebra::over_field(field);
    let kind = if n % 2 == 1 { GeneratorKind::Exterior } else { GeneratorKind::Polynomial };
    s.add_generator("x", n, 0, kind, Element::zero()).expect("valid generator");
    s
}

/// `ℓ[x]/(x^k)` with `|x| = n` (even), as an algebra under `ℓ[x]`.
pub fn truncated_polynomial(field: Field, n: u32, k: u32) -> Result<(DGAlgebra, AlgebraUnder)> {
    if n % 2 == 1 || n == 0 || k == 0 {
        return Err(AlgebraError::InvalidInput("truncations need an even positive degree and k >= 1".into()));
    }
    let s = free_on_one(field, n);
    let mut l = free_on_one(field, n);
    l.add_relation(vec![k])?;
    let image = l.gen(0);
    let under = AlgebraUnder::new(&s, l, Vec::new(), vec![image])?;
    Ok((s, under))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtFactorizationReport {
    pub lhs: Vec<(i64, usize)>,
    pub rhs: Vec<(i64, usize)>,
    pub equal: bool,
    pub window: (i64, i64),
    pub qualifier: Option<String>,
}

/// Compares `Ext_A(ℓ, A)` with `Ext_S(ℓ, S) ⊗ Ext_F(ℓ, F)` as graded
/// dimensions over `window`, where `S = S_ℓ(n)` maps to `A` by `x -> image`.
pub fn ext_factorization_check(a: &DGAlgebra, image: &Element, window: (i64, i64), caps: Caps) -> Result<ExtFactorizationReport> {
    let (n, _) = a
        .degree_of(image)
        .ok_or_else(|| AlgebraError::InvalidInput("the image must be a nonzero homogeneous cycle".into()))?;
    if a.field.characteristic() != 0 && n != 1 {
        return Err(AlgebraError::Uncertified("the factorization needs characteristic zero or n = 1".into()));
    }
    let h = dg_homology(a, caps)?;
    let top = h.entries.keys().map(|k| k.0).max().unwrap_or(0);
    if top >= caps.homological as i64 {
        return Err(AlgebraError::Uncertified("H(A) is not finite within the cap".into()));
    }
    let f = homotopy_fiber(a, image, "z")?;
    let s = free_on_one(a.field, n);
    let wide = (-(2 * caps.homological as i64), 2 * caps.homological as i64);
    let es = dg_ext(&s, wide, caps)?;
    let lhs = dg_ext(a, window, caps)?;
    let shifts: Vec<(i64, usize)> = es.nonzero();
    let lo = shifts.iter().map(|(i, _)| window.0 - i).min().unwrap_or(window.0);
    let hi = shifts.iter().map(|(i, _)| window.1 - i).max().unwrap_or(window.1);
    let ef = dg_ext(&f, (lo, hi), caps)?;
    let mut rhs = Vec::new();
    for i in window.0..=window.1 {
        let d: usize = shifts.iter().map(|(a_deg, da)| da * ef.get(i - a_deg)).sum();
        rhs.push((i, d));
    }
    let qualifier = [&es, &lhs, &ef]
        .iter()
        .filter_map(|e: &&ExtWindow| e.qualifier.clone())
        .next();
    Ok(ExtFactorizationReport {
        equal: lhs.dims == rhs,
        lhs: lhs.dims,
        rhs,
        window,
        qualifier,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationTorReport {
    pub tor: Vec<usize>,
    pub expected: Vec<usize>,
    pub equal: bool,
}

/// `Tor^{ℓ[x]}(ℓ[x]/(x^k), A)` against `H(A) ⊕ Σ^{nk+1} H(A)` through the cap.
pub fn truncation_tor_check(a_under: &AlgebraUnder, n: u32, k: u32, caps: Caps) -> Result<TruncationTorReport> {
    let field = a_under.target.field;
    let (s, lk) = truncated_polynomial(field, n, k)?;
    let tor = dg_tor(&s, &lk, a_under, caps)?;
    let h = dg_homology(&a_under.target, caps)?;
    let cap = caps.homological as i64;
    let shift = (n * k + 1) as i64;
    let tor: Vec<usize> = tor.totals(0..=cap);
    let expected: Vec<usize> = (0..=cap)
        .map(|d| h.total(d) + if d >= shift { h.total(d - shift) } else { 0 })
        .collect();
    Ok(TruncationTorReport {
        equal: tor == expected,
        tor,
        expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    pub e2_totals: Vec<usize>,
    pub tor_totals: Vec<usize>,
    pub degenerate_at_2: bool,
    pub e2: BettiTable,
    pub qualifier: Option<String>,
}

/// `E²_{p,q,w} = Tor_p^{R0}(H_q(A), k)_w` for `A` over its base ring `R0`,
/// computed with the acyclic closure `T` of `k` over `R0` as
/// `H_p(H_q(A) ⊗_{R0} T)`. Entries are keyed by `(p, q)` summed over `w`
/// and by `(p + q, w)` for the comparison.
pub fn kunneth_e2_dg(a: &DGAlgebra, caps: Caps) -> Result<(BettiTable, BettiTable)> {
    kunneth_e2_over(&a.base, a, caps)
}

/// Same with `R0` any ring on the variables of `A`'s base that surjects onto it.
pub fn kunneth_e2_over(r0: &RingPresentation, a: &DGAlgebra, caps: Caps) -> Result<(BettiTable, BettiTable)> {
    require_quotient_of(r0, &a.base)?;
    let (t, _) = super::tate_closure(r0, caps)?;
    let field = a.field;
    let mut ta = Tables::new();
    let mut tt = Tables::new();
    let wmax = caps.internal.max(0) as u32;
    let mut by_pq = BettiTable::new(caps);
    let mut by_nw = BettiTable::new(caps);
    for q in 0..=caps.homological as u32 {
        // H_q(A) degreewise: basis reps and reduction modulo boundaries
        let hq = HomologyModule::new(a, &mut ta, q, wmax);
        if hq.dims.iter().all(|&d| d == 0) {
            continue;
        }
        for p in 0..=(caps.homological as u32 - q) {
            for w in 0..=wmax {
                let dim = |tt: &mut Tables, p: u32, w: u32| -> usize {
                    (0..=w).map(|wt| tt_dim_pos(&t, tt, p, wt) * hq.dim(w - wt)).sum()
                };
                let total = dim(&mut tt, p, w);
                if total == 0 {
                    continue;
                }
                let out = if p == 0 { 0 } else { crate::linalg::rank(field, &hq.tensor_d(a, &t, &mut ta, &mut tt, p, w)) };
                let inc = crate::linalg::rank(field, &hq.tensor_d(a, &t, &mut ta, &mut tt, p + 1, w));
                let e = total - out - inc;
                by_pq.add(p as i64, q as i64, e);
                by_nw.add((p + q) as i64, w as i64, e);
            }
        }
    }
    by_pq.truncated = true;
    by_pq.qualifier = Some(format!("verified to internal degree {}", caps.internal));
    Ok((by_pq, by_nw))
}

fn require_quotient_of(r0: &RingPresentation, base: &RingPresentation) -> Result<()> {
    if *r0.ring != *base.ring {
        return Err(AlgebraError::RingMismatch);
    }
    let gb = crate::groebner::groebner_of(base)?;
    match r0.ideal.iter().find(|f| !gb.contains(f)) {
        Some(f) => Err(AlgebraError::InvalidInput(format!("{f} does not vanish on the base ring of the algebra"))),
        None => Ok(()),
    }
}

/// Basis monomials of `T` that are free of base variables, in bidegree `(p, w)`.
fn tate_free_basis(t: &DGAlgebra, tt: &mut Tables, p: u32, w: u32) -> Vec<super::Mono> {
    tt.basis(t, p, w).iter().filter(|m| m.base.iter().all(|&e| e == 0)).cloned().collect()
}

fn tt_dim_pos(t: &DGAlgebra, tt: &mut Tables, p: u32, w: u32) -> usize {
    tate_free_basis(t, tt, p, w).len()
}

/// `H_q(A)` as a graded module over the base ring, one internal degree at a time.
struct HomologyModule {
    q: u32,
    dims: Vec<usize>,
    /// boundaries echelon and class representatives per internal degree
    bounds: Vec<crate::linalg::Echelon>,
    reps: Vec<Vec<crate::linalg::SVec>>,
}

impl HomologyModule {
    fn new(a: &DGAlgebra, ta: &mut Tables, q: u32, wmax: u32) -> HomologyModule {
        let field = a.field;
        let mut dims = Vec::new();
        let mut bounds = Vec::new();
        let mut reps = Vec::new();
        for w in 0..=wmax {
            let mut e = crate::linalg::Echelon::new(field);
            for v in ta.d_matrix(a, q + 1, w) {
                let _ = e.insert(&v);
            }
            let outgoing = if q == 0 { vec![crate::linalg::SVec::new(); ta.dim(a, 0, w)] } else { ta.d_matrix(a, q, w) };
            let (cycles, _) = crate::linalg::kernel_and_image(field, &outgoing);
            let mut span = e.clone();
            let mut r = Vec::new();
            for z in cycles {
                let red = e.reduce(&z);
                if span.insert(&red).is_ok() {
                    r.push(red);
                }
            }
            dims.push(r.len());
            bounds.push(e);
            reps.push(r);
        }
        HomologyModule { q, dims, bounds, reps }
    }

    fn dim(&self, w: u32) -> usize {
        self.dims.get(w as usize).copied().unwrap_or(0)
    }

    /// Coordinates of a cycle class in the representative basis.
    fn class_coords(&self, field: Field, w: u32, v: &crate::linalg::SVec) -> crate::linalg::SVec {
        let mut e = crate::linalg::Echelon::tracked(field);
        for r in &self.reps[w as usize] {
            let _ = e.insert(r);
        }
        let red = self.bounds[w as usize].reduce(v);
        e.solve(&red).expect("cycle class lies in the span of representatives")
    }

    /// Columns of the differential of `H_q(A) ⊗_{R0} T` from `(p, w)` to `(p-1, w)`.
    fn tensor_d(&self, a: &DGAlgebra, t: &DGAlgebra, ta: &mut Tables, tt: &mut Tables, p: u32, w: u32) -> Vec<crate::linalg::SVec> {
        let field = a.field;
        let blocks = |tt: &mut Tables, p: u32| -> Vec<(u32, super::Mono, usize)> {
            let mut out = Vec::new();
            for wt in 0..=w {
                for m in tate_free_basis(t, tt, p, wt) {
                    out.push((wt, m, self.dim(w - wt)));
                }
            }
            out
        };
        let src = blocks(tt, p);
        let dst = if p == 0 { Vec::new() } else { blocks(tt, p - 1) };
        let mut offsets = std::collections::HashMap::new();
        let mut off = 0;
        for (wt, m, d) in &dst {
            offsets.insert((m.clone(), *wt), off);
            off += d;
        }
        let mut cols = Vec::new();
        for (wt, tau, d) in &src {
            let hw = w - wt;
            for j in 0..*d {
                let mut col = crate::linalg::SVec::new();
                if p > 0 {
                    let rep = &self.reps[hw as usize][j];
                    let rep_el = ta.element(a, self.q, hw, rep);
                    for (m, c) in &t.d_mono(tau).terms {
                        // split m = (base part) * (free part)
                        let free = super::Mono {
                            base: vec![0; m.base.len()],
                            pos: m.pos.clone(),
                        };
                        let (_, wfree) = t.mono_degree(&free);
                        let base_el = Element::mono(
                            c.clone(),
                            super::Mono {
                                base: m.base.clone(),
                                pos: Vec::new(),
                            },
                        );
                        let prod = a.mul(&base_el, &rep_el);
                        let tw = w - wfree;
                        if prod.is_zero() {
                            continue;
                        }
                        let v = ta.coords(a, self.q, tw, &prod);
                        let cc = self.class_coords(field, tw, &v);
                        let o = offsets[&(free, wfree)];
                        for (k, x) in cc.iter() {
                            col.add_at(o + k, x);
                        }
                    }
                }
                cols.push(col);
            }
        }
        cols
    }
}

/// Compares E² totals with `Tor^{R0}(A, k)` for each total degree.
pub fn degeneracy_probe(a: &DGAlgebra, caps: Caps) -> Result<DegeneracyReport> {
    degeneracy_probe_over(&a.base, a, caps)
}

/// `degeneracy_probe` with `A` viewed over `R0`, where `A`'s base is a quotient of `R0`.
pub fn degeneracy_probe_over(r0: &RingPresentation, a: &DGAlgebra, caps: Caps) -> Result<DegeneracyReport> {
    let (e2, e2_nw) = kunneth_e2_over(r0, a, caps)?;
    let r0 = DGAlgebra::new(r0.clone())?;
    let a_under = AlgebraUnder::new(
        &r0,
        a.clone(),
        (0..a.nbase()).map(|v| a.base_var(v)).collect(),
        Vec::new(),
    )?;
    let tor = dg_tor(&r0, &a_under, &AlgebraUnder::residue_field(&r0), caps)?;
    let cap = caps.homological as i64;
    let e2_totals = e2_nw.totals(0..=cap);
    let tor_totals = tor.totals(0..=cap);
    Ok(DegeneracyReport {
        degenerate_at_2: e2_nw.entries == tor.entries,
        e2_totals,
        tor_totals,
        e2,
        qualifier: tor.qualifier.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps(h: usize) -> Caps {
        Caps::new(h as i64, 24).unwrap()
    }

    fn dual_numbers_deg2() -> DGAlgebra {
        let mut a = DGAlgebra::over_field(Field::Rational);
        a.add_generator("y", 2, 0, GeneratorKind::Polynomial, Element::zero()).unwrap();
        a.add_relation(vec![2]).unwrap();
        a
    }

    #[test]
    fn fibers() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        let x = a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        a.add_generator("y", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let f = homotopy_fiber(&a, &a.gen(x), "z").unwrap();
        assert_eq!(dg_homology(&f, caps(6)).unwrap().totals(0..=6), vec![1, 1, 0, 0, 0, 0, 0]);

        let b = dual_numbers_deg2();
        let f = homotopy_fiber(&b, &b.gen(0), "z").unwrap();
        assert_eq!(dg_homology(&f, caps(6)).unwrap().totals(0..=6), vec![1, 0, 0, 0, 0, 1, 0]);

        let mut c = DGAlgebra::over_field(Field::Rational);
        c.add_generator("u", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let u = c.gen(0);
        c.add_generator("v", 2, 0, GeneratorKind::Polynomial, u).unwrap();
        assert!(homotopy_fiber(&c, &c.gen(1), "z").is_err());
    }

    #[test]
    fn factorization_examples() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        let x = a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        a.add_generator("y", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let r = ext_factorization_check(&a, &a.gen(x), (-24, 0), caps(12)).unwrap();
        assert!(r.equal, "{r:?}");
        assert_eq!(r.lhs.iter().map(|d| d.1).sum::<usize>(), 1);

        let b = dual_numbers_deg2();
        let r = ext_factorization_check(&b, &b.gen(0), (-24, 0), caps(12)).unwrap();
        assert!(r.equal, "{r:?}");

        let f2 = Field::prime(2).unwrap();
        let mut c = DGAlgebra::over_field(f2);
        let x = c.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        c.add_generator("y", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let r = ext_factorization_check(&c, &c.gen(x), (-24, 0), caps(12)).unwrap();
        assert!(r.equal, "{r:?}");
    }

    #[test]
    fn truncation_shape() {
        let b = dual_numbers_deg2();
        let s = free_on_one(Field::Rational, 2);
        let under = AlgebraUnder::new(&s, b.clone(), Vec::new(), vec![b.gen(0)]).unwrap();
        let r = truncation_tor_check(&under, 2, 3, caps(12)).unwrap();
        assert!(r.equal, "{r:?}");
        assert_eq!(r.tor[7], 1);
    }

    #[test]
    fn degeneracy_examples() {
        let r0 = RingPresentation::parse(Field::Rational, &["x"], &[]).unwrap();
        let a = DGAlgebra::new(r0.clone()).unwrap();
        let r = degeneracy_probe(&a, Caps::new(3, 8).unwrap()).unwrap();
        assert!(r.degenerate_at_2);
        let k = super::super::koszul_complex(&r0, &[crate::poly::Polynomial::parse(&r0.ring, "x").unwrap()]).unwrap();
        let r = degeneracy_probe(&k, Caps::new(3, 8).unwrap()).unwrap();
        assert!(r.degenerate_at_2, "{r:?}");
        assert_eq!(r.e2_totals[..2], [1, 1]);
    }
}
