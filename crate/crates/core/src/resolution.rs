//! Minimal graded free resolutions over `Q = P / I`, and the Tor, Ext,
//! depth and Künneth computations built from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::graded::{GradedFree, GradedModule, ModulePresentation, QuotientRing};
use crate::groebner::{krull_dimension, FreeModuleVector};
use crate::linalg::{kernel_and_image, rank, Echelon, SVec};
use crate::poly::RingPresentation;

pub const DEFAULT_HOMOLOGICAL_CAP: usize = 12;
pub const DEFAULT_INTERNAL_CAP: i32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub homological: usize,
    pub internal: i32,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            homological: DEFAULT_HOMOLOGICAL_CAP,
            internal: DEFAULT_INTERNAL_CAP,
        }
    }
}

impl Caps {
    pub fn new(homological: i64, internal: i64) -> Result<Caps> {
        if homological < 0 || internal < 0 {
            return Err(AlgebraError::NegativeCap);
        }
        Ok(Caps {
            homological: homological as usize,
            internal: internal as i32,
        })
    }
}

/// Graded dimensions indexed by (homological degree, internal degree).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(i64, i64), usize>,
    pub homological_cap: usize,
    pub internal_cap: i64,
    /// Set when some entries may change above the caps.
    pub truncated: bool,
    pub qualifier: Option<String>,
}

impl BettiTable {
    pub fn new(caps: Caps) -> BettiTable {
        BettiTable {
            homological_cap: caps.homological,
            internal_cap: caps.internal as i64,
            ..BettiTable::default()
        }
    }

    pub fn add(&mut self, s: i64, j: i64, n: usize) {
        if n > 0 {
            *self.entries.entry((s, j)).or_default() += n;
        }
    }

    pub fn get(&self, s: i64, j: i64) -> usize {
        self.entries.get(&(s, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, s: i64) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == s).map(|(_, n)| n).sum()
    }

    pub fn totals(&self, range: std::ops::RangeInclusive<i64>) -> Vec<usize> {
        range.map(|s| self.total(s)).collect()
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<[i64; 3]> = self.entries.iter().map(|((s, j), n)| [*s, *j, *n as i64]).collect();
        let mut st = serializer.serialize_struct("BettiTable", 5)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("homological_cap", &self.homological_cap)?;
        st.serialize_field("internal_cap", &self.internal_cap)?;
        st.serialize_field("truncated", &self.truncated)?;
        st.serialize_field("qualifier", &self.qualifier)?;
        st.end()
    }
}

/// A graded free resolution `F_cap -> ... -> F_0 -> M`.
#[derive(Clone, Debug)]
pub struct ChainComplexOfFree {
    pub base: RingPresentation,
    /// Internal degrees of the basis of each `F_s`.
    pub shifts: Vec<Vec<i32>>,
    /// `differentials[s][i]` is the image of the `i`-th basis element of
    /// `F_s` in `F_{s-1}`; `differentials[0]` is empty.
    pub differentials: Vec<Vec<FreeModuleVector>>,
    pub caps: Caps,
    pub(crate) ring: Arc<QuotientRing>,
    pub(crate) frees: Vec<GradedFree>,
    /// Images of basis elements as coordinate vectors, with degrees.
    pub(crate) images: Vec<Vec<(i32, SVec)>>,
    pub(crate) module: GradedModule,
}

impl ChainComplexOfFree {
    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new(self.caps);
        for (s, shifts) in self.shifts.iter().enumerate() {
            for &a in shifts {
                t.add(s as i64, a as i64, 1);
            }
        }
        t.truncated = true;
        t.qualifier = Some(format!("verified to internal degree {}", self.caps.internal));
        t
    }

    /// Checks `d_{s-1} d_s = 0` (and `F_1 -> F_0 -> M` composing to zero)
    /// on every basis element.
    pub fn composes_to_zero(&self) -> bool {
        for s in 1..self.images.len() {
            for (d, v) in &self.images[s] {
                if !self.apply(s - 1, *d, v).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Applies the map out of `F_s` (the augmentation for `s = 0`).
    fn apply(&self, s: usize, d: i32, v: &SVec) -> SVec {
        let free = &self.frees[s];
        let mut out = SVec::new();
        for (k, c) in v.iter() {
            let (i, j) = free.locate(d, k);
            let (a, img) = &self.images[s][i];
            let m = &self.ring.basis((d - a) as u32)[j];
            let prod = if s == 0 {
                self.module.mul_monomial(m, *a, img)
            } else {
                self.frees[s - 1].mul_monomial(m, *a, img)
            };
            out.axpy(c, &prod);
        }
        if s == 0 {
            self.module.reduce(d, &out)
        } else {
            out
        }
    }

    /// Every differential entry lies in the maximal graded ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|col| {
            col.iter()
                .all(|v| v.coords.iter().all(|c| c.constant_coefficient().is_zero()))
        })
    }
}

/// Minimal generators of the degreewise kernel of `phi: F -> T`, where
/// basis element `i` of `F` maps to `images[i]` in `T`.
fn minimal_kernel_generators(
    free: &GradedFree,
    images: &[(i32, SVec)],
    target: &GradedModule,
    max_degree: i32,
) -> Vec<(i32, SVec)> {
    let field = free.ring.field();
    let ring = &free.ring;
    let mut gens: Vec<(i32, SVec)> = Vec::new();
    let lo = free.shifts.iter().copied().min().unwrap_or(0);
    for d in lo..=max_degree {
        let n = free.dim(d);
        if n == 0 {
            continue;
        }
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let (i, j) = free.locate(d, k);
            let (a, img) = &images[i];
            let m = &ring.basis((d - a) as u32)[j];
            cols.push(target.mul_monomial(m, *a, img));
        }
        let (kernel, _) = kernel_and_image(field, &cols);
        if kernel.is_empty() {
            continue;
        }
        let mut span = Echelon::new(field);
        for (b, g) in &gens {
            for v in free.multiples(g, *b, d) {
                let _ = span.insert(&v);
            }
        }
        for z in kernel {
            if span.insert(&z).is_ok() {
                gens.push((d, z));
            }
        }
    }
    gens
}

/// Minimal generators of a module `M`, as coordinate vectors in its cover.
fn minimal_module_generators(m: &GradedModule, max_degree: i32) -> Vec<(i32, SVec)> {
    let field = m.ring().field();
    let mut gens: Vec<(i32, SVec)> = Vec::new();
    for d in m.min_degree()..=max_degree {
        let basis = m.basis(d);
        if basis.is_empty() {
            continue;
        }
        let mut span = Echelon::new(field);
        for (b, g) in &gens {
            for v in m.free.multiples(g, *b, d) {
                let _ = span.insert(&m.reduce(d, &v));
            }
        }
        for k in basis {
            let e = SVec::unit(k, field);
            if span.insert(&e).is_ok() {
                gens.push((d, e));
            }
        }
    }
    gens
}

/// Minimal graded free resolution of `M` through homological degree
/// `caps.homological`, with generators found through internal degree
/// `caps.internal`.
pub fn minimal_free_resolution(q: &RingPresentation, m: &ModulePresentation, caps: Caps) -> Result<ChainComplexOfFree> {
    let ring = QuotientRing::new(q, caps.internal.max(0) as u32)?;
    resolve_over(&ring, m, caps)
}

pub(crate) fn resolve_over(ring: &Arc<QuotientRing>, m: &ModulePresentation, caps: Caps) -> Result<ChainComplexOfFree> {
    let module = GradedModule::new(ring, m, caps.internal)?;
    let d_max = caps.internal;
    let gens0 = minimal_module_generators(&module, d_max);
    let mut frees = vec![GradedFree::new(ring, gens0.iter().map(|g| g.0).collect())];
    let mut images = vec![gens0];
    for s in 1..=caps.homological {
        let prev = &frees[s - 1];
        let target = if s == 1 {
            module.clone()
        } else {
            GradedModule::new(ring, &ModulePresentation::free(frees[s - 2].shifts.clone()), d_max)?
        };
        let next = minimal_kernel_generators(prev, &images[s - 1], &target, d_max);
        frees.push(GradedFree::new(ring, next.iter().map(|g| g.0).collect()));
        images.push(next);
    }
    let shifts = frees.iter().map(|f| f.shifts.clone()).collect();
    let mut differentials = vec![Vec::new()];
    for s in 1..frees.len() {
        differentials.push(images[s].iter().map(|(d, v)| frees[s - 1].to_vector(*d, v)).collect());
    }
    Ok(ChainComplexOfFree {
        base: ring.pres.clone(),
        shifts,
        differentials,
        caps,
        ring: ring.clone(),
        frees,
        images,
        module,
    })
}

/// Dimensions of `Tor_s^Q(M, N)_j`, from `F ⊗ N` where `F` resolves `M`.
pub fn tor_modules(q: &RingPresentation, m: &ModulePresentation, n: &ModulePresentation, caps: Caps) -> Result<BettiTable> {
    let ring = QuotientRing::new(q, caps.internal.max(0) as u32)?;
    let ext_caps = Caps {
        homological: caps.homological + 1,
        ..caps
    };
    let res = resolve_over(&ring, m, ext_caps)?;
    let nmod = GradedModule::new(&ring, n, caps.internal)?;
    let field = ring.field();
    let mut table = BettiTable::new(caps);
    let lo = res.shifts.iter().flatten().copied().min().unwrap_or(0) + nmod.min_degree();
    for j in lo..=caps.internal {
        // block offsets of C_{s,j} = ⊕_i N_{j - a_i}
        let dims = |s: usize| -> Vec<usize> { res.shifts[s].iter().map(|&a| nmod.dim(j - a)).collect() };
        let boundary = |s: usize| -> Vec<SVec> {
            // ∂: C_{s,j} -> C_{s-1,j}
            let target_dims = dims(s - 1);
            let offsets: Vec<usize> = target_dims
                .iter()
                .scan(0, |acc, &x| {
                    let o = *acc;
                    *acc += x;
                    Some(o)
                })
                .collect();
            let mut cols = Vec::new();
            for (i, &a) in res.shifts[s].iter().enumerate() {
                let basis = nmod.basis(j - a);
                for &b in &basis {
                    let unit = SVec::unit(b, field);
                    let mut col = SVec::new();
                    for (k, f) in res.differentials[s][i].coords.iter().enumerate() {
                        if f.is_zero() {
                            continue;
                        }
                        let img = nmod.mul_poly(f, j - a, &unit);
                        let ak = res.shifts[s - 1][k];
                        for (p, c) in nmod.basis_coords(j - ak, &img).iter() {
                            col.add_at(offsets[k] + p, c);
                        }
                    }
                    cols.push(col);
                }
            }
            cols
        };
        for s in 0..=caps.homological {
            let dim_c: usize = dims(s).iter().sum();
            if dim_c == 0 {
                continue;
            }
            let out_rank = if s == 0 { 0 } else { rank(field, &boundary(s)) };
            let in_rank = rank(field, &boundary(s + 1));
            table.add(s as i64, j as i64, dim_c - out_rank - in_rank);
        }
    }
    table.truncated = true;
    table.qualifier = Some(format!("verified to internal degree {}", caps.internal));
    Ok(table)
}

/// Upper bound on the internal degrees of `Tor_s^Q(k, k)` from the degrees of
/// a Gröbner basis (standard grading only).
pub fn residue_betti_degree_bound(ring: &QuotientRing, s: usize) -> Option<i32> {
    if ring.pres.ring.weights.iter().any(|&w| w != 1) {
        return None;
    }
    if s == 0 {
        return Some(0);
    }
    let g = ring.gb.elements().iter().filter_map(|f| f.degree()).max().unwrap_or(1).max(2) as i32;
    Some(1 + (s as i32 - 1) * (g - 1))
}

/// `Ext_Q^s(M, N)_j` dimensions: cohomology of `Hom_Q(F, N)` in internal
/// degrees `j` (maps raising degree by `j`).
pub fn ext_into(q: &RingPresentation, m: &ModulePresentation, n: &ModulePresentation, caps: Caps) -> Result<BettiTable> {
    let d = caps.internal.max(0);
    let ring = QuotientRing::new(q, 2 * d as u32)?;
    let res_caps = Caps {
        homological: caps.homological + 1,
        internal: d,
    };
    let res = resolve_over(&ring, m, res_caps)?;
    let nmod = GradedModule::new(&ring, n, 2 * d)?;
    let field = ring.field();
    let is_residue = *m == ModulePresentation::residue_field(q);
    let complete = is_residue
        && (0..=caps.homological + 1).all(|s| residue_betti_degree_bound(&ring, s).is_some_and(|b| b <= d));
    let top = ring.top_degree().map(|t| t as i32);
    let mut table = BettiTable::new(caps);
    let mut settled_all = true;
    for j in -d..=d {
        let dims = |s: usize| -> Vec<usize> { res.shifts[s].iter().map(|&a| nmod.dim(a + j)).collect() };
        // δ: Hom(F_s, N)_j -> Hom(F_{s+1}, N)_j
        let coboundary = |s: usize| -> Vec<SVec> {
            let target_dims = dims(s + 1);
            let offsets: Vec<usize> = target_dims
                .iter()
                .scan(0, |acc, &x| {
                    let o = *acc;
                    *acc += x;
                    Some(o)
                })
                .collect();
            let mut cols = Vec::new();
            for (k, &ak) in res.shifts[s].iter().enumerate() {
                for &b in &nmod.basis(ak + j) {
                    let unit = SVec::unit(b, field);
                    let mut col = SVec::new();
                    for (l, v) in res.differentials[s + 1].iter().enumerate() {
                        let f = &v.coords[k];
                        if f.is_zero() {
                            continue;
                        }
                        let img = nmod.mul_poly(f, ak + j, &unit);
                        let al = res.shifts[s + 1][l];
                        for (p, c) in nmod.basis_coords(al + j, &img).iter() {
                            col.add_at(offsets[l] + p, c);
                        }
                    }
                    cols.push(col);
                }
            }
            cols
        };
        for s in 0..=caps.homological {
            let dim_c: usize = dims(s).iter().sum();
            if dim_c == 0 {
                continue;
            }
            let out_rank = rank(field, &coboundary(s));
            let in_rank = if s == 0 { 0 } else { rank(field, &coboundary(s - 1)) };
            let settled = match top {
                Some(t) => j >= t - d || complete,
                None => complete && j <= d,
            };
            settled_all &= settled;
            table.add(s as i64, j as i64, dim_c - out_rank - in_rank);
        }
    }
    table.truncated = !settled_all;
    table.qualifier = (!settled_all).then(|| format!("verified to internal degree {d}"));
    Ok(table)
}

/// Bass numbers `dim Ext_Q^s(k, Q)`.
pub fn ext_modules(q: &RingPresentation, caps: Caps) -> Result<BettiTable> {
    ext_into(q, &ModulePresentation::residue_field(q), &ModulePresentation::ring_itself(), caps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth: usize,
    pub dim: usize,
    #[serde(rename = "type")]
    pub cm_type: Option<usize>,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub qualifier: Option<String>,
}

pub fn depth_dim_type(q: &RingPresentation, caps: Caps) -> Result<DepthReport> {
    let dim = krull_dimension(q)?;
    let caps = Caps {
        homological: dim.max(1),
        ..caps
    };
    let ext = ext_modules(q, caps)?;
    let depth = (0..=dim)
        .find(|&s| ext.total(s as i64) > 0)
        .ok_or_else(|| AlgebraError::Uncertified("no nonzero Ext up to the dimension within caps".into()))?;
    let cm = depth == dim;
    let cm_type = cm.then(|| ext.total(depth as i64));
    Ok(DepthReport {
        depth,
        dim,
        cm_type,
        cohen_macaulay: cm,
        gorenstein: cm && cm_type == Some(1),
        qualifier: ext.qualifier.clone(),
    })
}

/// `E²_{p,q} = dim Tor_p^{R0}(M, k)_q` for a module over a ring concentrated
/// in homological degree zero.
pub fn kunneth_e2(r0: &RingPresentation, m: &ModulePresentation, caps: Caps) -> Result<BettiTable> {
    tor_modules(r0, m, &ModulePresentation::residue_field(r0), caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn pres(vars: &[&str], gens: &[&str]) -> RingPresentation {
        RingPresentation::parse(Field::Rational, vars, gens).unwrap()
    }

    fn small() -> Caps {
        Caps {
            homological: 4,
            internal: 10,
        }
    }

    #[test]
    fn resolution_of_residue_field_over_dual_numbers() {
        let q = pres(&["x"], &["x^2"]);
        let caps = Caps {
            homological: 6,
            internal: 12,
        };
        let res = minimal_free_resolution(&q, &ModulePresentation::residue_field(&q), caps).unwrap();
        assert_eq!(res.ranks(), vec![1; 7]);
        assert!(res.composes_to_zero());
        assert!(res.is_minimal());
    }

    #[test]
    fn koszul_resolution() {
        let q = pres(&["x", "y"], &[]);
        let caps = Caps {
            homological: 3,
            internal: 8,
        };
        let res = minimal_free_resolution(&q, &ModulePresentation::residue_field(&q), caps).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1, 0]);
        let free = minimal_free_resolution(&q, &ModulePresentation::ring_itself(), caps).unwrap();
        assert_eq!(free.ranks(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn tor_of_residue_fields() {
        let q = pres(&["x", "y"], &[]);
        let k = ModulePresentation::residue_field(&q);
        let t = tor_modules(&q, &k, &k, small()).unwrap();
        assert_eq!(t.totals(0..=3), vec![1, 2, 1, 0]);
        let d = pres(&["x"], &["x^2"]);
        let kd = ModulePresentation::residue_field(&d);
        assert_eq!(tor_modules(&d, &kd, &kd, small()).unwrap().totals(0..=4), vec![1; 5]);
    }

    #[test]
    fn ext_examples() {
        let q = pres(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let e = ext_modules(&q, small()).unwrap();
        assert_eq!(e.total(0), 2);
        let d = pres(&["x"], &["x^2"]);
        assert_eq!(ext_modules(&d, small()).unwrap().total(0), 1);
        let p = pres(&["x", "y"], &[]);
        let e = ext_modules(&p, small()).unwrap();
        assert_eq!(e.totals(0..=4), vec![0, 0, 1, 0, 0]);
        assert_eq!(e.get(2, -2), 1);
    }

    #[test]
    fn depth_examples() {
        let r = depth_dim_type(&pres(&["x", "y"], &["x^2", "x*y"]), small()).unwrap();
        assert_eq!((r.depth, r.dim, r.cohen_macaulay), (0, 1, false));
        let r = depth_dim_type(&pres(&["x", "y"], &["x^2", "y^2"]), small()).unwrap();
        assert_eq!((r.depth, r.dim, r.cm_type, r.gorenstein), (0, 0, Some(1), true));
        let r = depth_dim_type(&pres(&["x", "y"], &["x^2", "x*y", "y^2"]), small()).unwrap();
        assert_eq!((r.cm_type, r.cohen_macaulay, r.gorenstein), (Some(2), true, false));
    }

    #[test]
    fn kunneth_column() {
        let d = pres(&["x"], &["x^2"]);
        let e2 = kunneth_e2(&d, &ModulePresentation::residue_field(&d), small()).unwrap();
        for p in 0..=4 {
            assert_eq!(e2.get(p, p), 1);
            assert_eq!(e2.total(p), 1);
        }
        let free = kunneth_e2(&d, &ModulePresentation::ring_itself(), small()).unwrap();
        assert_eq!(free.entries.keys().map(|k| k.0).max(), Some(0));
    }
}
