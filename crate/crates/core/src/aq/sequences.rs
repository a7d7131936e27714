use std::sync::Arc;

use serde::Serialize;

use super::{ls_cotangent, CotangentTable, LsComplex, LsDegree, RelativePresentation};
use crate::error::{AlgebraError, Result};
use crate::groebner::{groebner_of, FreeModuleVector};
use crate::linalg::{kernel_and_image, rank, Echelon, SVec};
use crate::poly::{MonomialOrder, PolyRing, Polynomial, RingPresentation};
use crate::scalar::Field;

/// `sub`-quotient of a coordinate space with chosen representatives.
struct Subquotient {
    ech: Echelon,
    nsub: usize,
    dim: usize,
    reps: Vec<SVec>,
}

impl Subquotient {
    fn new(field: Field, sub: &[SVec], candidates: &[SVec]) -> Subquotient {
        let mut ech = Echelon::tracked(field);
        for v in sub {
            let _ = ech.insert(v);
        }
        let nsub = sub.len();
        let mut reps = Vec::new();
        let mut probe = Echelon::new(field);
        for v in sub {
            let _ = probe.insert(v);
        }
        for v in candidates {
            if probe.insert(v).is_ok() {
                reps.push(v.clone());
            }
        }
        for v in &reps {
            let _ = ech.insert(v);
        }
        Subquotient {
            ech,
            nsub,
            dim: reps.len(),
            reps,
        }
    }

    fn coords(&self, v: &SVec) -> Option<SVec> {
        let combo = self.ech.solve(v)?;
        Some(SVec::from_pairs(combo.iter().filter(|(i, _)| *i >= self.nsub).map(|(i, c)| (i - self.nsub, c.clone()))))
    }
}

fn unit_vectors(field: Field, n: usize) -> Vec<SVec> {
    (0..n).map(|i| SVec::unit(i, field)).collect()
}

/// `D_0, D_1, D_2` in one internal degree as subquotients of the LS pieces.
struct DegreeHomology {
    d0: Subquotient,
    d1: Subquotient,
    /// in rep coordinates of `(Rel/Kos) ⊗ k`
    d2: Subquotient,
}

fn degree_homology(field: Field, p: &LsDegree) -> DegreeHomology {
    let (z1, _) = kernel_and_image(field, &p.d1);
    let (z2, _) = kernel_and_image(field, &p.d2);
    DegreeHomology {
        d0: Subquotient::new(field, &p.d1, &unit_vectors(field, p.xs.len())),
        d1: Subquotient::new(field, &p.d2, &z1),
        d2: Subquotient::new(field, &[], &z2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessSpot {
    pub module: String,
    pub degree: u32,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub spots: Vec<ExactnessSpot>,
    pub exact: bool,
}

fn embed_names(p: &Polynomial, target: &Arc<PolyRing>) -> Result<Polynomial> {
    let src = p.ring();
    let map: Vec<usize> = src
        .vars
        .iter()
        .map(|v| target.var_index(v).ok_or_else(|| AlgebraError::InvalidInput(format!("variable {v} is missing from the larger ring"))))
        .collect::<Result<_>>()?;
    for (i, &j) in map.iter().enumerate() {
        if src.weights[i] != target.weights[j] {
            return Err(AlgebraError::InvalidInput(format!("variable {} changes weight", src.vars[i])));
        }
    }
    Ok(p.embed(target, &map))
}

fn embed_all(ps: &[Polynomial], target: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    ps.iter().map(|p| embed_names(p, target)).collect()
}

fn relative_vars(small: &Arc<PolyRing>, big: &Arc<PolyRing>) -> Vec<usize> {
    (0..big.nvars()).filter(|&i| small.var_index(&big.vars[i]).is_none()).collect()
}

fn require_contained(small: &RingPresentation, big: &RingPresentation) -> Result<()> {
    let gb = groebner_of(big)?;
    for f in embed_all(&small.ideal, &big.ring)? {
        if !gb.contains(&f) {
            return Err(AlgebraError::InvalidInput(format!("{f} does not vanish in the larger ring")));
        }
    }
    Ok(())
}

/// Moves a vector of `F_w` between LS complexes through polynomial coordinates.
fn transfer(src: &LsComplex, dst: &LsComplex, w: u32, v: &SVec, index: impl Fn(usize) -> Option<usize>) -> Result<SVec> {
    let fv = src.free.to_vector(w as i32, v);
    let zero = Polynomial::zero(&dst.ring.pres.ring);
    let mut coords = vec![zero; dst.gens.len()];
    for (j, c) in fv.coords.iter().enumerate() {
        if let Some(k) = index(j) {
            coords[k] = dst.ring.gb.normal_form(&embed_names(c, &dst.ring.pres.ring)?);
        }
    }
    let out = FreeModuleVector {
        coords,
        shifts: dst.free.shifts.clone(),
    };
    Ok(dst.free.element(&out)?.map(|(_, s)| s).unwrap_or_default())
}

fn position(origin: &[usize], o: usize) -> Option<usize> {
    origin.iter().position(|&x| x == o)
}

struct Matrix {
    cols: Vec<SVec>,
}

impl Matrix {
    fn rank(&self, field: Field) -> usize {
        rank(field, &self.cols)
    }
}

fn compose_zero(first: &Matrix, second: &Matrix) -> bool {
    first.cols.iter().all(|v| {
        let mut out = SVec::new();
        for (i, c) in v.iter() {
            out.axpy(c, &second.cols[i]);
        }
        out.is_zero()
    })
}

/// Nine-term Jacobi–Zariski sequence for `A -> B -> C` with coefficients in
/// `k`, checked degreewise by ranks. Variables of `A ⊆ B ⊆ C` match by name.
pub fn transitivity_check(a: &RingPresentation, b: &RingPresentation, c: &RingPresentation) -> Result<TransitivityReport> {
    require_contained(a, b)?;
    require_contained(b, c)?;
    let field = c.ring.field;
    let ja_b = embed_all(&a.ideal, &b.ring)?;
    let ja_c = embed_all(&a.ideal, &c.ring)?;
    let jb_c = embed_all(&b.ideal, &c.ring)?;
    let nf = b.ideal.len();
    let ba = RelativePresentation::new(RingPresentation::new(b.ring.clone(), ja_b)?, b.ideal.clone(), relative_vars(&a.ring, &b.ring))?;
    let mut rel_ca = jb_c.clone();
    rel_ca.extend(c.ideal.iter().cloned());
    let ca = RelativePresentation::new(RingPresentation::new(c.ring.clone(), ja_c)?, rel_ca, relative_vars(&a.ring, &c.ring))?;
    let cb = RelativePresentation::new(RingPresentation::new(c.ring.clone(), jb_c)?, c.ideal.clone(), relative_vars(&b.ring, &c.ring))?;
    let lba = LsComplex::new(&ba)?;
    let lca = LsComplex::new(&ca)?;
    let lcb = LsComplex::new(&cb)?;
    let top = lba.top.max(lca.top).max(lcb.top);
    let empty = LsDegree::default();
    let mut spots = Vec::new();
    for w in 0..=top {
        let pba = lba.pieces.get(w as usize).unwrap_or(&empty);
        let pca = lca.pieces.get(w as usize).unwrap_or(&empty);
        let pcb = lcb.pieces.get(w as usize).unwrap_or(&empty);
        let hba = degree_homology(field, pba);
        let hca = degree_homology(field, pca);
        let hcb = degree_homology(field, pcb);
        let fail = |what: &str| AlgebraError::Differential(format!("{what} is not well defined in degree {w}"));

        // L0 maps by variable names
        let var_name = |l: &LsComplex, p: &LsDegree, k: usize| l.pres.ambient.ring.vars[l.pres.relative[p.xs[k]]].clone();
        let find_x = |l: &LsComplex, p: &LsDegree, name: &str| (0..p.xs.len()).find(|&k| var_name(l, p, k) == name);
        let alpha0 = Matrix {
            cols: (0..hba.d0.dim)
                .map(|k| representative(&hba.d0, k))
                .map(|v| map_vec(&v, |i| find_x(&lca, pca, &var_name(&lba, pba, i))))
                .map(|v| hca.d0.coords(&v).ok_or_else(|| fail("D0(B|A) -> D0(C|A)")))
                .collect::<Result<_>>()?,
        };
        let beta0 = Matrix {
            cols: (0..hca.d0.dim)
                .map(|k| representative(&hca.d0, k))
                .map(|v| map_vec(&v, |i| find_x(&lcb, pcb, &var_name(&lca, pca, i))))
                .map(|v| hcb.d0.coords(&v).ok_or_else(|| fail("D0(C|A) -> D0(C|B)")))
                .collect::<Result<_>>()?,
        };
        // L1 maps by relation origin
        let f_of = |l: &LsComplex, p: &LsDegree, k: usize| l.origin[p.fs[k]];
        let find_f = |l: &LsComplex, p: &LsDegree, o: usize| (0..p.fs.len()).find(|&k| f_of(l, p, k) == o);
        let alpha1 = Matrix {
            cols: (0..hba.d1.dim)
                .map(|k| representative(&hba.d1, k))
                .map(|v| map_vec(&v, |i| find_f(&lca, pca, f_of(&lba, pba, i))))
                .map(|v| hca.d1.coords(&v).ok_or_else(|| fail("D1(B|A) -> D1(C|A)")))
                .collect::<Result<_>>()?,
        };
        let beta1 = Matrix {
            cols: (0..hca.d1.dim)
                .map(|k| representative(&hca.d1, k))
                .map(|v| {
                    map_vec(&v, |i| {
                        let o = f_of(&lca, pca, i);
                        if o < nf {
                            None
                        } else {
                            find_f(&lcb, pcb, o - nf)
                        }
                    })
                })
                .map(|v| hcb.d1.coords(&v).ok_or_else(|| fail("D1(C|A) -> D1(C|B)")))
                .collect::<Result<_>>()?,
        };
        // L2 maps through syzygy coordinates
        let rel_of = |p: &LsDegree, v: &SVec| -> SVec {
            let mut out = SVec::new();
            for (k, c) in v.iter() {
                out.axpy(c, &p.reps[k]);
            }
            out
        };
        let l2_coords = |l: &LsComplex, p: &LsDegree, v: &SVec| -> Option<SVec> {
            Subquotient::new(l.field(), &p.sub, &p.reps).coords(v)
        };
        let mut alpha2 = Matrix { cols: Vec::new() };
        for k in 0..hba.d2.dim {
            let v = rel_of(pba, &representative(&hba.d2, k));
            let moved = transfer(&lba, &lca, w, &v, |j| position(&lca.origin, lba.origin[j]))?;
            let q = l2_coords(&lca, pca, &moved).ok_or_else(|| fail("Rel(B|A) -> Rel(C|A)"))?;
            alpha2.cols.push(hca.d2.coords(&q).ok_or_else(|| fail("D2(B|A) -> D2(C|A)"))?);
        }
        let mut beta2 = Matrix { cols: Vec::new() };
        for k in 0..hca.d2.dim {
            let v = rel_of(pca, &representative(&hca.d2, k));
            let moved = transfer(&lca, &lcb, w, &v, |j| {
                let o = lca.origin[j];
                if o < nf {
                    None
                } else {
                    position(&lcb.origin, o - nf)
                }
            })?;
            let q = l2_coords(&lcb, pcb, &moved).ok_or_else(|| fail("Rel(C|A) -> Rel(C|B)"))?;
            beta2.cols.push(hcb.d2.coords(&q).ok_or_else(|| fail("D2(C|A) -> D2(C|B)"))?);
        }
        // connecting maps
        let mut delta1 = Matrix { cols: Vec::new() };
        for k in 0..hcb.d1.dim {
            let z = representative(&hcb.d1, k);
            let lifted = map_vec(&z, |i| find_f(&lca, pca, f_of(&lcb, pcb, i) + nf));
            let mut image = SVec::new();
            for (i, c) in lifted.iter() {
                image.axpy(c, &pca.d1[i]);
            }
            let onto_b = map_vec(&image, |i| find_x(&lba, pba, &var_name(&lca, pca, i)));
            delta1.cols.push(hba.d0.coords(&onto_b).ok_or_else(|| fail("D1(C|B) -> D0(B|A)"))?);
        }
        let mut delta2 = Matrix { cols: Vec::new() };
        for k in 0..hcb.d2.dim {
            let z = rel_of(pcb, &representative(&hcb.d2, k));
            let lifted = lift_syzygy(&lcb, &lca, nf, w, &z)?;
            let consts = super::constant_part(&lca.free, w, &pca.fs, &lifted);
            let onto_b = map_vec(&consts, |i| {
                let o = f_of(&lca, pca, i);
                if o < nf {
                    find_f(&lba, pba, o)
                } else {
                    None
                }
            });
            delta2.cols.push(hba.d1.coords(&onto_b).ok_or_else(|| fail("D2(C|B) -> D1(B|A)"))?);
        }
        let sequence: [(&str, usize, &Matrix, Option<&Matrix>); 8] = [
            ("D2(C|A)", hca.d2.dim, &alpha2, Some(&beta2)),
            ("D2(C|B)", hcb.d2.dim, &beta2, Some(&delta2)),
            ("D1(B|A)", hba.d1.dim, &delta2, Some(&alpha1)),
            ("D1(C|A)", hca.d1.dim, &alpha1, Some(&beta1)),
            ("D1(C|B)", hcb.d1.dim, &beta1, Some(&delta1)),
            ("D0(B|A)", hba.d0.dim, &delta1, Some(&alpha0)),
            ("D0(C|A)", hca.d0.dim, &alpha0, Some(&beta0)),
            ("D0(C|B)", hcb.d0.dim, &beta0, None),
        ];
        for (name, dim, incoming, outgoing) in sequence {
            let rank_in = incoming.rank(field);
            let rank_out = outgoing.map_or(0, |m| m.rank(field));
            let composite_zero = outgoing.is_none_or(|m| compose_zero(incoming, m));
            if dim == 0 && rank_in == 0 && rank_out == 0 {
                continue;
            }
            spots.push(ExactnessSpot {
                module: name.into(),
                degree: w,
                dim,
                rank_in,
                rank_out,
                composite_zero,
                exact: composite_zero && rank_in + rank_out == dim,
            });
        }
    }
    let exact = spots.iter().all(|s| s.exact);
    Ok(TransitivityReport { spots, exact })
}

/// `k`-th chosen representative of a subquotient, in ambient coordinates.
fn representative(s: &Subquotient, k: usize) -> SVec {
    s.reps[k].clone()
}

fn map_vec(v: &SVec, index: impl Fn(usize) -> Option<usize>) -> SVec {
    let mut out = SVec::new();
    for (i, c) in v.iter() {
        if let Some(j) = index(i) {
            out.add_at(j, c);
        }
    }
    out
}

/// Lifts a syzygy of the `g`'s over `B[Y]` to one of the `f`'s and `g`'s over `A[X, Y]`.
fn lift_syzygy(lcb: &LsComplex, lca: &LsComplex, nf: usize, w: u32, z: &SVec) -> Result<SVec> {
    let zv = lcb.free.to_vector(w as i32, z);
    let field = lca.field();
    let ring = &lca.ring;
    let pring = &ring.pres.ring;
    let zero = Polynomial::zero(pring);
    let mut coords = vec![zero.clone(); lca.gens.len()];
    let mut sum = zero;
    for (j, c) in zv.coords.iter().enumerate() {
        let o = lcb.origin[j] + nf;
        let Some(k) = position(&lca.origin, o) else { continue };
        let c = embed_names(c, pring)?;
        sum = sum.add(&c.mul(&lca.gens[k]));
        coords[k] = c;
    }
    let target = ring.element(&sum)?.map(|(_, s)| s).unwrap_or_default();
    // solve sum = Σ a_f f over the f-blocks of F_w
    let mut solver = Echelon::tracked(field);
    let mut cols = Vec::new();
    let fw = lca.free.dim(w as i32);
    for k in 0..fw {
        let (j, i) = lca.free.locate(w as i32, k);
        if lca.origin[j] >= nf {
            continue;
        }
        let deg = lca.free.shifts[j] as u32;
        let m = &ring.basis(w - deg)[i];
        let (_, fvec) = ring.element(&lca.gens[j])?.expect("nonzero relation");
        let _ = solver.insert(&ring.mul_monomial(m, deg, &fvec));
        cols.push(k);
    }
    let combo = solver
        .solve(&target)
        .ok_or_else(|| AlgebraError::Differential("syzygy does not lift".into()))?;
    let base = FreeModuleVector {
        coords,
        shifts: lca.free.shifts.clone(),
    };
    let mut out = lca.free.element(&base)?.map(|(_, s)| s).unwrap_or_default();
    for (idx, c) in combo.iter() {
        out.add_at(cols[idx], &-c);
    }
    Ok(out)
}

/// Structurally flat extensions of the base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatExtension {
    Identity,
    /// `R[t_1, ..]` with the given names and weights.
    Polynomial(Vec<(String, u32)>),
    /// `R × .. × R` with this many factors.
    Product(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatBaseChangeReport {
    pub original: CotangentTable,
    pub changed: Vec<CotangentTable>,
    pub equal: bool,
}

/// `D_*(S ⊗_R B | B; k)` against `D_*(S|R; k)` in degrees `<= 2`.
pub fn flat_base_change_check(p: &RelativePresentation, ext: &FlatExtension) -> Result<FlatBaseChangeReport> {
    let original = ls_cotangent(p, 2)?;
    let changed = match ext {
        FlatExtension::Identity => vec![ls_cotangent(p, 2)?],
        FlatExtension::Polynomial(extra) => {
            let ring = &p.ambient.ring;
            let mut names = ring.vars.clone();
            let mut weights = ring.weights.clone();
            for (n, w) in extra {
                if ring.var_index(n).is_some() {
                    return Err(AlgebraError::InvalidInput(format!("variable {n} already exists")));
                }
                names.push(n.clone());
                weights.push(*w);
            }
            let order = match ring.order {
                MonomialOrder::Elimination(_) => MonomialOrder::Degrevlex,
                o => o,
            };
            let big = PolyRing::with(ring.field, names, Some(weights), order)?;
            let ambient = RingPresentation::new(big.clone(), embed_all(&p.ambient.ideal, &big)?)?;
            let q = RelativePresentation::new(ambient, embed_all(&p.relations, &big)?, p.relative.clone())?;
            vec![ls_cotangent(&q, 2)?]
        }
        FlatExtension::Product(n) => {
            if *n == 0 {
                return Err(AlgebraError::InvalidInput("a product needs at least one factor".into()));
            }
            // each factor is the identity base change of its own copy
            (0..*n).map(|_| ls_cotangent(p, 2)).collect::<Result<_>>()?
        }
    };
    let equal = changed.iter().all(|t| *t == original);
    Ok(FlatBaseChangeReport { original, changed, equal })
}
