//! Characteristic-zero minimal models of connected DG algebras.

mod decompose;
mod probe;

pub use decompose::*;
pub use probe::*;

use serde::Serialize;

use crate::dga::{dg_homology, AlgebraUnder, DGAlgebra, Element, GeneratorKind, Mono, Tables};
use crate::error::{AlgebraError, Result};
use crate::linalg::{homology_reps, kernel_and_image, Echelon, SVec};
use crate::resolution::Caps;

/// `ℓ[X]` with decomposable differential and a comparison map to its target.
#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub model: DGAlgebra,
    pub comparison: AlgebraUnder,
    pub cap: u32,
    pub internal_cap: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorDump {
    pub name: String,
    pub degree: u32,
    pub weight: u32,
    pub d: String,
    pub image: String,
}

impl MinimalModel {
    pub fn target(&self) -> &DGAlgebra {
        &self.comparison.target
    }

    /// Number of generators in each degree `0..=cap`.
    pub fn hq_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.cap as usize + 1];
        for g in &self.model.generators {
            if g.degree <= self.cap {
                out[g.degree as usize] += 1;
            }
        }
        out
    }

    /// `∂x ∈ I²` for every generator `x`.
    pub fn check_decomposable(&self) -> Result<()> {
        for i in 0..self.model.ngens() {
            for m in self.model.differential[i].terms.keys() {
                if word_length(m) < 2 {
                    return Err(AlgebraError::Differential(format!(
                        "d({}) has the linear term {}",
                        self.model.generators[i].name,
                        self.model.format_mono(m)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Degreewise rank check that the comparison is a homology isomorphism through the cap.
    pub fn check_quasi_iso(&self) -> Result<bool> {
        let a = self.target();
        let m = &self.model;
        let caps = Caps {
            homological: self.cap as usize,
            internal: self.internal_cap as i32,
        };
        let hm = dg_homology(m, caps)?;
        let ha = dg_homology(a, caps)?;
        if hm.entries != ha.entries {
            return Ok(false);
        }
        let mut tm = Tables::new();
        let mut ta = Tables::new();
        for (&(n, w), &dim) in &ha.entries {
            let (n, w) = (n as u32, w as u32);
            let reps = model_homology(m, &mut tm, n, w);
            let mut e = boundaries(a, &mut ta, n, w);
            let before = e.rank();
            for z in &reps {
                let img = self.comparison.apply(m, z)?;
                let _ = e.insert(&ta.coords(a, n, w, &img));
            }
            if e.rank() - before != dim {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn dump(&self) -> Vec<GeneratorDump> {
        self.model
            .generators
            .iter()
            .zip(&self.model.differential)
            .zip(&self.comparison.gen_images)
            .map(|((g, d), img)| GeneratorDump {
                name: g.name.clone(),
                degree: g.degree,
                weight: g.weight,
                d: self.model.format(d),
                image: self.target().format(img),
            })
            .collect()
    }
}

pub(crate) fn word_length(m: &Mono) -> u32 {
    m.pos.iter().sum::<u32>() + m.base.iter().sum::<u32>()
}

fn model_homology(m: &DGAlgebra, t: &mut Tables, n: u32, w: u32) -> Vec<Element> {
    let incoming = t.d_matrix(m, n + 1, w);
    let outgoing = if n == 0 { vec![SVec::new(); t.dim(m, 0, w)] } else { t.d_matrix(m, n, w) };
    homology_reps(m.field, &incoming, &outgoing)
        .iter()
        .map(|v| t.element(m, n, w, v))
        .collect()
}

fn boundaries(a: &DGAlgebra, t: &mut Tables, n: u32, w: u32) -> Echelon {
    let mut e = Echelon::new(a.field);
    for v in t.d_matrix(a, n + 1, w) {
        let _ = e.insert(&v);
    }
    e
}

fn kind_for(degree: u32) -> GeneratorKind {
    if degree % 2 == 1 {
        GeneratorKind::Exterior
    } else {
        GeneratorKind::Polynomial
    }
}

/// Degree-by-degree construction: at degree `n` first kill the kernel of
/// `H_{n-1}(M) -> H_{n-1}(A)`, then adjoin cycles surjecting onto `H_n(A)`.
pub fn minimal_model(a: &DGAlgebra, caps: Caps) -> Result<MinimalModel> {
    if a.field.characteristic() != 0 {
        return Err(AlgebraError::Unsupported(
            "minimal models are only built in characteristic zero; use the Tate closure instead".into(),
        ));
    }
    a.check_d_squared()?;
    let cap = caps.homological as u32;
    let wmax = if a.is_ungraded() { 0 } else { caps.internal.max(0) as u32 };
    let h0 = dg_homology(
        a,
        Caps {
            homological: 0,
            internal: wmax as i32,
        },
    )?;
    if h0.total(0) != 1 || h0.get(0, 0) != 1 {
        return Err(AlgebraError::InvalidInput("the algebra is not connected: H_0 is not the ground field".into()));
    }
    let field = a.field;
    let mut m = DGAlgebra::over_field(field);
    let mut phi = AlgebraUnder {
        target: a.clone(),
        base_images: Vec::new(),
        gen_images: Vec::new(),
    };
    let mut tm = Tables::new();
    let mut ta = Tables::new();
    let mut counters = std::collections::BTreeMap::<u32, usize>::new();
    for n in 1..=cap + 1 {
        for w in 0..=wmax {
            if n >= 2 {
                // kernel of H_{n-1}(M)_w -> H_{n-1}(A)_w
                let (cycles, _) = kernel_and_image(field, &tm.d_matrix(&m, n - 1, w));
                let bounds_a = boundaries(a, &mut ta, n - 1, w);
                let mut images = Vec::new();
                for z in &cycles {
                    let el = tm.element(&m, n - 1, w, z);
                    let img = phi.apply(&m, &el)?;
                    images.push(bounds_a.reduce(&ta.coords(a, n - 1, w, &img)));
                }
                let (kernel, _) = kernel_and_image(field, &images);
                let mut bm = boundaries(&m, &mut tm, n - 1, w);
                let mut solver = Echelon::tracked(field);
                for v in ta.d_matrix(a, n, w) {
                    let _ = solver.insert(&v);
                }
                let basis_a = ta.basis(a, n, w);
                let mut killed = Vec::new();
                for c in kernel {
                    let mut z = SVec::new();
                    for (i, x) in c.iter() {
                        z.axpy(x, &cycles[i]);
                    }
                    if bm.insert(&z).is_err() {
                        continue;
                    }
                    let ze = tm.element(&m, n - 1, w, &z);
                    let img = phi.apply(&m, &ze)?;
                    let combo = solver
                        .solve(&ta.coords(a, n - 1, w, &img))
                        .ok_or_else(|| AlgebraError::Differential("kernel class is not a boundary in the target".into()))?;
                    let mut pre = Element::zero();
                    for (k, x) in combo.iter() {
                        pre.add_term(&basis_a[k], x);
                    }
                    killed.push((ze, pre));
                }
                for (dz, pre) in killed {
                    if dz.terms.keys().any(|mo| word_length(mo) < 2) {
                        return Err(AlgebraError::Differential(format!("kernel representative {} is not decomposable", m.format(&dz))));
                    }
                    let k = counters.entry(n).or_default();
                    *k += 1;
                    m.add_generator(&format!("g{n}_{k}"), n, w, kind_for(n), dz)?;
                    phi.gen_images.push(pre);
                }
            }
            if n <= cap {
                // surject onto H_n(A)_w
                let mut e = boundaries(a, &mut ta, n, w);
                let (cycles, _) = kernel_and_image(field, &tm.d_matrix(&m, n, w));
                for z in &cycles {
                    let el = tm.element(&m, n, w, z);
                    let img = phi.apply(&m, &el)?;
                    let _ = e.insert(&ta.coords(a, n, w, &img));
                }
                let incoming = ta.d_matrix(a, n + 1, w);
                let outgoing = ta.d_matrix(a, n, w);
                for rep in homology_reps(field, &incoming, &outgoing) {
                    if e.insert(&rep).is_ok() {
                        let img = ta.element(a, n, w, &rep);
                        let k = counters.entry(n).or_default();
                        *k += 1;
                        m.add_generator(&format!("g{n}_{k}"), n, w, kind_for(n), Element::zero())?;
                        phi.gen_images.push(img);
                    }
                }
            }
        }
    }
    let comparison = AlgebraUnder::new(&m, a.clone(), Vec::new(), phi.gen_images)?;
    Ok(MinimalModel {
        model: m,
        comparison,
        cap,
        internal_cap: wmax,
    })
}

/// `(ℓ[Y], ∂̄)` with `Y = X ∖ {x}`: the model of the fiber of `ℓ[x] -> M`.
pub fn fiber_model(mm: &MinimalModel, x: usize) -> Result<MinimalModel> {
    let m = &mm.model;
    if x >= m.ngens() {
        return Err(AlgebraError::InvalidInput(format!("generator index {x} is not a model generator")));
    }
    if !m.differential[x].is_zero() {
        return Err(AlgebraError::NotACycle(m.generators[x].name.clone()));
    }
    let reduced = reduce_away(m, x)?;
    Ok(MinimalModel {
        comparison: AlgebraUnder::identity(&reduced),
        model: reduced,
        cap: mm.cap,
        internal_cap: mm.internal_cap,
    })
}

/// Drops generator `x`, setting it to zero in every differential.
pub(crate) fn reduce_away(m: &DGAlgebra, x: usize) -> Result<DGAlgebra> {
    let mut out = DGAlgebra::over_field(m.field);
    for (i, g) in m.generators.iter().enumerate() {
        if i == x {
            continue;
        }
        out.add_generator(&g.name, g.degree, g.weight, g.kind, drop_index(&m.differential[i], x))?;
    }
    Ok(out)
}

/// Terms free of generator `x`, reindexed for the algebra without it.
pub(crate) fn drop_index(e: &Element, x: usize) -> Element {
    let mut out = Element::zero();
    for (mo, c) in &e.terms {
        if mo.exp(x) == 0 {
            out.add_term(&remove_slot(mo, x), c);
        }
    }
    out
}

pub(crate) fn remove_slot(mo: &Mono, x: usize) -> Mono {
    let mut pos = mo.pos.clone();
    if x < pos.len() {
        pos.remove(x);
    }
    while pos.last() == Some(&0) {
        pos.pop();
    }
    Mono { base: mo.base.clone(), pos }
}

pub(crate) fn insert_slot(mo: &Mono, x: usize, e: u32) -> Mono {
    let mut pos = mo.pos.clone();
    if pos.len() < x {
        pos.resize(x, 0);
    }
    pos.insert(x, e);
    while pos.last() == Some(&0) {
        pos.pop();
    }
    Mono { base: mo.base.clone(), pos }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalar::Field;

    fn caps(n: usize) -> Caps {
        Caps::new(n as i64, 0).unwrap()
    }

    pub(crate) fn square_zero_even(names: &[&str], degree: u32) -> DGAlgebra {
        let mut a = DGAlgebra::over_field(Field::Rational);
        for n in names {
            a.add_generator(n, degree, 0, GeneratorKind::Polynomial, Element::zero()).unwrap();
        }
        let k = names.len();
        for i in 0..k {
            for j in i..k {
                let mut e = vec![0; k];
                e[i] += 1;
                e[j] += 1;
                a.add_relation(e).unwrap();
            }
        }
        a
    }

    /// Dimensions `l_k` of the free Lie superalgebra on `g` odd letters of
    /// degree one, from `Π_{k odd}(1+t^k)^{l_k} / Π_{k even}(1-t^k)^{l_k} = 1/(1-gt)`.
    pub(crate) fn pbw_lie_dims(g: i64, kmax: usize) -> Vec<usize> {
        let target: Vec<i64> = (0..=kmax).map(|k| g.pow(k as u32)).collect();
        let mut l = vec![0i64; kmax + 1];
        for k in 1..=kmax {
            let mut series = vec![0i64; kmax + 1];
            series[0] = 1;
            for (j, &lj) in l.iter().enumerate().take(k).skip(1) {
                for _ in 0..lj {
                    let mut next = vec![0i64; kmax + 1];
                    for a in 0..=kmax {
                        if j % 2 == 1 {
                            next[a] += series[a];
                            if a + j <= kmax {
                                next[a + j] += series[a];
                            }
                        } else {
                            let mut b = a;
                            while b <= kmax {
                                next[b] += series[a];
                                b += j;
                            }
                        }
                    }
                    series = next;
                }
            }
            l[k] = target[k] - series[k];
        }
        l.into_iter().map(|x| x as usize).collect()
    }

    #[test]
    fn exterior_is_its_own_model() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let mm = minimal_model(&a, caps(6)).unwrap();
        assert_eq!(mm.hq_dims(), vec![0, 1, 0, 0, 0, 0, 0]);
        assert!(mm.check_quasi_iso().unwrap());
    }

    #[test]
    fn contractible_has_empty_model() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        let x = a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let gx = a.gen(x);
        a.add_generator("y", 2, 0, GeneratorKind::Polynomial, gx).unwrap();
        let mm = minimal_model(&a, caps(6)).unwrap();
        assert_eq!(mm.model.ngens(), 0);
    }

    #[test]
    fn dual_numbers_in_degree_two() {
        let a = square_zero_even(&["y"], 2);
        let mm = minimal_model(&a, caps(6)).unwrap();
        assert_eq!(mm.hq_dims(), vec![0, 0, 1, 0, 0, 1, 0]);
        mm.check_decomposable().unwrap();
        assert!(mm.check_quasi_iso().unwrap());
        let z = mm.model.generator_index("g5_1").unwrap();
        let y = mm.model.gen(0);
        assert_eq!(mm.model.differential[z], mm.model.mul(&y, &y));

        let f = fiber_model(&mm, 0).unwrap();
        assert_eq!(f.hq_dims(), vec![0, 0, 0, 0, 0, 1, 0]);
        assert!(f.model.differential[0].is_zero());
        assert!(fiber_model(&mm, z).is_err());
    }

    #[test]
    fn two_generator_square_zero_is_unbounded() {
        let a = square_zero_even(&["x", "y"], 2);
        let mm = minimal_model(&a, caps(12)).unwrap();
        mm.check_decomposable().unwrap();
        assert!(mm.check_quasi_iso().unwrap());
        let h = mm.hq_dims();
        // generators in degree 3k-1 match the free Lie superalgebra on two odd letters
        let lie = pbw_lie_dims(2, 4);
        for k in 1..=4 {
            assert_eq!(h[3 * k - 1], lie[k], "length {k}");
        }
        assert!(h[11] > 0);
    }

    #[test]
    fn refuses_positive_characteristic() {
        let a = DGAlgebra::over_field(Field::prime(3).unwrap());
        assert!(matches!(minimal_model(&a, caps(3)), Err(AlgebraError::Unsupported(_))));
    }
}
