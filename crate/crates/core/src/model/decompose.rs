use serde::Serialize;

use super::{insert_slot, reduce_away, remove_slot, word_length, MinimalModel};
use crate::dga::{DGAlgebra, Element, GeneratorKind, Mono};
use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;

/// `∂(1⊗u) = 1⊗∂̄u + x⊗𝒪u` for a model written as `ℓ[x] ⊗ ℓ[Y]`.
#[derive(Clone, Debug)]
pub struct ODerivationData {
    pub x: usize,
    pub n: u32,
    /// `(ℓ[Y], ∂̄)`.
    pub reduced: DGAlgebra,
    /// `𝒪` on each generator of `Y`, as elements of `ℓ[Y]`.
    pub o: Vec<Element>,
    /// Components `x^k ⊗ 𝒪_k u` with `k >= 2` (even `x` only).
    pub higher: Vec<Vec<(u32, Element)>>,
    /// Linear part of `𝒪` on `J/J²`: column `i` lists `(j, c)` with
    /// `𝒪₁(y_i) = Σ c·y_j`.
    pub o1: Vec<Vec<(usize, Scalar)>>,
    pub(crate) square_zero: Option<SquareZeroShape>,
}

/// Target `ℓ ⊕ V` with zero products, `V` concentrated in even degrees,
/// and `x` mapping onto the basis vector at `letter`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SquareZeroShape {
    pub degrees: Vec<u32>,
    pub letter: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ODerivationSummary {
    pub x: String,
    pub degree: u32,
    pub reduced: Vec<(String, String)>,
    pub o: Vec<(String, String)>,
    pub higher: Vec<(String, u32, String)>,
    pub o1_entries: usize,
}

impl ODerivationData {
    pub fn summary(&self, m: &DGAlgebra) -> ODerivationSummary {
        let r = &self.reduced;
        let name = |i: usize| r.generators[i].name.clone();
        ODerivationSummary {
            x: m.generators[self.x].name.clone(),
            degree: self.n,
            reduced: (0..r.ngens()).map(|i| (name(i), r.format(&r.differential[i]))).collect(),
            o: (0..r.ngens()).map(|i| (name(i), r.format(&self.o[i]))).collect(),
            higher: self
                .higher
                .iter()
                .enumerate()
                .flat_map(|(i, hs)| hs.iter().map(move |(k, e)| (name(i), *k, r.format(e))))
                .collect(),
            o1_entries: self.o1.iter().map(Vec::len).sum(),
        }
    }

    /// Applies `𝒪` to an element of `ℓ[Y]` through the derivation law.
    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in &e.terms {
            out.axpy(c, &self.apply_mono(m));
        }
        out
    }

    fn apply_mono(&self, m: &Mono) -> Element {
        let r = &self.reduced;
        // m = f_1 f_2 ... f_r in index order; 𝒪 passes each prefix with sign (-1)^{(n+1)|prefix|}
        let mut factors = Vec::new();
        for (i, &e) in m.pos.iter().enumerate() {
            for _ in 0..e {
                factors.push(i);
            }
        }
        let mut out = Element::zero();
        let field = r.field;
        for k in 0..factors.len() {
            let prefix_deg: u32 = factors[..k].iter().map(|&i| r.generators[i].degree).sum();
            let sign = if ((self.n + 1) * prefix_deg) % 2 == 1 { -&field.one() } else { field.one() };
            let mut term = r.one();
            for (j, &i) in factors.iter().enumerate() {
                let f = if j == k { self.o[i].clone() } else { r.gen(i) };
                term = r.mul(&term, &f);
            }
            out.axpy(&sign, &term);
        }
        out
    }
}

/// Splits the model differential along the generator `x`.
pub fn o_decomposition(mm: &MinimalModel, x: usize) -> Result<ODerivationData> {
    let m = &mm.model;
    if x >= m.ngens() {
        return Err(AlgebraError::InvalidInput(format!("generator index {x} is not a model generator")));
    }
    if !m.differential[x].is_zero() {
        return Err(AlgebraError::NotACycle(m.generators[x].name.clone()));
    }
    let n = m.generators[x].degree;
    let reduced = reduce_away(m, x)?;
    let mut o = Vec::new();
    let mut higher = Vec::new();
    for i in 0..m.ngens() {
        if i == x {
            continue;
        }
        let parts = split_by_x(m, x, &m.differential[i])?;
        let mut hs = Vec::new();
        let mut first = Element::zero();
        for (k, e) in parts {
            match k {
                0 => {}
                1 => first = e,
                _ => hs.push((k, e)),
            }
        }
        o.push(first);
        higher.push(hs);
    }
    // reassembly on every generator
    for i in 0..m.ngens() {
        if i == x {
            continue;
        }
        let yi = if i > x { i - 1 } else { i };
        let mut total = lift(&reduced.differential[yi], x);
        let xo = m.mul(&m.gen(x), &lift(&o[yi], x));
        total = total.add(&xo);
        for (k, e) in &higher[yi] {
            total = total.add(&m.mul(&m.gen_power(x, *k), &lift(e, x)));
        }
        if total != m.differential[i] {
            let residue = m.differential[i].add(&total.scale(&-&m.field.one()));
            return Err(AlgebraError::DecompositionResidue(m.format(&residue)));
        }
    }
    let o1 = o
        .iter()
        .map(|e| {
            e.terms
                .iter()
                .filter(|(mo, _)| word_length(mo) == 1)
                .map(|(mo, c)| (mo.pos.iter().position(|&v| v == 1).expect("linear term"), c.clone()))
                .collect()
        })
        .collect();
    let data = ODerivationData {
        x,
        n,
        reduced,
        o,
        higher,
        o1,
        square_zero: square_zero_shape(mm, x),
    };
    check_derivation_law(m, &data)?;
    Ok(data)
}

/// `e = Σ_k x^k · ι(e_k)` with `e_k ∈ ℓ[Y]`.
fn split_by_x(m: &DGAlgebra, x: usize, e: &Element) -> Result<Vec<(u32, Element)>> {
    let mut parts: std::collections::BTreeMap<u32, Element> = Default::default();
    for (mo, c) in &e.terms {
        let k = mo.exp(x);
        let rest = remove_slot(mo, x);
        let probe = m.mul(&m.gen_power(x, k), &Element::mono(m.field.one(), insert_slot(&rest, x, 0)));
        let s = probe
            .terms
            .get(mo)
            .cloned()
            .ok_or_else(|| AlgebraError::DecompositionResidue(m.format_mono(mo)))?;
        let coeff = c * &s.inv().expect("unit sign");
        parts.entry(k).or_insert_with(Element::zero).add_term(&rest, &coeff);
    }
    Ok(parts.into_iter().collect())
}

fn lift(e: &Element, x: usize) -> Element {
    let mut out = Element::zero();
    for (mo, c) in &e.terms {
        out.add_term(&insert_slot(mo, x, 0), c);
    }
    out
}

/// Reads `𝒪` off `∂(ι(uv))` for sample products and compares with the derivation law.
fn check_derivation_law(m: &DGAlgebra, data: &ODerivationData) -> Result<()> {
    let r = &data.reduced;
    let k = r.ngens().min(6);
    for i in 0..k {
        for j in i..k {
            let uv = r.mul(&r.gen(i), &r.gen(j));
            if uv.is_zero() {
                continue;
            }
            let d = m.d(&lift(&uv, data.x));
            let read = split_by_x(m, data.x, &d)?
                .into_iter()
                .find(|(k, _)| *k == 1)
                .map(|(_, e)| e)
                .unwrap_or_else(Element::zero);
            let law = data.apply(&uv);
            if read != law {
                return Err(AlgebraError::Differential(format!(
                    "the derivation law fails on {}: read {} but expected {}",
                    r.format(&uv),
                    r.format(&read),
                    r.format(&law)
                )));
            }
        }
    }
    Ok(())
}

fn square_zero_shape(mm: &MinimalModel, x: usize) -> Option<SquareZeroShape> {
    let a = mm.target();
    if a.nbase() != 0 || a.differential.iter().any(|d| !d.is_zero()) {
        return None;
    }
    if a.generators.iter().any(|g| g.degree % 2 == 1 || g.kind != GeneratorKind::Polynomial) {
        return None;
    }
    let g = a.ngens();
    for i in 0..g {
        for j in i..g {
            if !a.mul(&a.gen(i), &a.gen(j)).is_zero() {
                return None;
            }
        }
    }
    let image = &mm.comparison.gen_images[x];
    let letter = (0..g).find(|&i| *image == a.gen(i))?;
    Some(SquareZeroShape {
        degrees: a.generators.iter().map(|g| g.degree).collect(),
        letter,
    })
}

#[cfg(test)]
mod tests {
    use super::super::minimal_model;
    use super::super::tests::square_zero_even;
    use super::*;
    use crate::resolution::Caps;
    use crate::scalar::Field;

    #[test]
    fn read_off_pair() {
        let mut m = DGAlgebra::over_field(Field::Rational);
        let x = m.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let y = m.add_generator("y", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let xy = m.mul(&m.gen(x), &m.gen(y));
        m.add_generator("z", 3, 0, GeneratorKind::Exterior, xy).unwrap();
        let mm = MinimalModel {
            comparison: crate::dga::AlgebraUnder::identity(&m),
            model: m,
            cap: 4,
            internal_cap: 0,
        };
        let d = o_decomposition(&mm, x).unwrap();
        assert_eq!(d.o[1], d.reduced.gen(0));
        assert!(d.reduced.differential[1].is_zero());
        assert_eq!(d.o1[1], vec![(0, Field::Rational.one())]);
    }

    #[test]
    fn dual_numbers_fold_the_square() {
        let a = square_zero_even(&["y"], 2);
        let mm = minimal_model(&a, Caps::new(6, 0).unwrap()).unwrap();
        let d = o_decomposition(&mm, 0).unwrap();
        assert!(d.o[0].is_zero());
        assert_eq!(d.higher[0].len(), 1);
        assert_eq!(d.higher[0][0].0, 2);
        assert!(d.o1[0].is_empty());
    }

    #[test]
    fn square_zero_pair_has_linear_operator() {
        let a = square_zero_even(&["x", "y"], 2);
        let mm = minimal_model(&a, Caps::new(9, 0).unwrap()).unwrap();
        let d = o_decomposition(&mm, 0).unwrap();
        assert!(d.o1.iter().any(|c| !c.is_empty()));
        assert!(d.square_zero.is_some());
    }
}
