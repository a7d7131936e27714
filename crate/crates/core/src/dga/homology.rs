use serde::Serialize;

use super::{DGAlgebra, Element, Tables};
use crate::error::Result;
use crate::linalg::{homology_reps, kernel_and_image, rank, Echelon};
use crate::resolution::{BettiTable, Caps};

/// Dimensions of `H_{n}(A)_w` for `n <= caps.homological`,
/// `w <= caps.internal`.
pub fn dg_homology(a: &DGAlgebra, caps: Caps) -> Result<BettiTable> {
    a.check_d_squared()?;
    let mut t = Tables::new();
    let mut table = BettiTable::new(caps);
    let wmax = if a.is_ungraded() { 0 } else { caps.internal.max(0) as u32 };
    for n in 0..=caps.homological as u32 {
        for w in 0..=wmax {
            table.add(n as i64, w as i64, homology_dim(a, &mut t, n, w));
        }
    }
    table.truncated = !a.is_ungraded();
    table.qualifier = table.truncated.then(|| format!("verified to internal degree {}", caps.internal));
    Ok(table)
}

pub fn homology_dim(a: &DGAlgebra, t: &mut Tables, n: u32, w: u32) -> usize {
    let dim = t.dim(a, n, w);
    if dim == 0 {
        return 0;
    }
    let out = if n == 0 { 0 } else { rank(a.field, &t.d_matrix(a, n, w)) };
    let inc = rank(a.field, &t.d_matrix(a, n + 1, w));
    dim - out - inc
}

/// Cycle representatives of a basis of `H_n(A)_w`.
pub fn homology_basis(a: &DGAlgebra, t: &mut Tables, n: u32, w: u32) -> Vec<Element> {
    let incoming = t.d_matrix(a, n + 1, w);
    let outgoing = if n == 0 {
        vec![crate::linalg::SVec::new(); t.dim(a, 0, w)]
    } else {
        t.d_matrix(a, n, w)
    };
    homology_reps(a.field, &incoming, &outgoing)
        .iter()
        .map(|v| t.element(a, n, w, v))
        .collect()
}

/// Whether a homogeneous cycle of bidegree `(n, w)` is a boundary.
pub fn is_boundary(a: &DGAlgebra, t: &mut Tables, n: u32, w: u32, z: &Element) -> bool {
    let mut e = Echelon::new(a.field);
    for v in t.d_matrix(a, n + 1, w) {
        let _ = e.insert(&v);
    }
    e.contains(&t.coords(a, n, w, z))
}

/// Kernel of `d` on `A_{(n,w)}` as elements.
pub fn cycles(a: &DGAlgebra, t: &mut Tables, n: u32, w: u32) -> Vec<Element> {
    if n == 0 {
        let basis = t.basis(a, 0, w);
        return basis.iter().map(|m| Element::mono(a.field.one(), m.clone())).collect();
    }
    let (ker, _) = kernel_and_image(a.field, &t.d_matrix(a, n, w));
    ker.iter().map(|v| t.element(a, n, w, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulCertificate {
    pub acyclic_in_positive_degrees: bool,
    /// A cycle of degree one that is not a boundary, if any.
    pub h1_cycle: Option<String>,
}

/// Checks positive-degree acyclicity within caps and extracts an explicit
/// degree-one witness when it fails.
pub fn koszul_certificate(k: &DGAlgebra, caps: Caps) -> Result<KoszulCertificate> {
    let table = dg_homology(k, caps)?;
    let acyclic = table.entries.keys().all(|(n, _)| *n == 0);
    let mut t = Tables::new();
    let wmax = if k.is_ungraded() { 0 } else { caps.internal.max(0) as u32 };
    let witness = (0..=wmax).find_map(|w| homology_basis(k, &mut t, 1, w).into_iter().next());
    Ok(KoszulCertificate {
        acyclic_in_positive_degrees: acyclic,
        h1_cycle: witness.map(|z| k.format(&z)),
    })
}

#[cfg(test)]
mod tests {
    use super::super::GeneratorKind;
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn exterior_on_one_generator() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let h = dg_homology(&a, Caps::new(4, 0).unwrap()).unwrap();
        assert_eq!(h.totals(0..=3), vec![1, 1, 0, 0]);
    }

    #[test]
    fn contractible_pair() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        let x = a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        let gx = a.gen(x);
        a.add_generator("y", 2, 0, GeneratorKind::Polynomial, gx).unwrap();
        let h = dg_homology(&a, Caps::new(6, 0).unwrap()).unwrap();
        assert_eq!(h.totals(0..=6), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn formal_square_zero() {
        let mut a = DGAlgebra::over_field(Field::Rational);
        a.add_generator("x", 2, 0, GeneratorKind::Polynomial, Element::zero()).unwrap();
        a.add_generator("y", 2, 0, GeneratorKind::Polynomial, Element::zero()).unwrap();
        for r in [vec![2], vec![1, 1], vec![0, 2]] {
            a.add_relation(r).unwrap();
        }
        let h = dg_homology(&a, Caps::new(4, 0).unwrap()).unwrap();
        assert_eq!(h.totals(0..=4), vec![1, 0, 2, 0, 0]);
    }
}
