use serde::Serialize;

use super::{homology_basis, DGAlgebra, GeneratorKind, Tables};
use crate::error::{AlgebraError, Result};
use crate::graded::QuotientRing;
use crate::poly::{Polynomial, RingPresentation};
use crate::resolution::{residue_betti_degree_bound, Caps};

/// Exterior generators `e_i` in degree one with `d e_i = f_i` over `Q`.
pub fn koszul_complex(q: &RingPresentation, seq: &[Polynomial]) -> Result<DGAlgebra> {
    let mut a = DGAlgebra::new(q.clone())?;
    for (i, f) in seq.iter().enumerate() {
        if !f.is_homogeneous() {
            return Err(AlgebraError::Inhomogeneous(f.to_string()));
        }
        if !f.constant_coefficient().is_zero() {
            return Err(AlgebraError::InvalidInput(format!("{f} is not in the maximal graded ideal")));
        }
        let d = a.base_element(f)?;
        let w = f.degree().unwrap_or(0);
        a.add_generator(&format!("e{}", i + 1), 1, w, GeneratorKind::Exterior, d)?;
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeviationTable {
    /// `eps[i - 1]` is the number of generators of degree `i`.
    pub eps: Vec<usize>,
    pub cap: usize,
    /// Internal degrees of the adjoined generators, per homological degree.
    pub internal_degrees: Vec<Vec<u32>>,
    pub settled: bool,
    pub qualifier: Option<String>,
}

impl DeviationTable {
    pub fn eps(&self, i: usize) -> usize {
        self.eps.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// All of `ε_3 .. ε_{cap+1}` vanish.
    pub fn vanishes_from_three(&self) -> bool {
        self.eps.iter().skip(2).all(|&e| e == 0)
    }
}

/// Internal degrees that can carry generators of homological degree `i`.
fn internal_bound(ring: &QuotientRing, i: usize, caps: Caps) -> (u32, bool) {
    match residue_betti_degree_bound(ring, i) {
        Some(b) if b <= caps.internal => (b as u32, true),
        _ => (caps.internal.max(0) as u32, false),
    }
}

/// Acyclic closure of `k` over `Q` through generators of degree `cap + 1`.
pub fn tate_closure(q: &RingPresentation, caps: Caps) -> Result<(DGAlgebra, DeviationTable)> {
    let ring = QuotientRing::new(q, 0)?;
    close(DGAlgebra::new(q.clone())?, caps, |i| internal_bound(&ring, i, caps))
}

/// Kills the positive homology of a DG algebra; the generator counts are its deviations.
pub fn acyclic_closure_dg(a: &DGAlgebra, caps: Caps) -> Result<(DGAlgebra, DeviationTable)> {
    let ungraded = a.is_ungraded() && a.nbase() == 0;
    let wmax = if ungraded { 0 } else { caps.internal.max(0) as u32 };
    close(a.clone(), caps, |_| (wmax, ungraded))
}

fn close(mut a: DGAlgebra, caps: Caps, bound: impl Fn(usize) -> (u32, bool)) -> Result<(DGAlgebra, DeviationTable)> {
    let mut t = Tables::new();
    let top = caps.homological + 1;
    let mut eps = vec![0usize; top];
    let mut internal = vec![Vec::new(); top];
    let mut settled = true;
    for n in 0..caps.homological as u32 + 1 {
        let (wmax, ok) = bound(n as usize + 1);
        settled &= ok;
        for w in 0..=wmax {
            let classes = homology_basis(&a, &mut t, n, w);
            for z in classes {
                if n == 0 && w == 0 {
                    continue;
                }
                let deg = n + 1;
                let kind = if deg % 2 == 1 { GeneratorKind::Exterior } else { GeneratorKind::DividedPower };
                let k = eps[n as usize] + 1;
                a.add_generator(&format!("t{deg}_{k}"), deg, w, kind, z)?;
                eps[n as usize] += 1;
                internal[n as usize].push(w);
            }
        }
    }
    let qualifier = (!settled).then(|| format!("verified to internal degree {}", caps.internal));
    Ok((
        a,
        DeviationTable {
            eps,
            cap: caps.homological,
            internal_degrees: internal,
            settled,
            qualifier,
        },
    ))
}

/// `ε_1, ε_2, ε_3` only; enough for the complete-intersection test.
pub fn low_deviations(q: &RingPresentation, caps: Caps) -> Result<DeviationTable> {
    let caps = Caps {
        homological: 2,
        ..caps
    };
    Ok(tate_closure(q, caps)?.1)
}

#[cfg(test)]
mod tests {
    use super::super::dg_homology;
    use super::*;
    use crate::scalar::Field;

    fn pres(vars: &[&str], gens: &[&str]) -> RingPresentation {
        RingPresentation::parse(Field::Rational, vars, gens).unwrap()
    }

    #[test]
    fn koszul_homology() {
        let q = pres(&["x"], &[]);
        let k = koszul_complex(&q, &[Polynomial::parse(&q.ring, "x").unwrap()]).unwrap();
        let h = dg_homology(&k, Caps::new(3, 8).unwrap()).unwrap();
        assert_eq!(h.totals(0..=3), vec![1, 0, 0, 0]);

        let q = pres(&["x", "y"], &[]);
        let seq: Vec<Polynomial> = ["x^2", "y^2"].iter().map(|s| Polynomial::parse(&q.ring, s).unwrap()).collect();
        let k = koszul_complex(&q, &seq).unwrap();
        let h = dg_homology(&k, Caps::new(3, 8).unwrap()).unwrap();
        assert!(h.entries.keys().all(|(n, _)| *n == 0));
        assert_eq!(h.total(0), 4);

        let q = pres(&["x", "y"], &["x^2"]);
        let k = koszul_complex(&q, &[Polynomial::parse(&q.ring, "x*y").unwrap()]).unwrap();
        let cert = super::super::koszul_certificate(&k, Caps::new(2, 8).unwrap()).unwrap();
        assert!(!cert.acyclic_in_positive_degrees);
        assert!(cert.h1_cycle.is_some());
    }

    #[test]
    fn deviations() {
        let caps = Caps::new(4, 24).unwrap();
        let (_, d) = tate_closure(&pres(&["x"], &[]), caps).unwrap();
        assert_eq!(d.eps, vec![1, 0, 0, 0, 0]);
        let (_, d) = tate_closure(&pres(&["x"], &["x^2"]), caps).unwrap();
        assert_eq!(d.eps, vec![1, 1, 0, 0, 0]);
        let (a, d) = tate_closure(&pres(&["x", "y"], &["x^2", "y^2"]), caps).unwrap();
        assert_eq!(d.eps, vec![2, 2, 0, 0, 0]);
        assert!(d.settled);
        a.check_d_squared().unwrap();
        let h = dg_homology(&a, caps).unwrap();
        assert_eq!(h.entries.iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let d = low_deviations(&pres(&["x", "y"], &["x^2", "x*y", "y^2"]), caps).unwrap();
        assert!(d.eps(3) > 0);
        assert_eq!((d.eps(1), d.eps(2)), (2, 3));
    }

    #[test]
    fn closure_of_exterior_algebras() {
        let caps = Caps::new(5, 0).unwrap();
        for field in [Field::Rational, Field::prime(3).unwrap()] {
            let mut a = DGAlgebra::over_field(field);
            a.add_generator("x", 1, 0, GeneratorKind::Exterior, super::super::Element::zero()).unwrap();
            a.add_generator("y", 1, 0, GeneratorKind::Exterior, super::super::Element::zero()).unwrap();
            let (c, d) = acyclic_closure_dg(&a, caps).unwrap();
            assert_eq!(d.eps, vec![0, 2, 0, 0, 0, 0]);
            assert!(d.settled);
            assert_eq!(dg_homology(&c, caps).unwrap().totals(0..=5), vec![1, 0, 0, 0, 0, 0]);
        }
    }

    #[test]
    fn divided_powers_matter_in_positive_characteristic() {
        let q = RingPresentation::parse(Field::prime(2).unwrap(), &["x"], &["x^2"]).unwrap();
        let (a, d) = tate_closure(&q, Caps::new(5, 24).unwrap()).unwrap();
        assert_eq!(d.eps, vec![1, 1, 0, 0, 0, 0]);
        let h = dg_homology(&a, Caps::new(5, 24).unwrap()).unwrap();
        assert_eq!(h.entries.len(), 1);
    }
}
