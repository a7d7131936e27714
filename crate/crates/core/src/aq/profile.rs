use std::collections::BTreeMap;

use serde::Serialize;

use super::{ls_cotangent, RelativePresentation};
use crate::dga::{dg_homology, dg_tor, tate_closure, AlgebraUnder, DGAlgebra};
use crate::error::{AlgebraError, Result};
use crate::model::minimal_model;
use crate::resolution::Caps;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurewiczReport {
    /// First positive degree with nonzero homology, `None` when none shows up through the cap.
    pub connectivity: Option<u32>,
    /// `Tor_s^ℓ(A, ℓ)` totals for `1 <= s <= n`.
    pub tor: Vec<usize>,
    /// `H^Q_s` totals over the same range.
    pub hq: Vec<usize>,
    pub agree: bool,
}

/// Compares `Tor_s(A, ℓ)` with the indecomposables of the minimal model up to the connectivity.
pub fn hurewicz_compare(a: &DGAlgebra, caps: Caps) -> Result<HurewiczReport> {
    let h = dg_homology(a, caps)?;
    if h.total(0) != 1 {
        return Err(AlgebraError::InvalidInput("the algebra is not connected: H_0 is not the ground field".into()));
    }
    let cap = caps.homological as u32;
    let connectivity = (1..=cap).find(|&s| h.total(s as i64) != 0);
    let top = connectivity.unwrap_or(cap);
    let ground = DGAlgebra::over_field(a.field);
    let under = AlgebraUnder::new(&ground, a.clone(), Vec::new(), Vec::new())?;
    let tor_table = dg_tor(&ground, &under, &AlgebraUnder::identity(&ground), caps)?;
    let mm = minimal_model(a, caps)?;
    let hq_all = mm.hq_dims();
    let tor: Vec<usize> = (1..=top).map(|s| tor_table.total(s as i64)).collect();
    let hq: Vec<usize> = (1..=top).map(|s| hq_all.get(s as usize).copied().unwrap_or(0)).collect();
    Ok(HurewiczReport {
        connectivity,
        agree: tor == hq,
        tor,
        hq,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Lichtenbaum–Schlessinger complex.
    Ls,
    /// `dim D_s = ε_{s+1}`, a proxy read off the Tate closure.
    Deviation,
    /// Generators of a minimal model.
    Model,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub s: usize,
    /// Internal degree to dimension.
    pub dims: BTreeMap<u32, usize>,
    pub total: usize,
    pub provenance: Provenance,
    pub settled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AQProfile {
    pub cap: usize,
    pub entries: Vec<ProfileEntry>,
    /// Least `s >= 1` past which every listed degree vanishes.
    pub vanishing_from: Option<usize>,
    pub unsettled: Vec<usize>,
    pub qualifier: Option<String>,
}

impl AQProfile {
    fn finish(cap: usize, entries: Vec<ProfileEntry>, qualifier: Option<String>) -> AQProfile {
        let unsettled: Vec<usize> = entries.iter().filter(|e| !e.settled).map(|e| e.s).collect();
        let last_nonzero = entries.iter().filter(|e| e.s >= 1 && e.total != 0).map(|e| e.s).max();
        let vanishing_from = if unsettled.iter().any(|&s| s >= 1) {
            None
        } else {
            match last_nonzero {
                Some(s) if s >= cap => None,
                Some(s) => Some(s + 1),
                None => Some(1),
            }
        };
        AQProfile {
            cap,
            entries,
            vanishing_from,
            unsettled,
            qualifier,
        }
    }

    pub fn total(&self, s: usize) -> Option<usize> {
        self.entries.iter().find(|e| e.s == s).map(|e| e.total)
    }
}

fn entry(s: usize, dims: BTreeMap<u32, usize>, provenance: Provenance, settled: bool) -> ProfileEntry {
    let dims: BTreeMap<u32, usize> = dims.into_iter().filter(|&(_, d)| d != 0).collect();
    ProfileEntry {
        s,
        total: dims.values().sum(),
        dims,
        provenance,
        settled,
    }
}

/// `D_s(S|R; k)` for `s <= cap`: exact for `s <= 2`, deviations above.
pub fn vanishing_profile(p: &RelativePresentation, caps: Caps) -> Result<AQProfile> {
    let cap = caps.homological;
    let ls = ls_cotangent(p, cap.min(2))?;
    let mut entries = vec![entry(0, ls.d0.clone(), Provenance::Ls, true)];
    if cap >= 1 {
        entries.push(entry(1, ls.d1.clone(), Provenance::Ls, true));
    }
    if cap >= 2 {
        entries.push(entry(2, ls.d2.clone(), Provenance::Ls, true));
    }
    let mut qualifier = None;
    if cap >= 2 && p.base_is_polynomial() {
        let target = p.target()?;
        let (_, eps) = tate_closure(&target, Caps { homological: cap, ..caps })?;
        let by_degree = |i: usize| {
            let mut m = BTreeMap::new();
            for &w in eps.internal_degrees.get(i - 1).map(Vec::as_slice).unwrap_or(&[]) {
                *m.entry(w).or_insert(0) += 1;
            }
            m
        };
        if by_degree(3) != entries[2].dims {
            return Err(AlgebraError::Differential(format!(
                "D_2 has dimensions {:?} but the Tate closure adjoins {:?} in degree 3",
                entries[2].dims,
                by_degree(3)
            )));
        }
        for s in 3..=cap {
            entries.push(entry(s, by_degree(s + 1), Provenance::Deviation, eps.settled));
        }
        qualifier = eps.qualifier.clone();
    } else if cap >= 3 {
        for s in 3..=cap {
            entries.push(entry(s, BTreeMap::new(), Provenance::Deviation, false));
        }
        qualifier = Some("higher degrees need a polynomial base".into());
    }
    Ok(AQProfile::finish(cap, entries, qualifier))
}

/// `H^Q_s(A)` for a connected DG algebra in characteristic zero.
pub fn vanishing_profile_dg(a: &DGAlgebra, caps: Caps) -> Result<AQProfile> {
    let mm = minimal_model(a, caps)?;
    let mut per: Vec<BTreeMap<u32, usize>> = vec![BTreeMap::new(); mm.cap as usize + 1];
    for g in &mm.model.generators {
        if g.degree <= mm.cap {
            *per[g.degree as usize].entry(g.weight).or_insert(0) += 1;
        }
    }
    let entries = per.into_iter().enumerate().map(|(s, d)| entry(s, d, Provenance::Model, true)).collect();
    Ok(AQProfile::finish(mm.cap as usize, entries, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{Element, GeneratorKind};
    use crate::poly::{Polynomial, RingPresentation};
    use crate::scalar::Field;

    fn pres(vars: &[&str], gens: &[&str]) -> RingPresentation {
        RingPresentation::parse(Field::Rational, vars, gens).unwrap()
    }

    fn polys(r: &RingPresentation, fs: &[&str]) -> Vec<Polynomial> {
        fs.iter().map(|f| Polynomial::parse(&r.ring, f).unwrap()).collect()
    }

    #[test]
    fn regular_sequence_vanishes_from_two() {
        let r = pres(&["x", "y"], &[]);
        let p = RelativePresentation::quotient(&r, polys(&r, &["x^2", "y^3"])).unwrap();
        let prof = vanishing_profile(&p, Caps::new(5, 12).unwrap()).unwrap();
        assert_eq!(prof.total(1), Some(2));
        assert_eq!(prof.vanishing_from, Some(2));
        assert!(prof.unsettled.is_empty());
    }

    #[test]
    fn non_complete_intersection_shows_in_degree_two() {
        let r = pres(&["x", "y"], &[]);
        let p = RelativePresentation::quotient(&r, polys(&r, &["x^2", "x*y"])).unwrap();
        let prof = vanishing_profile(&p, Caps::new(4, 12).unwrap()).unwrap();
        assert!(prof.total(2).unwrap() > 0);
        assert!(prof.total(3).unwrap() > 0);
        assert_eq!(prof.vanishing_from, None);
        assert_eq!(prof.entries[3].provenance, Provenance::Deviation);
    }

    #[test]
    fn identity_is_all_zero() {
        let r = pres(&["x", "y"], &[]);
        let p = RelativePresentation::quotient(&r, Vec::new()).unwrap();
        let prof = vanishing_profile(&p, Caps::new(4, 8).unwrap()).unwrap();
        assert!(prof.entries.iter().all(|e| e.total == 0));
        assert_eq!(prof.vanishing_from, Some(1));
    }

    fn exterior_one() -> DGAlgebra {
        let mut a = DGAlgebra::over_field(Field::Rational);
        a.add_generator("x", 1, 0, GeneratorKind::Exterior, Element::zero()).unwrap();
        a
    }

    #[test]
    fn hurewicz_on_exterior() {
        let r = hurewicz_compare(&exterior_one(), Caps::new(4, 0).unwrap()).unwrap();
        assert_eq!(r.connectivity, Some(1));
        assert_eq!((r.tor.clone(), r.hq.clone()), (vec![1], vec![1]));
        assert!(r.agree);
    }

    #[test]
    fn hurewicz_on_dual_numbers() {
        let a = crate::model::tests::square_zero_even(&["y"], 2);
        let r = hurewicz_compare(&a, Caps::new(4, 0).unwrap()).unwrap();
        assert_eq!(r.connectivity, Some(2));
        assert_eq!((r.tor.clone(), r.hq.clone()), (vec![0, 1], vec![0, 1]));
        assert!(r.agree);
    }

    #[test]
    fn hurewicz_on_contractible() {
        let mut a = exterior_one();
        a.add_generator("y", 2, 0, GeneratorKind::Polynomial, a.gen(0)).unwrap();
        let r = hurewicz_compare(&a, Caps::new(4, 0).unwrap()).unwrap();
        assert_eq!(r.connectivity, None);
        assert!(r.tor.iter().all(|&t| t == 0) && r.agree);
    }

    #[test]
    fn dg_profile_of_dual_numbers() {
        let a = crate::model::tests::square_zero_even(&["y"], 2);
        let prof = vanishing_profile_dg(&a, Caps::new(6, 0).unwrap()).unwrap();
        assert_eq!(prof.total(2), Some(1));
        assert_eq!(prof.total(5), Some(1));
    }
}
