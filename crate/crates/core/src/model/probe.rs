use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::ODerivationData;
use crate::linalg::{rank, SVec};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMethod {
    Window,
    FreeLie,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct O1ProbeReport {
    pub iterations: usize,
    /// Name of the generator whose dual functional survives.
    pub witness: Option<String>,
    /// Largest `k <= iterations` with `(𝒪₁*)^k u != 0` for some `u`.
    pub survived: usize,
    /// Longest chain the model window can host.
    pub window_capacity: usize,
    pub nilpotency_index: Option<usize>,
    pub settled: bool,
    pub method: ProbeMethod,
    /// Ranks of `𝒪₁^k` in the window agree with the free Lie model.
    pub window_consistent: Option<bool>,
    pub qualifier: Option<String>,
}

/// Iterates `𝒪₁*` on the dual of `J/J²` through the model window, extending
/// through the free Lie superalgebra when the target is square-zero.
pub fn o1_probe(data: &ODerivationData, cap: u32, iterations: usize) -> O1ProbeReport {
    let r = &data.reduced;
    let degrees: Vec<u32> = r.generators.iter().map(|g| g.degree).collect();
    let names: Vec<String> = r.generators.iter().map(|g| g.name.clone()).collect();
    let window = probe_matrix(r.field, &degrees, data.n + 1, &data.o1, cap, iterations);
    let mut report = O1ProbeReport {
        iterations,
        witness: window.witness.map(|j| names[j].clone()),
        survived: window.survived,
        window_capacity: window.capacity,
        nilpotency_index: window.nilpotency_index,
        settled: window.settled,
        method: ProbeMethod::Window,
        window_consistent: None,
        qualifier: (!window.settled).then(|| format!("window too small: chains of length at most {} fit below degree {cap}", window.capacity)),
    };
    if report.settled {
        return report;
    }
    let Some(shape) = &data.square_zero else {
        return report;
    };
    let lie = FreeLie::new(&shape.degrees);
    let consistent = lie.matches_window(&window, &degrees, data.n, shape.letter, cap);
    report.window_consistent = Some(consistent);
    if !consistent {
        report.qualifier = Some("free Lie extension disagrees with the model window".into());
        return report;
    }
    let step = data.n + 1;
    match lie.surviving_letter(shape.letter, iterations) {
        Some(b) => {
            let name = r
                .generators
                .iter()
                .position(|g| g.degree + 1 == lie.degrees[b])
                .map(|j| names[j].clone())
                .unwrap_or_else(|| format!("letter {b}"));
            report.witness = Some(name);
            report.survived = iterations;
            report.nilpotency_index = None;
            report.settled = true;
            report.method = ProbeMethod::FreeLie;
            report.qualifier = Some(format!(
                "beyond the window (step {step}) via the free Lie superalgebra, checked against the window"
            ));
        }
        None => {
            if let Some(k) = lie.nilpotency_index(shape.letter, iterations) {
                report.nilpotency_index = Some(k);
                report.settled = true;
                report.method = ProbeMethod::FreeLie;
                report.qualifier = Some("nilpotent on the whole free Lie superalgebra".into());
            }
        }
    }
    report
}

pub(crate) struct WindowProbe {
    pub witness: Option<usize>,
    pub survived: usize,
    pub capacity: usize,
    pub nilpotency_index: Option<usize>,
    pub settled: bool,
    /// `ranks[k-1][D]`: rank of `𝒪₁^k` on sources of degree `D`.
    pub ranks: Vec<BTreeMap<u32, usize>>,
}

/// Powers of a degree-lowering operator given by columns `o1`.
pub(crate) fn probe_matrix(field: Field, degrees: &[u32], step: u32, o1: &[Vec<(usize, Scalar)>], cap: u32, iterations: usize) -> WindowProbe {
    let capacity = match degrees.iter().min() {
        Some(&lo) if cap >= lo => ((cap - lo) / step) as usize,
        _ => 0,
    };
    let apply = |v: &SVec| -> SVec {
        let mut out = SVec::new();
        for (i, c) in v.iter() {
            for (j, x) in &o1[i] {
                out.add_at(*j, &(c * x));
            }
        }
        out
    };
    let mut current: Vec<SVec> = (0..degrees.len()).map(|i| SVec::unit(i, field)).collect();
    let mut survived = if degrees.is_empty() { 0 } else { usize::MAX };
    let mut nilpotency_index = None;
    let mut ranks = Vec::new();
    for k in 1..=iterations {
        current = current.iter().map(apply).collect();
        let mut per_degree: BTreeMap<u32, Vec<SVec>> = BTreeMap::new();
        for (i, v) in current.iter().enumerate() {
            per_degree.entry(degrees[i]).or_default().push(v.clone());
        }
        ranks.push(per_degree.iter().map(|(d, vs)| (*d, rank(field, vs))).collect());
        if current.iter().all(SVec::is_zero) {
            nilpotency_index = Some(k);
            survived = k - 1;
            break;
        }
    }
    if survived == usize::MAX {
        survived = iterations;
    }
    let witness = if nilpotency_index.is_none() && !degrees.is_empty() {
        current.iter().find_map(|v| v.first().map(|(j, _)| j))
    } else {
        None
    };
    let settled = witness.is_some() || iterations <= capacity || nilpotency_index.is_some_and(|k| k <= capacity);
    WindowProbe {
        witness,
        survived,
        capacity,
        nilpotency_index,
        settled,
        ranks,
    }
}

type Word = Vec<u8>;
type TElem = BTreeMap<Word, Scalar>;

/// Free Lie superalgebra on odd letters of the given degrees, inside the
/// tensor algebra.
struct FreeLie {
    degrees: Vec<u32>,
}

impl FreeLie {
    /// Letters of `V` in degree `d` sit in Lie degree `d + 1`.
    fn new(v_degrees: &[u32]) -> FreeLie {
        FreeLie {
            degrees: v_degrees.iter().map(|d| d + 1).collect(),
        }
    }

    fn degree(&self, w: &Word) -> u32 {
        w.iter().map(|&l| self.degrees[l as usize]).sum()
    }

    fn bracket(&self, u: &TElem, w: &TElem) -> TElem {
        let mut out = TElem::new();
        for (a, x) in u {
            for (b, y) in w {
                let c = x * y;
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                add(&mut out, ab, &c);
                let sign = (self.degree(a) * self.degree(b)) % 2 == 1;
                let mut ba = b.clone();
                ba.extend_from_slice(a);
                let c = if sign { c } else { -&c };
                add(&mut out, ba, &c);
            }
        }
        out
    }

    fn letter(&self, l: usize) -> TElem {
        let mut e = TElem::new();
        e.insert(vec![l as u8], Field::Rational.one());
        e
    }

    /// Spanning sets of `L` by Lie degree up to `top`.
    fn basis_by_degree(&self, top: u32) -> BTreeMap<u32, Vec<TElem>> {
        let mut out: BTreeMap<u32, Vec<TElem>> = BTreeMap::new();
        let mut layer: Vec<TElem> = (0..self.degrees.len()).map(|l| self.letter(l)).collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for e in &layer {
                let d = self.degree(e.keys().next().expect("nonzero"));
                if d > top {
                    continue;
                }
                out.entry(d).or_default().push(e.clone());
                for l in 0..self.degrees.len() {
                    let b = self.bracket(&self.letter(l), e);
                    if !b.is_empty() {
                        next.push(b);
                    }
                }
            }
            layer = independent(next);
        }
        out.into_iter().map(|(d, v)| (d, independent(v))).collect()
    }

    fn ad_power(&self, a: usize, k: usize, e: &TElem) -> TElem {
        let la = self.letter(a);
        let mut cur = e.clone();
        for _ in 0..k {
            cur = self.bracket(&la, &cur);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    fn surviving_letter(&self, a: usize, k: usize) -> Option<usize> {
        (0..self.degrees.len()).filter(|&b| b != a).find(|&b| !self.ad_power(a, k, &self.letter(b)).is_empty())
    }

    /// `ad(a)` nilpotent on the complement of `a` when `L` has only the letter `a`.
    fn nilpotency_index(&self, a: usize, iterations: usize) -> Option<usize> {
        if self.degrees.len() != 1 {
            return None;
        }
        let aa = self.bracket(&self.letter(a), &self.letter(a));
        (0..=iterations).find(|&k| self.ad_power(a, k, &aa).is_empty())
    }

    /// Generator counts and ranks of `𝒪₁^k` against `L` with `a` removed.
    fn matches_window(&self, window: &WindowProbe, y_degrees: &[u32], n: u32, a: usize, cap: u32) -> bool {
        let basis = self.basis_by_degree(cap + 1);
        let complement = |d: u32| -> Vec<TElem> {
            let mut v = basis.get(&d).cloned().unwrap_or_default();
            if d == self.degrees[a] {
                v.retain(|e| *e != self.letter(a));
            }
            v
        };
        for d in 1..=cap {
            let count = y_degrees.iter().filter(|&&g| g == d).count();
            if complement(d + 1).len() != count {
                return false;
            }
        }
        let step = n + 1;
        for (k, ranks) in window.ranks.iter().enumerate() {
            let k = k + 1;
            for (&src, &r) in ranks {
                if src > cap || src < k as u32 * step {
                    continue;
                }
                let e = src + 1 - k as u32 * step;
                let images: Vec<TElem> = complement(e).iter().map(|u| self.ad_power(a, k, u)).collect();
                if lie_rank(&images) != r {
                    return false;
                }
            }
        }
        true
    }
}

fn add(e: &mut TElem, w: Word, c: &Scalar) {
    let v = match e.get(&w) {
        Some(x) => x + c,
        None => c.clone(),
    };
    if v.is_zero() {
        e.remove(&w);
    } else {
        e.insert(w, v);
    }
}

fn to_vectors(elems: &[TElem]) -> Vec<SVec> {
    let mut index: HashMap<Word, usize> = HashMap::new();
    elems
        .iter()
        .map(|e| {
            SVec::from_pairs(e.iter().map(|(w, c)| {
                let n = index.len();
                (*index.entry(w.clone()).or_insert(n), c.clone())
            }))
        })
        .collect()
}

fn lie_rank(elems: &[TElem]) -> usize {
    rank(Field::Rational, &to_vectors(elems))
}

fn independent(elems: Vec<TElem>) -> Vec<TElem> {
    let vs = to_vectors(&elems);
    let mut e = crate::linalg::Echelon::new(Field::Rational);
    elems
        .into_iter()
        .zip(vs)
        .filter_map(|(x, v)| e.insert(&v).is_ok().then_some(x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::tests::{pbw_lie_dims, square_zero_even};
    use super::super::{minimal_model, o_decomposition};
    use super::*;
    use crate::resolution::Caps;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn zero_operator_has_no_witness() {
        let p = probe_matrix(Field::Rational, &[1, 2, 3], 2, &[vec![], vec![], vec![]], 3, 4);
        assert_eq!(p.witness, None);
        assert_eq!(p.nilpotency_index, Some(1));
    }

    #[test]
    fn nilpotent_chain_of_three() {
        // y3 -> y2 -> y1 -> 0 with step 1
        let o1 = vec![vec![], vec![(0, q(1))], vec![(1, q(1))]];
        for it in 1..=2 {
            assert!(probe_matrix(Field::Rational, &[1, 2, 3], 1, &o1, 3, it).witness.is_some());
        }
        for it in 3..=5 {
            let p = probe_matrix(Field::Rational, &[1, 2, 3], 1, &o1, 3, it);
            assert_eq!(p.witness, None);
            assert_eq!(p.nilpotency_index, Some(3));
        }
    }

    #[test]
    fn lie_dims_match_pbw() {
        let lie = FreeLie::new(&[0, 0]);
        let b = lie.basis_by_degree(6);
        let pbw = pbw_lie_dims(2, 6);
        for k in 1..=6u32 {
            assert_eq!(b.get(&k).map_or(0, Vec::len), pbw[k as usize], "degree {k}");
        }
    }

    #[test]
    fn square_zero_witness_survives() {
        let a = square_zero_even(&["x", "y"], 2);
        let mm = minimal_model(&a, Caps::new(12, 0).unwrap()).unwrap();
        let d = o_decomposition(&mm, 0).unwrap();
        let short = o1_probe(&d, 12, 3);
        assert_eq!(short.method, ProbeMethod::Window);
        assert!(short.witness.is_some());
        let long = o1_probe(&d, 12, 16);
        assert_eq!(long.window_consistent, Some(true));
        assert_eq!(long.method, ProbeMethod::FreeLie);
        assert!(long.witness.is_some());
        assert_eq!(long.survived, 16);
    }

    #[test]
    fn single_letter_is_nilpotent() {
        let a = square_zero_even(&["y"], 2);
        let mm = minimal_model(&a, Caps::new(8, 0).unwrap()).unwrap();
        let d = o_decomposition(&mm, 0).unwrap();
        let r = o1_probe(&d, 8, 16);
        assert_eq!(r.witness, None);
        assert!(r.settled);
    }
}
