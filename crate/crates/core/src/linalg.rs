//! Sparse exact linear algebra: echelon forms, kernels, preimages.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::{Field, Scalar};

/// Sparse vector as coordinate map; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SVec {
    pub fn new() -> SVec {
        SVec::default()
    }

    pub fn unit(i: usize, field: Field) -> SVec {
        let mut v = SVec::new();
        v.entries.insert(i, field.one());
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> SVec {
        let mut v = SVec::new();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn first(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn add_at(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(e) => {
                let s = &*e + c;
                if s.is_zero() {
                    self.entries.remove(&i);
                } else {
                    *e = s;
                }
            }
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &SVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_at(i, &(c * x));
        }
    }

    pub fn scale(&self, c: &Scalar) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn into_pairs(self) -> Vec<(usize, Scalar)> {
        self.entries.into_iter().collect()
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SVec,
    combo: SVec,
}

/// Row echelon basis of a subspace. Each stored row is normalized to have
/// coefficient one at its pivot (its smallest index). Optionally tracks how
/// each row was formed from the inserted generators.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: HashMap<usize, Row>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon {
            field,
            rows: HashMap::new(),
            track: false,
            inserted: 0,
        }
    }

    pub fn tracked(field: Field) -> Echelon {
        Echelon {
            track: true,
            ..Echelon::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Reduces `v` against the rows; returns the residue and the combination
    /// of generators subtracted (empty when untracked).
    fn reduce_inner(&self, v: &SVec) -> (SVec, SVec) {
        let mut w = v.clone();
        let mut combo = SVec::new();
        let mut cursor = 0usize;
        loop {
            let next = w
                .entries
                .range(cursor..)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((i, c)) = next else { break };
            let row = &self.rows[&i];
            let neg = -&c;
            w.axpy(&neg, &row.vec);
            if self.track {
                combo.axpy(&c, &row.combo);
            }
            cursor = i + 1;
        }
        (w, combo)
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce(&self, v: &SVec) -> SVec {
        self.reduce_inner(v).0
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts generator `v` (index = insertion count). Returns `Err(combo)`
    /// when `v` is dependent, where `combo` expresses a relation among the
    /// inserted generators (tracked mode) including `v` itself.
    pub fn insert(&mut self, v: &SVec) -> Result<usize, SVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let (w, combo) = self.reduce_inner(v);
        if w.is_zero() {
            let mut rel = SVec::new();
            if self.track {
                rel.add_at(idx, &self.field.one());
                rel.axpy(&self.field.from_i64(-1), &combo);
            }
            return Err(rel);
        }
        let (p, c) = w.first().map(|(p, c)| (p, c.clone())).unwrap();
        let inv = c.inv().unwrap();
        let mut own = SVec::new();
        if self.track {
            own.add_at(idx, &self.field.one());
            own.axpy(&self.field.from_i64(-1), &combo);
        }
        self.rows.insert(
            p,
            Row {
                vec: w.scale(&inv),
                combo: own.scale(&inv),
            },
        );
        Ok(p)
    }

    /// In tracked mode: coefficients `c` with `sum c_j gen_j = v`, if any.
    pub fn solve(&self, v: &SVec) -> Option<SVec> {
        assert!(self.track, "solve requires a tracked echelon");
        let (w, combo) = self.reduce_inner(v);
        w.is_zero().then_some(combo)
    }
}

/// Kernel basis (source coordinates) and image echelon of the linear map
/// sending basis vector `j` to `images[j]`.
pub fn kernel_and_image(field: Field, images: &[SVec]) -> (Vec<SVec>, Echelon) {
    let mut ech = Echelon::tracked(field);
    let mut kernel = Vec::new();
    for v in images {
        if let Err(rel) = ech.insert(v) {
            kernel.push(rel);
        }
    }
    (kernel, ech)
}

pub fn rank(field: Field, vectors: &[SVec]) -> usize {
    let mut e = Echelon::new(field);
    for v in vectors {
        let _ = e.insert(v);
    }
    e.rank()
}

/// Homology of `A --f--> B --g--> C` at `B`: given images of a basis of A in B
/// (`incoming`) and images of a basis of B in C (`outgoing`), returns
/// representatives of a basis of `ker g / im f` as vectors in B.
pub fn homology_reps(field: Field, incoming: &[SVec], outgoing: &[SVec]) -> Vec<SVec> {
    let (cycles, _) = kernel_and_image(field, outgoing);
    let mut bound = Echelon::new(field);
    for v in incoming {
        let _ = bound.insert(v);
    }
    let mut reps = Vec::new();
    for z in cycles {
        if bound.insert(&z).is_ok() {
            reps.push(z);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, xs: &[i64]) -> SVec {
        SVec::from_pairs(xs.iter().enumerate().map(|(i, &x)| (i, field.from_i64(x))))
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let q = Field::Rational;
        let images = vec![v(q, &[1, 2]), v(q, &[2, 4]), v(q, &[0, 0])];
        let (ker, img) = kernel_and_image(q, &images);
        assert_eq!(img.rank(), 1);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let mut acc = SVec::new();
            for (j, c) in k.iter() {
                acc.axpy(c, &images[j]);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn solve_finds_preimage() {
        let q = Field::Rational;
        let mut e = Echelon::tracked(q);
        e.insert(&v(q, &[1, 1, 0])).unwrap();
        e.insert(&v(q, &[0, 1, 1])).unwrap();
        let c = e.solve(&v(q, &[1, 2, 1])).unwrap();
        assert_eq!(c, v(q, &[1, 1]));
        assert!(e.solve(&v(q, &[0, 0, 1])).is_none());
    }

    #[test]
    fn reduction_is_canonical() {
        let f = Field::Prime(5);
        let mut e = Echelon::new(f);
        e.insert(&v(f, &[1, 2, 3])).unwrap();
        let a = e.reduce(&v(f, &[0, 1, 1]));
        let b = e.reduce(&v(f, &[1, 3, 4]));
        assert_eq!(a, b);
    }

    #[test]
    fn homology_of_short_complex() {
        let q = Field::Rational;
        // k --(1,1)--> k^2 --(1,-1)--> k: homology zero in the middle
        let inc = vec![v(q, &[1, 1])];
        let out = vec![v(q, &[1]), v(q, &[-1])];
        assert!(homology_reps(q, &inc, &out).is_empty());
        assert_eq!(homology_reps(q, &[], &out).len(), 1);
    }
}
