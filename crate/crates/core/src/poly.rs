//! Monomials, monomial orders and sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::expr::{parse_expr, Expr};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Degrevlex,
    Deglex,
    Lex,
    /// Block order: the first `k` variables (degrevlex) dominate the rest
    /// (degrevlex). Eliminates the first block.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Degrevlex => "degrevlex".into(),
            MonomialOrder::Deglex => "deglex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elim{k}"),
        }
    }
}

/// Exponent vector with its cached weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, weights: &[u32]) -> Monomial {
        assert_eq!(exps.len(), weights.len());
        let degree = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        Monomial::new(
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
            weights,
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

/// The ambient polynomial ring `k[x_1..x_n]` with weights and an order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str]) -> Arc<PolyRing> {
        Self::with(field, vars.iter().map(|s| s.to_string()).collect(), None, MonomialOrder::Degrevlex)
            .expect("valid ring")
    }

    pub fn with(
        field: Field,
        vars: Vec<String>,
        weights: Option<Vec<u32>>,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let weights = weights.unwrap_or_else(|| vec![1; vars.len()]);
        if weights.len() != vars.len() || weights.iter().any(|&w| w == 0) {
            return Err(AlgebraError::InvalidInput("weights must be positive, one per variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidInput(format!("duplicate variable {v}")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > vars.len() {
                return Err(AlgebraError::InvalidInput("elimination block too large".into()));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars,
            weights,
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(e)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => lex(&a.exps, &b.exps),
            MonomialOrder::Deglex => a.degree.cmp(&b.degree).then_with(|| lex(&a.exps, &b.exps)),
            MonomialOrder::Degrevlex => a.degree.cmp(&b.degree).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination(k) => {
                let block_deg = |m: &Monomial, r: std::ops::Range<usize>| -> u32 {
                    r.map(|i| m.exps[i] * self.weights[i]).sum()
                };
                let n = self.nvars();
                block_deg(a, 0..k)
                    .cmp(&block_deg(b, 0..k))
                    .then_with(|| revlex(&a.exps[..k], &b.exps[..k]))
                    .then_with(|| block_deg(a, k..n).cmp(&block_deg(b, k..n)))
                    .then_with(|| revlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    /// All monomials of the given weighted degree, in no particular order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        self.fill(0, degree, &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if rest == 0 {
                out.push(self.monomial(cur.clone()));
            }
            return;
        }
        let w = self.weights[i];
        let mut e = 0;
        while e * w <= rest {
            cur[i] = e;
            self.fill(i + 1, rest - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A polynomial with terms sorted strictly descending in the ring order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Scalar, Monomial)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl Eq for Polynomial {}

pub enum PolyOp {
    Add,
    Mul,
}

pub enum Operand<'a> {
    Poly(&'a Polynomial),
    Scalar(&'a Scalar),
}

/// Checked arithmetic entry point: rejects operands from different rings.
pub fn poly_arith(op: PolyOp, f: &Polynomial, g: Operand<'_>) -> Result<Polynomial> {
    match g {
        Operand::Scalar(c) => {
            if c.field() != f.ring.field {
                return Err(AlgebraError::CharacteristicMismatch);
            }
            match op {
                PolyOp::Mul => Ok(f.scale(c)),
                PolyOp::Add => Ok(f.add(&Polynomial::constant(&f.ring, c.clone()))),
            }
        }
        Operand::Poly(g) => {
            if g.ring.field != f.ring.field {
                return Err(AlgebraError::CharacteristicMismatch);
            }
            if *g.ring != *f.ring {
                return Err(AlgebraError::RingMismatch);
            }
            Ok(match op {
                PolyOp::Add => f.add(g),
                PolyOp::Mul => f.mul(g),
            })
        }
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Polynomial {
        Self::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Self::constant(ring, ring.field.one())
    }

    pub fn term(ring: &Arc<PolyRing>, c: Scalar, m: Monomial) -> Polynomial {
        let terms = if c.is_zero() { vec![] } else { vec![(c, m)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Self::term(ring, ring.field.one(), ring.var_monomial(i))
    }

    /// Builds a polynomial from arbitrary terms, collecting and sorting.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Scalar, Monomial)>) -> Polynomial {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (c, m) in terms {
            let e = acc.entry(m).or_insert_with(|| ring.field.zero());
            *e = &*e + &c;
        }
        let mut terms: Vec<(Scalar, Monomial)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect();
        terms.sort_by(|a, b| ring.cmp(&b.1, &a.1));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
        let e = parse_expr(text).map_err(|e| AlgebraError::InvalidInput(e.to_string()))?;
        Self::from_expr(ring, &e)
    }

    pub fn from_expr(ring: &Arc<PolyRing>, e: &Expr) -> Result<Polynomial> {
        Ok(match e {
            Expr::Num(n, d) => {
                let c = ring
                    .field
                    .fraction(*n, *d)
                    .ok_or_else(|| AlgebraError::InvalidInput(format!("{n}/{d} undefined in {}", ring.field)))?;
                Polynomial::constant(ring, c)
            }
            Expr::Var(v) => {
                let i = ring
                    .var_index(v)
                    .ok_or_else(|| AlgebraError::InvalidInput(format!("unknown variable {v}")))?;
                Polynomial::var(ring, i)
            }
            Expr::Neg(a) => Self::from_expr(ring, a)?.neg(),
            Expr::Add(a, b) => Self::from_expr(ring, a)?.add(&Self::from_expr(ring, b)?),
            Expr::Sub(a, b) => Self::from_expr(ring, a)?.sub(&Self::from_expr(ring, b)?),
            Expr::Mul(a, b) => Self::from_expr(ring, a)?.mul(&Self::from_expr(ring, b)?),
            Expr::Pow(a, n) => Self::from_expr(ring, a)?.pow(*n),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Scalar, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Result<(Scalar, Monomial)> {
        self.terms.first().cloned().ok_or(AlgebraError::ZeroPolynomial)
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].1
    }

    pub fn lc(&self) -> &Scalar {
        &self.terms[0].0
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].1.degree() == w[1].1.degree())
    }

    /// Weighted degree of a homogeneous polynomial (max degree otherwise).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.ring.cmp(&self.terms[i].1, &other.terms[j].1) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].0 + &other.terms[j].0;
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
        }
    }

    /// `c * m * self`; monomial multiplication preserves the order.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, n)| (a * c, n.mul(m))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        for (c, m) in &other.terms {
            acc = acc.add(&self.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Monic rescaling; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((c, _)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Re-embeds into a ring with the same variables in a prefix/suffix
    /// arrangement: `map[i]` is the target index of variable `i`.
    pub fn embed(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut e = vec![0; target.nvars()];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[map[i]] += x;
                }
                (c.clone(), target.monomial(e))
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Constant term.
    pub fn constant_coefficient(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(_, m)| m.is_one())
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Component of the given weighted degree.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| t.1.degree() == degree).cloned().collect(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(_, n)| n == m)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(_, m)| m.exps()[i] > 0)
            .map(|(c, m)| {
                let mut e = m.exps().to_vec();
                let k = e[i];
                e[i] -= 1;
                (c * &self.ring.field.from_i64(k as i64), self.ring.monomial(e))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&self.ring.format_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

/// `R = k[x]/I` as given by the user: ambient ring plus ideal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub ring: Arc<PolyRing>,
    pub ideal: Vec<Polynomial>,
}

impl RingPresentation {
    pub fn new(ring: Arc<PolyRing>, ideal: Vec<Polynomial>) -> Result<RingPresentation> {
        if ideal.iter().any(|g| **g.ring() != *ring) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(RingPresentation {
            ring,
            ideal: ideal.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Convenience constructor: `parse(QQ, &["x","y"], &["x^2", "x*y"])`.
    pub fn parse(field: Field, vars: &[&str], gens: &[&str]) -> Result<RingPresentation> {
        let ring = PolyRing::new(field, vars);
        let ideal = gens
            .iter()
            .map(|g| Polynomial::parse(&ring, g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, ideal)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.ideal.iter().all(|g| g.is_homogeneous())
    }

    pub fn require_homogeneous(&self) -> Result<()> {
        match self.ideal.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(AlgebraError::Inhomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Graded-local: homogeneous ideal inside the maximal graded ideal.
    pub fn require_graded_local(&self) -> Result<()> {
        self.require_homogeneous()?;
        if self.ideal.iter().any(|g| !g.constant_coefficient().is_zero()) {
            return Err(AlgebraError::InvalidInput("ideal contains a unit".into()));
        }
        Ok(())
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ring.field, self.ring.vars.join(","))?;
        if !self.ideal.is_empty() {
            let gens: Vec<String> = self.ideal.iter().map(|g| g.to_string()).collect();
            write!(f, " / ({})", gens.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qxy() -> Arc<PolyRing> {
        PolyRing::new(Field::Rational, &["x", "y"])
    }

    #[test]
    fn binomial_square() {
        let r = qxy();
        let s = Polynomial::parse(&r, "x+y").unwrap();
        assert_eq!(s.mul(&s), Polynomial::parse(&r, "x^2 + 2*x*y + y^2").unwrap());
        let r2 = PolyRing::new(Field::Prime(2), &["x", "y"]);
        let s2 = Polynomial::parse(&r2, "x+y").unwrap();
        assert_eq!(s2.mul(&s2), Polynomial::parse(&r2, "x^2 + y^2").unwrap());
        let f = Polynomial::parse(&r, "x^2 - y").unwrap();
        assert!(f.mul(&Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn leading_terms_follow_order() {
        let r = qxy();
        let f = Polynomial::parse(&r, "x^2 + x*y^2").unwrap();
        assert_eq!(f.leading_term().unwrap().1, r.monomial(vec![1, 2]));
        let rl = PolyRing::with(Field::Rational, vec!["x".into(), "y".into()], None, MonomialOrder::Lex).unwrap();
        let g = Polynomial::parse(&rl, "x^2 + x*y^2").unwrap();
        assert_eq!(g.leading_term().unwrap().1, rl.monomial(vec![2, 0]));
        let h = Polynomial::parse(&r, "3*x + 2*x").unwrap();
        assert_eq!(h.leading_term().unwrap(), (Field::Rational.from_i64(5), r.monomial(vec![1, 0])));
        assert_eq!(Polynomial::zero(&r).leading_term(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn checked_arith_rejects_mismatch() {
        let a = Polynomial::parse(&qxy(), "x").unwrap();
        let other = PolyRing::new(Field::Rational, &["x", "z"]);
        let b = Polynomial::parse(&other, "x").unwrap();
        assert_eq!(poly_arith(PolyOp::Add, &a, Operand::Poly(&b)), Err(AlgebraError::RingMismatch));
        let c = Field::Prime(3).one();
        assert_eq!(
            poly_arith(PolyOp::Mul, &a, Operand::Scalar(&c)),
            Err(AlgebraError::CharacteristicMismatch)
        );
    }

    #[test]
    fn degrevlex_breaks_ties_by_last_variable() {
        let r = PolyRing::new(Field::Rational, &["x", "y", "z"]);
        // x*z < y^2 in degrevlex
        assert_eq!(r.cmp(&r.monomial(vec![1, 0, 1]), &r.monomial(vec![0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn display_round_trips() {
        let r = qxy();
        let f = Polynomial::parse(&r, "-x^2 + 1/2*x*y - 3").unwrap();
        assert_eq!(Polynomial::parse(&r, &f.to_string()).unwrap(), f);
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
        proptest::collection::vec((-5i64..5, 0u32..3, 0u32..3), 0..5)
    }

    fn build(r: &Arc<PolyRing>, t: &[(i64, u32, u32)]) -> Polynomial {
        Polynomial::from_terms(
            r,
            t.iter().map(|&(c, a, b)| (r.field.from_i64(c), r.monomial(vec![a, b]))).collect(),
        )
    }

    proptest! {
        #[test]
        fn add_commutative_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let r = qxy();
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            let again = Polynomial::from_terms(&r, a.terms().to_vec());
            prop_assert_eq!(again, a);
        }

        #[test]
        fn leading_term_multiplicative(a in arb_poly(), b in arb_poly()) {
            let r = qxy();
            let (a, b) = (build(&r, &a), build(&r, &b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (ca, ma) = a.leading_term().unwrap();
            let (cb, mb) = b.leading_term().unwrap();
            let (c, m) = a.mul(&b).leading_term().unwrap();
            prop_assert_eq!(c, &ca * &cb);
            prop_assert_eq!(m, ma.mul(&mb));
        }
    }
}
