//! Multivariate polynomials with positive integer variable weights.
//!
//! Monomials are ordered by weighted graded reverse lexicographic order:
//! higher weighted degree first, ties broken by the last variable in which the
//! exponents differ (smaller exponent wins).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::expr::{Expr, ExprError, ExprTarget, ParseError};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has weight 0")]
    ZeroWeight(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Exponent vector with its cached weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn new(exps: Vec<u32>, weights: &[u32]) -> Self {
        let deg = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        Monomial { exps, deg }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(), deg: self.deg + other.deg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial { exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(), deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(), weights)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable this monomial is a power of.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial ring `k[x_1, ..., x_n]` with weights.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<u32>,
}

/// Polynomial stored as a map from monomial to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F::Elem> {
        self.terms.get(m)
    }

    /// `true` when all terms have the same weighted degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.deg);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg).max()
    }

    fn add_term(&mut self, field: &F, m: Monomial, c: F::Elem) {
        if field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(e.get(), &c);
                if field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: &F, vars: &[(&str, u32)]) -> Result<Self, PolyError> {
        let mut names: Vec<String> = Vec::new();
        let mut weights = Vec::new();
        for (n, w) in vars {
            if names.iter().any(|m| m == n) {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
            if *w == 0 {
                return Err(PolyError::ZeroWeight(n.to_string()));
            }
            names.push(n.to_string());
            weights.push(*w);
        }
        Ok(PolyRing { field: field.clone(), names, weights })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        self.term(self.one_monomial(), c)
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        let mut p = Poly::zero();
        p.add_term(&self.field, m, c);
        p
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.term(self.monomial(e), self.field.one())
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.add_term(&self.field, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.add_term(&self.field, m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem, a: &Poly<F>) -> Poly<F> {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(c, x))).collect() }
    }

    /// `c * m * a`
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial, a: &Poly<F>) -> Poly<F> {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(n, x)| (n.mul(m), self.field.mul(c, x))).collect() }
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero();
        for (m, c) in &a.terms {
            for (n, d) in &b.terms {
                out.add_term(&self.field, m.mul(n), self.field.mul(c, d));
            }
        }
        out
    }

    pub fn pow(&self, a: &Poly<F>, e: u32) -> Poly<F> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, a: &Poly<F>) -> Poly<F> {
        match a.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv, a)
            }
        }
    }

    pub fn parse(&self, src: &str) -> Result<Poly<F>, PolyError> {
        let e = Expr::parse(src)?;
        Ok(e.eval(self)?)
    }

    pub fn from_expr(&self, e: &Expr) -> Result<Poly<F>, PolyError> {
        Ok(e.eval(self)?)
    }

    pub fn format(&self, a: &Poly<F>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, (m, c)) in a.terms().enumerate() {
            let neg_c = f.neg(c);
            // print the sign separately when the negation looks simpler
            let (sign, mag) = if f.format(&neg_c).len() < f.format(c).len()
                || (f.characteristic() == 0 && f.format(c).starts_with('-'))
            {
                ("-", neg_c)
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let ms = m.format(&self.names);
            if m.is_one() {
                out.push_str(&f.format(&mag));
            } else if f.is_one(&mag) {
                out.push_str(&ms);
            } else {
                out.push_str(&format!("{}*{}", f.format(&mag), ms));
            }
        }
        out
    }

    /// Describes the ring as `k[x:1, y:2]`.
    pub fn describe(&self) -> String {
        let vars: Vec<String> = self.names.iter().zip(&self.weights).map(|(n, w)| format!("{n}:{w}")).collect();
        format!("{}[{}]", self.field.name(), vars.join(", "))
    }

    /// All monomials of weighted degree exactly `d`.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        self.monomials_rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    fn monomials_rec(&self, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if left == 0 {
                out.push(self.monomial(cur.clone()));
            }
            return;
        }
        let w = self.weights[i];
        let mut e = 0;
        while e * w <= left {
            cur[i] = e;
            self.monomials_rec(i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
}

impl<F: Field> ExprTarget for PolyRing<F> {
    type F = F;
    type Value = Poly<F>;

    fn field(&self) -> &F {
        &self.field
    }
    fn constant(&self, c: F::Elem) -> Poly<F> {
        PolyRing::constant(self, c)
    }
    fn variable(&self, name: &str) -> Result<Poly<F>, ExprError> {
        self.var_index(name).map(|i| self.var(i)).ok_or_else(|| ExprError::UnknownVariable(name.to_string()))
    }
    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        PolyRing::add(self, a, b)
    }
    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        PolyRing::mul(self, a, b)
    }
    fn scale(&self, c: &F::Elem, a: &Poly<F>) -> Poly<F> {
        PolyRing::scale(self, c, a)
    }
}

impl<F: Field> fmt::Display for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qxy() -> PolyRing<Rationals> {
        PolyRing::new(&Rationals, &[("x", 1), ("y", 1)]).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let r = qxy();
        // degree first
        assert!(r.monomial(vec![0, 2]) > r.monomial(vec![1, 0]));
        // x^2 > xy > y^2 in grevlex
        assert!(r.monomial(vec![2, 0]) > r.monomial(vec![1, 1]));
        assert!(r.monomial(vec![1, 1]) > r.monomial(vec![0, 2]));
    }

    #[test]
    fn weighted_order() {
        let r = PolyRing::new(&Rationals, &[("u", 1), ("v", 2)]).unwrap();
        assert_eq!(r.monomial(vec![0, 1]).degree(), 2);
        // u^2 and v tie in degree; v has the larger last exponent so it is smaller
        assert!(r.monomial(vec![2, 0]) > r.monomial(vec![0, 1]));
    }

    #[test]
    fn arithmetic_and_format() {
        let r = qxy();
        let p = r.parse("(x + y)^2 - 2*x*y").unwrap();
        assert_eq!(r.format(&p), "x^2 + y^2");
        let q = r.parse("x^2 - y^2").unwrap();
        assert_eq!(r.format(&q), "x^2 - y^2");
        assert!(q.is_homogeneous());
        assert!(!r.parse("x - x^2").unwrap().is_homogeneous());
        assert_eq!(r.format(&r.parse("x/2").unwrap()), "1/2*x");
    }

    #[test]
    fn unknown_variable() {
        let r = PolyRing::new(&Rationals, &[("x", 1)]).unwrap();
        assert_eq!(r.parse("x*y"), Err(PolyError::Expr(ExprError::UnknownVariable("y".into()))));
    }

    #[test]
    fn prime_field_negatives_print_with_minus() {
        let f = PrimeField::new(101).unwrap();
        let r = PolyRing::new(&f, &[("x", 1), ("y", 1)]).unwrap();
        assert_eq!(r.format(&r.parse("x^2 - y^2").unwrap()), "x^2 - y^2");
    }

    #[test]
    fn slices() {
        let r = PolyRing::new(&Rationals, &[("u", 1), ("v", 2)]).unwrap();
        assert_eq!(r.monomials_of_degree(4).len(), 3);
        assert!(PolyRing::new(&Rationals, &[("x", 1), ("x", 1)]).is_err());
    }
}
