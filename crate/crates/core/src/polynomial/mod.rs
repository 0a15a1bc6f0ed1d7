//! Exact multivariate polynomials over the integers in `x_1, ..., x_k` and
//! the formal parameter `beta`.
//!
//! Exponent vectors are dense: slot 0 holds the power of `beta`, slot `i`
//! the power of `x_i`. Terms are kept in canonical order (ascending power
//! of `beta`, then descending lexicographic order of the x-exponents), which
//! is also the order of the text and JSON forms.

mod operators;

pub use operators::{
    ascent_chain, divided_difference, grothendieck_oracle, grothendieck_oracle_along,
    isobaric_divided_difference, schubert_oracle, schubert_oracle_along, ChainChoice,
};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    /// Exact division left a remainder. Mathematically impossible for the
    /// operators here, so this indicates an arithmetic bug.
    #[error("internal error: {0}")]
    Internal(String),
    #[error("variable index x{index} is out of range 1..={n_vars}")]
    VariableOutOfRange { index: usize, n_vars: usize },
}

/// Dense exponent vector `[beta, x_1, ..., x_k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars + 1])
    }

    pub fn beta_degree(&self) -> u32 {
        self.0[0]
    }

    /// Exponents of `x_1, ..., x_k`.
    pub fn x_exponents(&self) -> &[u32] {
        &self.0[1..]
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.0[i]
    }

    fn padded(&self, n_vars: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(n_vars + 1, 0);
        Monomial(v)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn swapped(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0[0]
            .cmp(&other.0[0])
            .then_with(|| other.0[1..].cmp(&self.0[1..]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, 1)
    }

    pub fn constant(n_vars: usize, c: i64) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial::one(n_vars), BigInt::from(c));
        p
    }

    /// The single variable `x_i`.
    pub fn x(n_vars: usize, i: usize) -> Self {
        assert!((1..=n_vars).contains(&i), "x{i} outside 1..={n_vars}");
        let mut m = Monomial::one(n_vars);
        m.0[i] = 1;
        Self::monomial(n_vars, 1, 0, &m.0[1..])
    }

    /// The parameter `beta`.
    pub fn beta(n_vars: usize) -> Self {
        Self::monomial(n_vars, 1, 1, &vec![0; n_vars])
    }

    /// `coeff * beta^beta_exp * x^x_exps`; `x_exps` may be shorter than `n_vars`.
    pub fn monomial(n_vars: usize, coeff: i64, beta_exp: u32, x_exps: &[u32]) -> Self {
        assert!(x_exps.len() <= n_vars);
        let mut v = vec![beta_exp];
        v.extend_from_slice(x_exps);
        v.resize(n_vars + 1, 0);
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial(v), BigInt::from(coeff));
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
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

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(&m.padded(self.n_vars)).cloned().unwrap_or_default()
    }

    /// Same polynomial viewed in `n_vars` variables (only ever widens).
    pub fn widen(&self, n_vars: usize) -> Polynomial {
        let n = n_vars.max(self.n_vars);
        Polynomial {
            n_vars: n,
            terms: self.terms.iter().map(|(m, c)| (m.padded(n), c.clone())).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Applies `s_i`, exchanging `x_i` and `x_{i+1}`.
    pub fn swap_variables(&self, i: usize) -> Result<Polynomial, PolynomialError> {
        if i == 0 || i + 1 > self.n_vars {
            return Err(PolynomialError::VariableOutOfRange {
                index: i + 1,
                n_vars: self.n_vars,
            });
        }
        Ok(Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.swapped(i), c.clone())).collect(),
        })
    }

    /// Whether every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Substitutes integers for `beta` and/or some `x_i`; `None` keeps a variable formal.
    /// `xs` may be shorter than `n_vars`; missing entries are kept.
    pub fn specialize(&self, beta: Option<i64>, xs: &[Option<i64>]) -> Polynomial {
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            if let Some(b) = beta {
                coeff *= BigInt::from(b).pow(m.0[0]);
                rest.0[0] = 0;
            }
            for (k, value) in xs.iter().enumerate().take(self.n_vars) {
                if let Some(v) = value {
                    coeff *= BigInt::from(*v).pow(m.0[k + 1]);
                    rest.0[k + 1] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Full evaluation; variables missing from `xs` are set to 0.
    pub fn evaluate(&self, beta: i64, xs: &[i64]) -> BigInt {
        let xs: Vec<Option<i64>> = (0..self.n_vars).map(|k| Some(xs.get(k).copied().unwrap_or(0))).collect();
        let p = self.specialize(Some(beta), &xs);
        p.coefficient(&Monomial::one(self.n_vars))
    }

    /// Canonical text form, e.g. `2*b*x1^2*x2*x3 + x1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// JSON-ready term list in canonical order.
    pub fn to_term_list(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(m, c)| Term {
                coeff: c.clone(),
                beta: m.0[0],
                exps: m.0[1..].to_vec(),
            })
            .collect()
    }
}

/// One term of the JSON form: `{coeff, beta, exps}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub beta: u32,
    pub exps: Vec<u32>,
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Term", 3)?;
        match self.coeff.to_i64() {
            Some(c) => st.serialize_field("coeff", &c)?,
            None => st.serialize_field("coeff", &self.coeff.to_string())?,
        }
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("exps", &self.exps)?;
        st.end()
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self.to_term_list();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for t in &terms {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> Result<bool, fmt::Error> {
    let mut factors = Vec::new();
    for (k, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if k == 0 { "b".to_string() } else { format!("x{k}") };
        if e == 1 {
            factors.push(name);
        } else {
            factors.push(format!("{name}^{e}"));
        }
    }
    write!(f, "{}", factors.join("*"))?;
    Ok(!factors.is_empty())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = m.0.iter().all(|&e| e == 0);
            if constant {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

fn combine(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    let n = a.n_vars.max(b.n_vars);
    let mut out = a.widen(n);
    for (m, c) in &b.terms {
        let c = if negate_b { -c.clone() } else { c.clone() };
        out.add_term(m.padded(n), c);
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let n = self.n_vars.max(rhs.n_vars);
        let mut out = Polynomial::zero(n);
        for (ma, ca) in &self.terms {
            let ma = ma.padded(n);
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(&mb.padded(n)), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(0), |acc, p| &acc + &p)
    }
}

/// Which arithmetic operation [`arithmetic`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithmeticKind {
    Add,
    Sub,
    Mul,
}

pub fn arithmetic(a: &Polynomial, b: &Polynomial, kind: ArithmeticKind) -> Polynomial {
    match kind {
        ArithmeticKind::Add => a + b,
        ArithmeticKind::Sub => a - b,
        ArithmeticKind::Mul => a * b,
    }
}

/// Equality up to the number of declared variables.
pub fn same(a: &Polynomial, b: &Polynomial) -> bool {
    (a - b).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::x(3, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = arithmetic(&(&x(1) + &x(2)), &(&x(1) - &x(2)), ArithmeticKind::Mul);
        let expected = &(&x(1) * &x(1)) - &(&x(2) * &x(2));
        assert_eq!(p, expected);
        assert_eq!(p.to_text(), "x1^2 - x2^2");
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = &(&x(1) * &x(3)) + &Polynomial::constant(3, 7);
        assert_eq!(arithmetic(&p, &Polynomial::zero(3), ArithmeticKind::Add), p);
        assert_eq!(arithmetic(&p, &Polynomial::zero(0), ArithmeticKind::Add), p);
    }

    #[test]
    fn beta_expansion() {
        let b = Polynomial::beta(3);
        let one = Polynomial::one(3);
        let p = &(&one + &(&b * &x(1))) * &(&one + &(&b * &x(2)));
        assert_eq!(p.to_text(), "1 + b*x1 + b*x2 + b^2*x1*x2");
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn text_form_is_canonical() {
        let p = Polynomial::monomial(3, 2, 1, &[2, 1, 1]);
        assert_eq!(p.to_text(), "2*b*x1^2*x2*x3");
        assert_eq!(Polynomial::zero(2).to_text(), "0");
        assert_eq!((-&x(2)).to_text(), "-x2");
        let q = &Polynomial::constant(3, -3) - &x(1);
        assert_eq!(q.to_text(), "-x1 - 3");
        // insertion order does not matter
        let a = &(&x(3) + &x(1)) + &x(2);
        let b = &(&x(2) + &x(3)) + &x(1);
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_text(), "x1 + x2 + x3");
    }

    #[test]
    fn specialization() {
        let p = Polynomial::monomial(2, 1, 0, &[2, 1]);
        assert_eq!(p.specialize(Some(5), &[Some(2), Some(3)]), Polynomial::constant(2, 12));
        assert_eq!(p.specialize(None, &[]), p);
        assert_eq!(p.specialize(None, &[Some(2)]), Polynomial::monomial(2, 4, 0, &[0, 1]));
        assert_eq!(p.evaluate(0, &[2, 3]), BigInt::from(12));
    }

    #[test]
    fn json_form() {
        let p = &Polynomial::monomial(2, 2, 1, &[1, 0]) + &Polynomial::monomial(2, 1, 0, &[0, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":1,"beta":0,"exps":[0,1]},{"coeff":2,"beta":1,"exps":[1,0]}]"#
        );
    }

    #[test]
    fn swap_variables_bounds() {
        assert!(x(1).swap_variables(3).is_err());
        assert_eq!(x(1).swap_variables(1).unwrap(), x(2));
    }
}
