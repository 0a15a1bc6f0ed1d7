use super::{Monomial, Polynomial, PolynomialError};
use crate::coxeter::Permutation;

/// Exact quotient of `numerator` by `x_i - x_{i+1}`.
///
/// Synthetic division in `x_i`: each term `c * x_i^d * m` with `d > 0` is
/// rewritten as `c * x_i^(d-1) * m * (x_i - x_{i+1}) + c * x_i^(d-1) * x_{i+1} * m`.
/// Whatever is left once no term has positive `x_i`-degree is the remainder,
/// which must vanish.
fn divide_by_root(numerator: Polynomial, i: usize) -> Result<Polynomial, PolynomialError> {
    let n = numerator.n_vars;
    let mut rest = numerator;
    let mut quotient = Polynomial::zero(n);
    loop {
        let top = rest
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .max_by_key(|(m, _)| m.0[i])
            .map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = top else { break };
        let mut lowered = m.clone();
        lowered.0[i] -= 1;
        let mut shifted = lowered.clone();
        shifted.0[i + 1] += 1;
        quotient.add_term(lowered, c.clone());
        rest.add_term(m, -c.clone());
        rest.add_term(shifted, c);
    }
    if !rest.is_zero() {
        return Err(PolynomialError::Internal(format!(
            "division by x{} - x{} left remainder {rest}",
            i,
            i + 1
        )));
    }
    Ok(quotient)
}

fn check_index(i: usize) -> Result<(), PolynomialError> {
    if i == 0 {
        return Err(PolynomialError::VariableOutOfRange { index: 0, n_vars: 0 });
    }
    Ok(())
}

/// `d_i f = (f - s_i f) / (x_i - x_{i+1})`. `f` is widened to at least `i + 1`
/// variables first.
pub fn divided_difference(i: usize, f: &Polynomial) -> Result<Polynomial, PolynomialError> {
    check_index(i)?;
    let f = f.widen(i + 1);
    let numerator = &f - &f.swap_variables(i)?;
    divide_by_root(numerator, i)
}

/// `pi_i f = ((1 + beta x_{i+1}) f - (1 + beta x_i) s_i f) / (x_i - x_{i+1})`.
pub fn isobaric_divided_difference(i: usize, f: &Polynomial) -> Result<Polynomial, PolynomialError> {
    check_index(i)?;
    let f = f.widen(i + 1);
    let n = f.n_vars();
    let one = Polynomial::one(n);
    let beta = Polynomial::beta(n);
    let left = &one + &(&beta * &Polynomial::x(n, i + 1));
    let right = &one + &(&beta * &Polynomial::x(n, i));
    let numerator = &(&left * &f) - &(&right * &f.swap_variables(i)?);
    divide_by_root(numerator, i)
}

/// How [`ascent_chain`] picks the next simple reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainChoice {
    FirstAscent,
    LastAscent,
}

/// Indices `i_1, ..., i_k` with `w < w s_{i_1} < w s_{i_1} s_{i_2} < ... = w_0`,
/// each step a length-one increase. The recursion then reads
/// `S_w = d_{i_1} ... d_{i_k} S_{w_0}`.
pub fn ascent_chain(w: &Permutation, choice: ChainChoice) -> Vec<usize> {
    let n = w.rank();
    let mut chain = Vec::new();
    let mut v = w.clone();
    loop {
        let mut ascents = (1..n).filter(|&i| v.has_right_ascent(i));
        let next = match choice {
            ChainChoice::FirstAscent => ascents.next(),
            ChainChoice::LastAscent => ascents.next_back(),
        };
        let Some(i) = next else { break };
        chain.push(i);
        v = v.times_simple(i);
    }
    chain
}

/// `x_1^{n-1} x_2^{n-2} ... x_{n-1}` in `n` variables (`x_n` is needed as
/// scratch space by the last operator).
fn top_polynomial(n: usize) -> Polynomial {
    let exps: Vec<u32> = (1..=n).map(|i| (n - i) as u32).collect();
    Polynomial::monomial(n, 1, 0, &exps)
}

fn narrow(p: Polynomial, n_vars: usize) -> Result<Polynomial, PolynomialError> {
    let mut out = Polynomial::zero(n_vars);
    for (m, c) in p.terms {
        if m.0[n_vars + 1..].iter().any(|&e| e != 0) {
            return Err(PolynomialError::Internal(format!(
                "unexpected variable beyond x{n_vars}"
            )));
        }
        out.add_term(Monomial(m.0[..=n_vars].to_vec()), c);
    }
    Ok(out)
}

fn run_chain(
    w: &Permutation,
    chain: &[usize],
    op: fn(usize, &Polynomial) -> Result<Polynomial, PolynomialError>,
) -> Result<Polynomial, PolynomialError> {
    let n = w.rank();
    let mut f = top_polynomial(n);
    for &i in chain.iter().rev() {
        f = op(i, &f)?;
    }
    narrow(f, n.saturating_sub(1))
}

fn validate_chain(w: &Permutation, chain: &[usize]) -> Result<(), PolynomialError> {
    let mut v = w.clone();
    for &i in chain {
        if i == 0 || i >= w.rank() || !v.has_right_ascent(i) {
            return Err(PolynomialError::Internal(format!(
                "chain {chain:?} is not an ascending chain from {w}"
            )));
        }
        v = v.times_simple(i);
    }
    if v != Permutation::longest(w.rank()) {
        return Err(PolynomialError::Internal(format!("chain {chain:?} does not reach w0")));
    }
    Ok(())
}

/// Schubert polynomial computed by divided differences from `S_{w_0}` along the given chain.
pub fn schubert_oracle_along(w: &Permutation, chain: &[usize]) -> Result<Polynomial, PolynomialError> {
    validate_chain(w, chain)?;
    run_chain(w, chain, divided_difference)
}

pub fn schubert_oracle(w: &Permutation) -> Polynomial {
    schubert_oracle_along(w, &ascent_chain(w, ChainChoice::FirstAscent))
        .expect("divided differences are exact")
}

pub fn grothendieck_oracle_along(
    w: &Permutation,
    chain: &[usize],
) -> Result<Polynomial, PolynomialError> {
    validate_chain(w, chain)?;
    run_chain(w, chain, isobaric_divided_difference)
}

/// beta-Grothendieck polynomial from the isobaric recursion.
pub fn grothendieck_oracle(w: &Permutation) -> Polynomial {
    grothendieck_oracle_along(w, &ascent_chain(w, ChainChoice::FirstAscent))
        .expect("isobaric divided differences are exact")
}
