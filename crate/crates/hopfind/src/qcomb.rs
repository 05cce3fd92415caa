//! q-combinatorics: Gaussian binomial coefficients, the partition
//! generating function `{L; a, m}_q`, and closed indicator formulas for the
//! Taft algebras and the graded small quantum group of sl2.
//!
//! Gaussian binomials are built by the q-Pascal recurrence over integer
//! polynomials and only evaluated afterwards; the factorial quotient
//! `(m)_q! / ((a)_q! (m-a)_q!)` degenerates to 0/0 at roots of unity, so
//! evaluation must happen after the polynomial is formed.
//!
//! The generating function
//!
//! ```text
//! {L; a, m}_q = sum over j_1 + ... + j_m = a of
//!               q^(j_1^2 + ... + j_m^2) C(L, j_1)_q C(j_1, j_2)_q ... C(j_{m-1}, j_m)_q
//! ```
//!
//! is supported on `0 <= a <= m*L`; the summand vanishes unless
//! `L >= j_1 >= ... >= j_m >= 0`, so it is a sum over partitions of `a` with
//! at most `m` parts, each at most `L`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclotomic::{CycNumber, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcombError {
    #[error("brute-force guard exceeded: a = {a}, m = {m} (need a <= 30, m <= 8)")]
    BruteForceGuard { a: u64, m: u64 },
    #[error("omega must have multiplicative order exactly {expected}, found {found:?}")]
    WrongOrder { expected: u64, found: Option<u64> },
    #[error("N must be {parity} for this formula, got {n}")]
    WrongParity { n: u64, parity: &'static str },
    #[error("closed formula requires n >= 1, got {0}")]
    NonPositiveN(i64),
    #[error("denominator vanishes in the second-indicator formula")]
    VanishingDenominator,
    #[error("N must exceed 1")]
    DegenerateN,
}

/// A univariate polynomial in `q` with arbitrary-precision integer
/// coefficients, ascending powers, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(BigInt::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: out }
    }

    /// Horner evaluation at a cyclotomic point.
    pub fn eval_cyc(&self, x: &CycNumber) -> CycNumber {
        let mut acc = CycNumber::zero(x.conductor());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &CycNumber::from_rational(Rational::from_integer(c.clone()));
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "q")?,
                1 => write!(f, "{c}*q")?,
                _ if c.is_one() => write!(f, "q^{i}")?,
                _ => write!(f, "{c}*q^{i}")?,
            }
        }
        Ok(())
    }
}

/// The Gaussian binomial coefficient `C(m, a)_q` as an integer polynomial,
/// via the q-Pascal recurrence
/// `C(m, a)_q = C(m-1, a-1)_q + q^a C(m-1, a)_q`.
/// Out-of-range arguments give the zero polynomial.
pub fn gaussian_binomial(m: i64, a: i64) -> IntPolynomial {
    if a < 0 || m < 0 || a > m {
        return IntPolynomial::zero();
    }
    let (m, a) = (m as usize, a as usize);
    // Row-by-row Pascal triangle; row r holds C(r, 0..=r)_q.
    let mut row: Vec<IntPolynomial> = vec![IntPolynomial::one()];
    for r in 1..=m {
        let mut next = Vec::with_capacity(r + 1);
        next.push(IntPolynomial::one());
        for k in 1..r {
            next.push(row[k - 1].add(&row[k].shift(k)));
        }
        next.push(IntPolynomial::one());
        row = next;
    }
    row[a].clone()
}

/// Internal DFS state for the partition sum.
struct PartitionSum<'a> {
    limit: u64,
    omega: &'a CycNumber,
    /// Multiplicative order of omega, if it is a root of unity; used to fold
    /// the exponent.
    order: Option<u64>,
    binom_at_omega: HashMap<(u64, u64), CycNumber>,
    /// Accumulated integer multiplicity per (descent chain, exponent class).
    counts: HashMap<(Vec<u64>, u64), BigInt>,
}

impl<'a> PartitionSum<'a> {
    fn new(limit: u64, omega: &'a CycNumber) -> Self {
        let order = if omega.is_zero() {
            None
        } else {
            omega.multiplicative_order().unwrap()
        };
        PartitionSum {
            limit,
            omega,
            order,
            binom_at_omega: HashMap::new(),
            counts: HashMap::new(),
        }
    }

    fn fold_exp(&self, e: u64) -> u64 {
        match self.order {
            Some(t) => e % t,
            None => e,
        }
    }

    /// Enumerate partitions of `rem` into at most `parts` parts, each at
    /// most `cap`, pruning by the remaining-sum bound. `chain` records the
    /// distinct part values chosen so far, largest first.
    fn dfs(&mut self, cap: u64, parts: u64, rem: u64, exp: u64, chain: &mut Vec<u64>) {
        if rem == 0 {
            let key = (chain.clone(), self.fold_exp(exp));
            *self.counts.entry(key).or_insert_with(BigInt::zero) += 1;
            return;
        }
        if parts == 0 || cap == 0 || rem > parts * cap {
            return;
        }
        // Next distinct value v, with multiplicity k >= 1.
        for v in (1..=cap.min(rem)).rev() {
            chain.push(v);
            let mut k = 1u64;
            while k <= parts && k * v <= rem {
                self.dfs(v - 1, parts - k, rem - k * v, exp + k * v * v, chain);
                k += 1;
            }
            chain.pop();
        }
    }

    fn binom_eval(&mut self, top: u64, bottom: u64) -> CycNumber {
        if let Some(hit) = self.binom_at_omega.get(&(top, bottom)) {
            return hit.clone();
        }
        let v = gaussian_binomial(top as i64, bottom as i64).eval_cyc(self.omega);
        self.binom_at_omega.insert((top, bottom), v.clone());
        v
    }

    fn total(mut self) -> CycNumber {
        let counts = std::mem::take(&mut self.counts);
        let mut acc = CycNumber::zero(self.omega.conductor());
        for ((chain, exp), count) in counts {
            let mut prod = CycNumber::one(self.omega.conductor());
            let mut prev = self.limit;
            for &v in &chain {
                prod = &prod * &self.binom_eval(prev, v);
                prev = v;
            }
            let weight = self.omega.powi(exp as i64).unwrap();
            acc = &acc + &(&prod * &weight).scale(&Rational::from_integer(count));
        }
        acc
    }
}

/// The partition generating function `{L; a, m}_omega`.
pub fn q_function(limit: u64, a: u64, m: u64, omega: &CycNumber) -> CycNumber {
    if a > m.saturating_mul(limit) {
        return CycNumber::zero(omega.conductor());
    }
    if a == 0 {
        return CycNumber::one(omega.conductor());
    }
    let mut sum = PartitionSum::new(limit, omega);
    let mut chain = Vec::new();
    sum.dfs(limit, m, a, 0, &mut chain);
    sum.total()
}

/// Literal reading of the defining sum: enumerate every composition
/// `j_1 + ... + j_m = a` of non-negative integers and evaluate the product
/// of Gaussian binomials at omega, letting out-of-range binomials kill the
/// non-monotone tuples. Kept as an independent oracle with no shared
/// enumeration logic with [`q_function`].
pub fn q_function_bruteforce(
    limit: u64,
    a: u64,
    m: u64,
    omega: &CycNumber,
) -> Result<CycNumber, QcombError> {
    if a > 30 || m > 8 {
        return Err(QcombError::BruteForceGuard { a, m });
    }
    if m == 0 {
        return Ok(if a == 0 {
            CycNumber::one(omega.conductor())
        } else {
            CycNumber::zero(omega.conductor())
        });
    }
    let mut acc = CycNumber::zero(omega.conductor());
    let mut tuple = vec![0u64; m as usize];
    fn rec(
        tuple: &mut Vec<u64>,
        pos: usize,
        remaining: u64,
        limit: u64,
        omega: &CycNumber,
        acc: &mut CycNumber,
    ) {
        if pos + 1 == tuple.len() {
            tuple[pos] = remaining;
            let mut term = gaussian_binomial(limit as i64, tuple[0] as i64).eval_cyc(omega);
            for w in tuple.windows(2) {
                if term.is_zero() {
                    break;
                }
                term = &term * &gaussian_binomial(w[0] as i64, w[1] as i64).eval_cyc(omega);
            }
            if !term.is_zero() {
                let e: u64 = tuple.iter().map(|&j| j * j).sum();
                *acc = &*acc + &(&term * &omega.pow(e));
            }
            return;
        }
        for j in 0..=remaining {
            tuple[pos] = j;
            rec(tuple, pos + 1, remaining - j, limit, omega, acc);
        }
    }
    rec(&mut tuple, 0, a, limit, omega, &mut acc);
    Ok(acc)
}

/// Extended Euclid: smallest non-negative `x` with `x * a = gcd (mod n)`.
fn mod_inverse_scaled(a: u64, n: u64) -> u64 {
    // Here gcd(a, n) = 1 is required.
    debug_assert_eq!(gcd(a, n), 1);
    if n == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(n as i128) as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Minimal non-negative `n_check` with `n_check * n = d (mod N)`, where
/// `d = gcd(n, N)`.
pub fn n_check(n: u64, modulus: u64) -> u64 {
    let n = n % modulus;
    let d = gcd(n, modulus);
    if d == modulus {
        return 0;
    }
    mod_inverse_scaled(n / d, modulus / d)
}

/// Solutions in `Z/N` of the congruence `n x = m (mod N)`: empty unless
/// `gcd(n, N)` divides `m`, otherwise exactly `gcd(n, N)` solutions.
pub fn congruence_solutions(n: i64, m: i64, modulus: u64) -> Vec<u64> {
    assert!(modulus >= 1);
    let n = n.rem_euclid(modulus as i64) as u64;
    let m = m.rem_euclid(modulus as i64) as u64;
    let d = gcd(n, modulus);
    if !m.is_multiple_of(d) {
        return Vec::new();
    }
    let check = n_check(n, modulus);
    let step = modulus / d;
    let base = check as u128 * (m / d) as u128 % modulus as u128;
    let mut sols: Vec<u64> = (0..d)
        .map(|j| ((base + (step as u128) * (j as u128)) % modulus as u128) as u64)
        .collect();
    sols.sort_unstable();
    sols
}

fn require_order(omega: &CycNumber, expected: u64) -> Result<(), QcombError> {
    let found = if omega.is_zero() {
        None
    } else {
        omega.multiplicative_order().unwrap()
    };
    if found == Some(expected) {
        Ok(())
    } else {
        Err(QcombError::WrongOrder { expected, found })
    }
}

/// Closed form for the n-th indicator of the Taft algebra of dimension N^2
/// at a root of unity omega of order N:
///
/// ```text
/// nu_n = d * sum_i {N-1; d*i, n-1}_omega * omega^(-n_check * d * i^2),
/// ```
///
/// where `d = gcd(N, n)` and `n_check * n = d (mod N)`. The sum is finite
/// because the generating function vanishes for `d*i > (N-1)(n-1)`. The
/// result does not depend on the choice of `n_check` (shifting it by
/// `N/d` multiplies each summand by `omega^(N t i^2) = 1`); the minimal
/// non-negative representative is used canonically.
pub fn taft_indicator_closed(n_param: u64, omega: &CycNumber, n: i64) -> Result<CycNumber, QcombError> {
    if n_param <= 1 {
        return Err(QcombError::DegenerateN);
    }
    require_order(omega, n_param)?;
    if n < 1 {
        return Err(QcombError::NonPositiveN(n));
    }
    taft_indicator_closed_with_check(n_param, omega, n as u64, n_check(n as u64 % n_param, n_param))
}

/// Same as [`taft_indicator_closed`] but with an explicit choice of the
/// congruence witness; exposed so the n_check-independence can be tested.
pub fn taft_indicator_closed_with_check(
    n_param: u64,
    omega: &CycNumber,
    n: u64,
    check: u64,
) -> Result<CycNumber, QcombError> {
    let d = gcd(n % n_param, n_param);
    let limit = n_param - 1;
    let m = n - 1;
    let mut acc = CycNumber::zero(omega.conductor());
    let mut i = 0u64;
    while d * i <= limit * m || i == 0 {
        let q = q_function(limit, d * i, m, omega);
        if !q.is_zero() {
            let e = (check as u128 * d as u128 * (i as u128) * (i as u128)
                % n_param as u128) as i64;
            acc = &acc + &(&q * &omega.powi(-e).unwrap());
        }
        i += 1;
        if d * i > limit * m {
            break;
        }
    }
    Ok(acc.scale(&Rational::from_integer(BigInt::from(d))))
}

/// Closed form for the n-th indicator of the graded small quantum group of
/// sl2 at odd order N: `nu_n = |nu_n(Taft(q^2))|^2 / gcd(N, n)`.
pub fn uqsl2_indicator_closed(n_param: u64, q: &CycNumber, n: i64) -> Result<CycNumber, QcombError> {
    if n_param.is_multiple_of(2) {
        return Err(QcombError::WrongParity {
            n: n_param,
            parity: "odd",
        });
    }
    require_order(q, n_param)?;
    let omega = q * q;
    let taft = taft_indicator_closed(n_param, &omega, n)?;
    let d = gcd(n.rem_euclid(n_param as i64) as u64, n_param);
    Ok(taft
        .norm_sq()
        .scale(&Rational::new(BigInt::one(), BigInt::from(d))))
}

/// Which second-indicator closed form to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondIndicatorKind {
    TaftOdd,
    TaftEven,
    Uqsl2,
}

/// Closed forms for the second indicator:
/// `2 / (1 + omega^(-(N+1)/2))` for Taft with N odd,
/// `4 / (1 - omega^(-1))` for Taft with N even,
/// `4 / ((1 + q)(1 + q^(-1)))` for the small quantum group (N odd).
pub fn second_indicator_closed(
    kind: SecondIndicatorKind,
    n_param: u64,
    omega: &CycNumber,
) -> Result<CycNumber, QcombError> {
    if n_param <= 1 {
        return Err(QcombError::DegenerateN);
    }
    require_order(omega, n_param)?;
    let one = CycNumber::one(omega.conductor());
    let denom = match kind {
        SecondIndicatorKind::TaftOdd => {
            if n_param.is_multiple_of(2) {
                return Err(QcombError::WrongParity {
                    n: n_param,
                    parity: "odd",
                });
            }
            let e = -((n_param as i64 + 1) / 2);
            &one + &omega.powi(e).unwrap()
        }
        SecondIndicatorKind::TaftEven => {
            if n_param % 2 == 1 {
                return Err(QcombError::WrongParity {
                    n: n_param,
                    parity: "even",
                });
            }
            &one - &omega.powi(-1).unwrap()
        }
        SecondIndicatorKind::Uqsl2 => {
            if n_param.is_multiple_of(2) {
                return Err(QcombError::WrongParity {
                    n: n_param,
                    parity: "odd",
                });
            }
            &(&one + omega) * &(&one + &omega.powi(-1).unwrap())
        }
    };
    let numerator = match kind {
        SecondIndicatorKind::TaftOdd => CycNumber::from_integer(2),
        _ => CycNumber::from_integer(4),
    };
    numerator
        .div(&denom)
        .map_err(|_| QcombError::VanishingDenominator)
}
