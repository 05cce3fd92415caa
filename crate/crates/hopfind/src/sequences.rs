//! Linearly recursive sequences over `Q(zeta)`: minimal polynomials,
//! recurrence extension, root-of-unity certificates, and the
//! binomial/periodic decomposition of indicator sequences.
//!
//! The minimal polynomial of a sequence is the monic generator of the ideal
//! of its annihilating polynomials: `f` annihilates `{s_j}` when
//! `sum_i f_i s_(j+i) = 0` for every offset `j`. Vector-valued sequences
//! (the Sweedler power maps, flattened) are handled by one joint recurrence
//! across all coordinates: Berlekamp-Massey on probe coordinates, least
//! common multiples, and an exhaustive verification pass over every
//! supplied window. The verified candidate is a common annihilator that
//! divides the joint minimal polynomial, hence equals it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::{lcm64, CycNumber, Rational};
use crate::hopf::HopfAlgebra;
use crate::linalg::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("no recurrence of degree <= {bound} fits the sequence")]
    BoundTooSmall { bound: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("recurrence needs at least {needed} initial terms, got {got}")]
    TooFewInitialTerms { needed: usize, got: usize },
    #[error("decomposition reconstruction fails at n = {n}")]
    ReconstructionMismatch { n: u64 },
    #[error("root-of-unity certificate not found within bound {0}")]
    CertificateBoundExceeded(u64),
    #[error("no degree bound available: supply one explicitly")]
    MissingBound,
    #[error("phi does not divide Phi")]
    DivisibilityFailed,
}

/// A univariate polynomial over cyclotomic scalars, ascending coefficients,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct CycPolynomial {
    coeffs: Vec<CycNumber>,
}

impl CycPolynomial {
    pub fn zero() -> Self {
        CycPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        CycPolynomial {
            coeffs: vec![CycNumber::from_integer(1)],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<CycNumber>) -> Self {
        while coeffs.last().is_some_and(CycNumber::is_zero) {
            coeffs.pop();
        }
        CycPolynomial { coeffs }
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: u64) -> Self {
        let mut coeffs = vec![CycNumber::from_integer(0); n as usize + 1];
        coeffs[0] = CycNumber::from_integer(-1);
        coeffs[n as usize] = CycNumber::from_integer(1);
        CycPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[CycNumber] {
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

    pub fn leading(&self) -> Option<&CycNumber> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(CycNumber::is_one)
    }

    /// Least common conductor of the coefficients.
    pub fn conductor(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(1, |acc, c| lcm64(acc, c.minimized().conductor()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![CycNumber::from_integer(0); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![CycNumber::from_integer(0); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = &out[i] - c;
        }
        Self::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out =
            vec![CycNumber::from_integer(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), SequenceError> {
        let dd = divisor.degree().ok_or(SequenceError::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let dn = match self.degree() {
            Some(d) if d >= dd => d,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let mut quot = vec![CycNumber::from_integer(0); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * dc);
            }
            quot[k] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, SequenceError> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn divides(&self, other: &Self) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        let (q, _) = self.div_rem(&g).unwrap();
        q.mul(other).monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading")),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i as u64 + 1))))
                .collect(),
        )
    }

    pub fn eval(&self, x: &CycNumber) -> CycNumber {
        let mut acc = CycNumber::zero(x.conductor());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `X^e mod self` by binary exponentiation (self must have positive
    /// degree).
    fn x_pow_mod(&self, e: u64) -> Self {
        let x = Self::from_coeffs(vec![CycNumber::from_integer(0), CycNumber::from_integer(1)]);
        let mut result = Self::one().rem(self).unwrap();
        let mut base = x.rem(self).unwrap();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(self).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(self).unwrap();
            }
        }
        result
    }

    /// Does `self` divide `X^n - 1`?
    pub fn divides_x_pow_n_minus_1(&self, n: u64) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .x_pow_mod(n)
                .sub(&CycPolynomial::one())
                .rem(self)
                .unwrap()
                .is_zero(),
        }
    }

    /// Does `self` divide `(X^n - 1)^m`?
    pub fn divides_x_pow_n_minus_1_to_power(&self, n: u64, m: usize) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let base = self.x_pow_mod(n).sub(&CycPolynomial::one());
                let mut result = Self::one().rem(self).unwrap();
                let mut b = base.rem(self).unwrap();
                let mut e = m;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result.mul(&b).rem(self).unwrap();
                    }
                    e >>= 1;
                    if e > 0 {
                        b = b.mul(&b).rem(self).unwrap();
                    }
                }
                result.is_zero()
            }
        }
    }
}

impl std::fmt::Display for CycPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = match c.as_rational() {
                Some(r) if r < Rational::zero() => {
                    ("-", CycNumber::from_rational(-r))
                }
                _ => ("+", c.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_str = if abs.is_one() && i > 0 {
                String::new()
            } else if abs.as_rational().is_some() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            match i {
                0 => {
                    if coeff_str.is_empty() {
                        write!(f, "1")?;
                    } else {
                        write!(f, "{coeff_str}")?;
                    }
                }
                1 => {
                    if coeff_str.is_empty() {
                        write!(f, "X")?;
                    } else {
                        write!(f, "{coeff_str}*X")?;
                    }
                }
                _ => {
                    if coeff_str.is_empty() {
                        write!(f, "X^{i}")?;
                    } else {
                        write!(f, "{coeff_str}*X^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for CycPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycPolynomial[{self}]")
    }
}

impl Serialize for CycPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycPolynomial", 3)?;
        s.serialize_field("conductor", &self.conductor())?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.serialize_field("pretty", &self.to_string())?;
        s.end()
    }
}

/// Berlekamp-Massey over the cyclotomic field: the minimal monic
/// polynomial annihilating a scalar sequence. The connection polynomial it
/// produces is reversed into the characteristic polynomial of the
/// recurrence.
pub fn berlekamp_massey(seq: &[CycNumber]) -> CycPolynomial {
    let n = seq.len();
    // c(x): current connection polynomial, constant term 1.
    let mut c: Vec<CycNumber> = vec![CycNumber::from_integer(1)];
    let mut b: Vec<CycNumber> = vec![CycNumber::from_integer(1)];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_disc = CycNumber::from_integer(1);
    for i in 0..n {
        let mut disc = seq[i].clone();
        for j in 1..=l {
            if j < c.len() && !c[j].is_zero() && !seq[i - j].is_zero() {
                disc = &disc + &(&c[j] * &seq[i - j]);
            }
        }
        if disc.is_zero() {
            m += 1;
            continue;
        }
        let correction = &disc * &last_disc.inv().expect("nonzero discrepancy");
        if 2 * l <= i {
            let t = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, CycNumber::from_integer(0));
            }
            for (j, bc) in b.iter().enumerate() {
                c[j + m] = &c[j + m] - &(&correction * bc);
            }
            l = i + 1 - l;
            b = t;
            last_disc = disc;
            m = 1;
        } else {
            if c.len() < b.len() + m {
                c.resize(b.len() + m, CycNumber::from_integer(0));
            }
            for (j, bc) in b.iter().enumerate() {
                c[j + m] = &c[j + m] - &(&correction * bc);
            }
            m += 1;
        }
    }
    // Characteristic polynomial: X^L * c(1/X).
    let mut coeffs = vec![CycNumber::from_integer(0); l + 1];
    for (j, cc) in c.iter().enumerate() {
        if j <= l {
            coeffs[l - j] = cc.clone();
        }
    }
    CycPolynomial::from_coeffs(coeffs).monic()
}

fn sparse_lookup(v: &SparseVec, idx: usize) -> Option<&CycNumber> {
    v.binary_search_by_key(&idx, |(i, _)| *i)
        .ok()
        .map(|p| &v[p].1)
}

/// Does `p` annihilate every coordinate of the vector sequence on every
/// window? Returns the first bad coordinate on failure.
fn joint_annihilates(p: &CycPolynomial, terms: &[SparseVec], conductor: u64) -> Option<usize> {
    let deg = p.degree().expect("candidate is nonzero");
    if terms.len() < deg + 1 {
        return None;
    }
    for j in 0..terms.len() - deg {
        let mut acc: SparseVec = Vec::new();
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in &terms[j + i] {
                acc.push((*k, c * v));
            }
        }
        let acc = crate::linalg::sparse_normalize(acc);
        if let Some((k, _)) = acc.first() {
            let _ = conductor;
            return Some(*k);
        }
    }
    None
}

fn coordinate_sequence(terms: &[SparseVec], coord: usize, conductor: u64) -> Vec<CycNumber> {
    terms
        .iter()
        .map(|t| {
            sparse_lookup(t, coord)
                .cloned()
                .unwrap_or_else(|| CycNumber::zero(conductor))
        })
        .collect()
}

/// Minimal monic polynomial annihilating a vector sequence stored sparsely.
/// Probes coordinates with Berlekamp-Massey, takes least common multiples,
/// and verifies the candidate on every window of every coordinate.
pub fn min_poly_of_sparse_sequence(
    terms: &[SparseVec],
    _dim: usize,
    degree_bound: usize,
    conductor: u64,
) -> Result<CycPolynomial, SequenceError> {
    if terms.len() < 2 * degree_bound {
        return Err(SequenceError::InsufficientTerms {
            needed: 2 * degree_bound,
            got: terms.len(),
        });
    }
    let first_active = terms.iter().find_map(|t| t.first().map(|(i, _)| *i));
    let mut candidate = match first_active {
        None => return Ok(CycPolynomial::one()),
        Some(coord) => berlekamp_massey(&coordinate_sequence(terms, coord, conductor)),
    };
    loop {
        if candidate.degree().unwrap_or(0) > degree_bound {
            return Err(SequenceError::BoundTooSmall {
                bound: degree_bound,
            });
        }
        match joint_annihilates(&candidate, terms, conductor) {
            None => return Ok(candidate),
            Some(bad_coord) => {
                let extra = berlekamp_massey(&coordinate_sequence(terms, bad_coord, conductor));
                let next = candidate.lcm(&extra);
                if next.degree() == candidate.degree() {
                    // The probe could not grow the candidate yet the joint
                    // check fails; the window budget is too small.
                    return Err(SequenceError::BoundTooSmall {
                        bound: degree_bound,
                    });
                }
                candidate = next;
            }
        }
    }
}

/// Minimal polynomial of a dense vector sequence (each term one vector).
pub fn min_poly_of_sequence(
    terms: &[Vec<CycNumber>],
    degree_bound: usize,
) -> Result<CycPolynomial, SequenceError> {
    let sparse: Vec<SparseVec> = terms
        .iter()
        .map(|t| crate::linalg::sparse_from_dense(t))
        .collect();
    let dim = terms.first().map_or(0, Vec::len);
    min_poly_of_sparse_sequence(&sparse, dim, degree_bound, 1)
}

/// Minimal polynomials of the indicator sequence (phi) and of the Sweedler
/// power map sequence (Phi), with `phi | Phi` verified.
#[derive(Debug, Clone, Serialize)]
pub struct PhiPair {
    pub phi: CycPolynomial,
    pub big_phi: CycPolynomial,
    /// Degree bound that succeeded (the annihilator `(X^e - 1)^loewy` for
    /// built-in families, possibly enlarged).
    pub bound_used: usize,
}

pub fn phi_and_big_phi(
    h: &HopfAlgebra,
    bound: Option<usize>,
) -> Result<PhiPair, SequenceError> {
    // Family-derived bounds start from the (X^e - 1)^loewy annihilator and
    // may be enlarged when verification fails; an explicit caller bound is
    // binding.
    let (start_bound, may_enlarge) = match (bound, h.recurrence_hint()) {
        (Some(b), _) => (b, false),
        (None, Some(hint)) => (hint.exponent as usize * hint.loewy, true),
        (None, None) => return Err(SequenceError::MissingBound),
    };
    let cap = if may_enlarge {
        (h.dim() * h.dim()).max(start_bound)
    } else {
        start_bound
    };
    let mut tower = crate::indicators::SweedlerTower::new(h);
    let mut b = start_bound.max(1);
    loop {
        // Sequence of P^(m), m = 0, 1, ..., flattened; and the scalar
        // indicator sequence nu_n, n = 1, 2, ...
        let p_terms: Vec<SparseVec> = (0..2 * b as i64)
            .map(|m| tower.power(m).flatten())
            .collect();
        let phi_attempt = {
            let nu_terms: Vec<SparseVec> = (1..=2 * b as i64)
                .map(|n| {
                    let v = crate::indicators::indicator_trace_from_tower(h, &mut tower, n);
                    if v.is_zero() {
                        Vec::new()
                    } else {
                        vec![(0usize, v)]
                    }
                })
                .collect();
            min_poly_of_sparse_sequence(&nu_terms, 1, b, h.conductor())
        };
        let big_attempt =
            min_poly_of_sparse_sequence(&p_terms, h.dim() * h.dim(), b, h.conductor());
        match (phi_attempt, big_attempt) {
            (Ok(phi), Ok(big_phi)) => {
                if !phi.divides(&big_phi) {
                    return Err(SequenceError::DivisibilityFailed);
                }
                return Ok(PhiPair {
                    phi,
                    big_phi,
                    bound_used: b,
                });
            }
            (Err(SequenceError::BoundTooSmall { .. }), _)
            | (_, Err(SequenceError::BoundTooSmall { .. }))
                if b < cap =>
            {
                b = (2 * b).min(cap);
            }
            (Err(e), _) => return Err(e),
            (_, Err(e)) => return Err(e),
        }
    }
}

/// Smallest `L >= 1` with `p | (X^L - 1)^(deg p)`; certifies that every
/// root of `p` is a root of unity.
pub fn root_of_unity_certificate(
    p: &CycPolynomial,
    search_bound: u64,
) -> Result<u64, SequenceError> {
    if !p.is_monic() {
        return Err(SequenceError::NotMonic);
    }
    let deg = p.degree().unwrap_or(0);
    for l in 1..=search_bound {
        if p.divides_x_pow_n_minus_1_to_power(l, deg) {
            return Ok(l);
        }
    }
    Err(SequenceError::CertificateBoundExceeded(search_bound))
}

/// `e` and `m` of a minimal polynomial whose roots are roots of unity:
/// `e` is the least period with `p | (X^e - 1)^(deg p)` and `m` the least
/// multiplicity with `p | (X^e - 1)^m`. By unique factorization these
/// match the lcm of the root orders and the largest root multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodMultiplicity {
    pub e: u64,
    pub m: usize,
}

pub fn e_and_m(
    p: &CycPolynomial,
    search_bound: u64,
) -> Result<PeriodMultiplicity, SequenceError> {
    let e = root_of_unity_certificate(p, search_bound)?;
    let deg = p.degree().unwrap_or(0);
    for m in 1..=deg.max(1) {
        if p.divides_x_pow_n_minus_1_to_power(e, m) {
            return Ok(PeriodMultiplicity { e, m });
        }
    }
    Err(SequenceError::CertificateBoundExceeded(search_bound))
}

/// Extends a sequence by the linear recurrence of a monic polynomial:
/// returns the initial terms followed by `count` new ones.
pub fn extend_by_recurrence(
    initial: &[CycNumber],
    p: &CycPolynomial,
    count: usize,
) -> Result<Vec<CycNumber>, SequenceError> {
    if !p.is_monic() {
        return Err(SequenceError::NotMonic);
    }
    let deg = p.degree().unwrap_or(0);
    if initial.len() < deg {
        return Err(SequenceError::TooFewInitialTerms {
            needed: deg,
            got: initial.len(),
        });
    }
    let mut seq = initial.to_vec();
    for _ in 0..count {
        let j = seq.len() - deg;
        let mut next = CycNumber::from_integer(0);
        for (i, c) in p.coeffs()[..deg].iter().enumerate() {
            if !c.is_zero() {
                next = &next - &(c * &seq[j + i]);
            }
        }
        seq.push(next);
    }
    Ok(seq)
}

/// Binomial coefficient `n choose j` over the integers.
pub fn binomial(n: u64, j: usize) -> BigInt {
    if j as u64 > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..j as u64 {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The periodic coefficient table of `nu_n = sum_j binom(n, j) c_j(n)`,
/// with each `c_j` periodic of period `e` and `0 <= j < m`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionResult {
    pub e: u64,
    pub m: usize,
    /// `c[j][(n - 1) mod e]` is the coefficient `c_j(n)`.
    pub c: Vec<Vec<CycNumber>>,
}

impl DecompositionResult {
    /// `sum_j binom(n, j) c_j(n)`.
    pub fn reconstruct(&self, n: u64) -> CycNumber {
        let residue = ((n - 1) % self.e) as usize;
        let mut acc = CycNumber::from_integer(0);
        for (j, row) in self.c.iter().enumerate() {
            let b = binomial(n, j);
            if b.is_zero() {
                continue;
            }
            acc = &acc + &row[residue].scale(&Rational::from_integer(b));
        }
        acc
    }
}

/// Solves the m x m binomial system for each residue class mod `e` and
/// verifies the reconstruction against every supplied term. `seq[i]` is the
/// value at `n = i + 1`.
pub fn binomial_periodic_decomposition(
    seq: &[CycNumber],
    e: u64,
    m: usize,
) -> Result<DecompositionResult, SequenceError> {
    assert!(e >= 1 && m >= 1);
    let needed = (e as usize) * m;
    if seq.len() < needed {
        return Err(SequenceError::InsufficientTerms {
            needed,
            got: seq.len(),
        });
    }
    let mut c = vec![vec![CycNumber::from_integer(0); e as usize]; m];
    for residue in 0..e {
        // Rows n = residue + 1 + i*e for i = 0..m; the coefficient matrix
        // binom(n + i e, j) is nonsingular (determinant a power of e).
        let rows: Vec<u64> = (0..m as u64).map(|i| residue + 1 + i * e).collect();
        let mat = crate::linalg::Matrix::from_rows(
            rows.iter()
                .map(|&n| {
                    (0..m)
                        .map(|j| {
                            CycNumber::from_rational(Rational::from_integer(binomial(n, j)))
                        })
                        .collect()
                })
                .collect(),
        );
        let rhs: Vec<CycNumber> = rows.iter().map(|&n| seq[(n - 1) as usize].clone()).collect();
        let sol = mat.solve(&rhs).expect("binomial system is nonsingular");
        for (j, v) in sol.into_iter().enumerate() {
            c[j][residue as usize] = v;
        }
    }
    let result = DecompositionResult { e, m, c };
    for (i, v) in seq.iter().enumerate() {
        let n = i as u64 + 1;
        if result.reconstruct(n) != *v {
            return Err(SequenceError::ReconstructionMismatch { n });
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNumber;

    fn int(k: i64) -> CycNumber {
        CycNumber::from_integer(k)
    }

    fn poly(coeffs: &[i64]) -> CycPolynomial {
        CycPolynomial::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn poly_arithmetic() {
        let x2m1 = poly(&[-1, 0, 1]);
        let xm1 = poly(&[-1, 1]);
        assert!(x2m1.rem(&xm1).unwrap().is_zero());
        let g = poly(&[-1, 0, 0, 1]).gcd(&x2m1);
        assert_eq!(g, xm1);
        // Check by multiplying back: gcd divides both.
        assert!(g.divides(&poly(&[-1, 0, 0, 1])));
        assert!(g.divides(&x2m1));
        assert_eq!(poly(&[0, 0, 0, 1]).derivative(), poly(&[0, 0, 3]));
        assert!(poly(&[5]).divides(&x2m1), "constants divide everything");
    }

    #[test]
    fn display_forms() {
        assert_eq!(poly(&[-1, 0, 1]).to_string(), "X^2 - 1");
        assert_eq!(poly(&[1, -2, 1]).to_string(), "X^2 - 2*X + 1");
        assert_eq!(CycPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn bm_constant_sequence() {
        let seq: Vec<CycNumber> = (0..8).map(|_| int(1)).collect();
        assert_eq!(berlekamp_massey(&seq), poly(&[-1, 1]));
    }

    #[test]
    fn bm_arithmetic_progression() {
        // nu_n = n satisfies (X - 1)^2 and nothing smaller.
        let seq: Vec<CycNumber> = (1..=10).map(int).collect();
        assert_eq!(berlekamp_massey(&seq), poly(&[1, -2, 1]));
    }

    #[test]
    fn bm_periodic_sequence() {
        let seq: Vec<CycNumber> = (0..12).map(|i| int([1, 2, 1][i % 3])).collect();
        let p = berlekamp_massey(&seq);
        // Period 3 with nonzero mean: minimal polynomial X^3 - 1 or a
        // proper divisor; verify by annihilation and minimality brute force.
        let dense: Vec<SparseVec> = seq.iter().map(|c| vec![(0usize, c.clone())]).collect();
        assert!(joint_annihilates(&p, &dense, 1).is_none());
        assert_eq!(p, poly(&[-1, 0, 0, 1]));
    }

    #[test]
    fn min_poly_vector_sequence_period_3() {
        // Shift-register of the cyclic permutation: vectors cycling with
        // period 3; brute force over degree <= 2 confirms minimality.
        let vecs: Vec<Vec<CycNumber>> = (0..10)
            .map(|i| {
                let mut v = vec![int(0); 3];
                v[i % 3] = int(1);
                v
            })
            .collect();
        let p = min_poly_of_sequence(&vecs, 4).unwrap();
        assert_eq!(p, poly(&[-1, 0, 0, 1]));
        for d in 1..=2usize {
            // No monic polynomial of degree d annihilates: the permutation
            // vectors e_0, e_1, e_2 are linearly independent.
            let window: Vec<&Vec<CycNumber>> = vecs.iter().take(d + 1).collect();
            let dim = 3;
            let mut mat_rows = Vec::new();
            for coord in 0..dim {
                mat_rows.push(
                    window
                        .iter()
                        .map(|v| v[coord].clone())
                        .collect::<Vec<_>>(),
                );
            }
            let mat = crate::linalg::Matrix::from_rows(mat_rows);
            assert_eq!(mat.kernel().len(), 0, "degree {d} recurrence exists");
        }
    }

    #[test]
    fn min_poly_respects_bound() {
        let seq: Vec<Vec<CycNumber>> = (1..=10).map(|n| vec![int(n)]).collect();
        assert!(matches!(
            min_poly_of_sequence(&seq, 1),
            Err(SequenceError::BoundTooSmall { .. })
        ));
        assert!(matches!(
            min_poly_of_sequence(&seq[..3], 4),
            Err(SequenceError::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn certificate_and_e_m() {
        assert_eq!(root_of_unity_certificate(&poly(&[1, -2, 1]), 10).unwrap(), 1);
        assert_eq!(root_of_unity_certificate(&poly(&[-1, 0, 0, 1]), 10).unwrap(), 3);
        let em = e_and_m(&poly(&[1, -2, 1]), 10).unwrap();
        assert_eq!((em.e, em.m), (1, 2));
        let em = e_and_m(&poly(&[-1, 0, 0, 1]), 10).unwrap();
        assert_eq!((em.e, em.m), (3, 1));
        // X - 2 has no root-of-unity certificate.
        assert!(matches!(
            root_of_unity_certificate(&poly(&[-2, 1]), 12),
            Err(SequenceError::CertificateBoundExceeded(12))
        ));
    }

    #[test]
    fn recurrence_extension() {
        // Seed 1..4 under (X^2 - 1)^2 = X^4 - 2X^2 + 1 continues as n.
        let p = poly(&[1, 0, -2, 0, 1]);
        let seq = extend_by_recurrence(&[int(1), int(2), int(3), int(4)], &p, 6).unwrap();
        assert_eq!(seq, (1..=10).map(int).collect::<Vec<_>>());
        let constant = extend_by_recurrence(&[int(7)], &poly(&[-1, 1]), 5).unwrap();
        assert!(constant.iter().all(|c| *c == int(7)));
        assert!(matches!(
            extend_by_recurrence(&[int(1)], &p, 3),
            Err(SequenceError::TooFewInitialTerms { .. })
        ));
    }

    #[test]
    fn decomposition_of_linear_sequence() {
        // nu_n = n: e = 1, m = 2, c_0 = 0, c_1 = 1.
        let seq: Vec<CycNumber> = (1..=8).map(int).collect();
        let d = binomial_periodic_decomposition(&seq, 1, 2).unwrap();
        assert_eq!(d.c[0], vec![int(0)]);
        assert_eq!(d.c[1], vec![int(1)]);
    }

    #[test]
    fn decomposition_of_squares() {
        // n^2 = binom(n,1) + 2 binom(n,2).
        let seq: Vec<CycNumber> = (1..=9).map(|n| int(n * n)).collect();
        let d = binomial_periodic_decomposition(&seq, 1, 3).unwrap();
        assert_eq!(d.c[0], vec![int(0)]);
        assert_eq!(d.c[1], vec![int(1)]);
        assert_eq!(d.c[2], vec![int(2)]);
    }

    #[test]
    fn decomposition_rejects_wrong_shape() {
        let seq: Vec<CycNumber> = (1..=8).map(|n| int(n * n * n)).collect();
        assert!(matches!(
            binomial_periodic_decomposition(&seq, 1, 2),
            Err(SequenceError::ReconstructionMismatch { .. })
        ));
    }

    #[test]
    fn decomposition_uniqueness_under_perturbation() {
        let seq: Vec<CycNumber> = (1..=8).map(int).collect();
        let d = binomial_periodic_decomposition(&seq, 1, 2).unwrap();
        // Perturbing any c_j breaks reconstruction at some n.
        for j in 0..2 {
            let mut bad = d.clone();
            bad.c[j][0] = &bad.c[j][0] + &int(1);
            let broken = (1..=8u64).any(|n| bad.reconstruct(n) != seq[(n - 1) as usize]);
            assert!(broken, "perturbed c_{j} still reconstructs");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = CycPolynomial> {
            proptest::collection::vec((-4i64..=4, 0u8..=1), 0..6).prop_map(|cs| {
                let z = CycNumber::zeta(3);
                CycPolynomial::from_coeffs(
                    cs.into_iter()
                        .map(|(a, b)| {
                            &int(a) + &z.scale(&crate::cyclotomic::Rational::from_integer(
                                BigInt::from(b),
                            ))
                        })
                        .collect(),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn division_identity(a in arb_poly(), b in arb_poly()) {
                if !b.is_zero() {
                    let (q, r) = a.div_rem(&b).unwrap();
                    prop_assert_eq!(q.mul(&b).add(&r), a);
                    if !r.is_zero() {
                        prop_assert!(r.degree().unwrap() < b.degree().unwrap());
                    }
                }
            }

            #[test]
            fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
                if !a.is_zero() || !b.is_zero() {
                    let g = a.gcd(&b);
                    prop_assert!(!g.is_zero());
                    if !a.is_zero() {
                        prop_assert!(g.divides(&a));
                    }
                    if !b.is_zero() {
                        prop_assert!(g.divides(&b));
                    }
                }
            }

            #[test]
            fn recurrence_extension_is_annihilated(a in arb_poly(), seed in -3i64..=3) {
                // Any monic polynomial annihilates the sequence it
                // generates from an arbitrary seed window.
                if a.degree().unwrap_or(0) >= 1 {
                    let p = a.monic();
                    let deg = p.degree().unwrap();
                    let initial: Vec<CycNumber> =
                        (0..deg as i64).map(|i| int(seed + i)).collect();
                    let seq = extend_by_recurrence(&initial, &p, deg + 4).unwrap();
                    for j in 0..=seq.len() - deg - 1 {
                        let mut acc = int(0);
                        for (i, c) in p.coeffs().iter().enumerate() {
                            acc = &acc + &(c * &seq[j + i]);
                        }
                        prop_assert!(acc.is_zero());
                    }
                }
            }
        }
    }
}
