//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! An element is stored in the power basis `1, zeta_N, ..., zeta_N^(d-1)`
//! with `d = phi(N)` (Euler totient), i.e. as a vector of rationals giving
//! its normal form modulo the N-th cyclotomic polynomial. Working modulo
//! `Phi_N` rather than `X^N - 1` keeps the representation a field, so every
//! nonzero element is invertible.
//!
//! Conjugation is the ring automorphism `zeta_N -> zeta_N^(-1)` and
//! `|z|^2 = z * conj(z)`. Values of different conductors are coerced into
//! `Q(zeta_lcm)` automatically; [`CycNumber::embed`] performs the underlying
//! compatible embedding `zeta_N -> zeta_M^(M/N)` explicitly.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational scalar; always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Errors raised by cyclotomic arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("conductor {from} does not divide target conductor {to}")]
    ConductorNotDivisible { from: u64, to: u64 },
    #[error("multiplicative order of zero is undefined")]
    ZeroOrder,
    #[error("coefficient vector has length {got}, expected phi({conductor}) = {expected}")]
    BadCoefficientLength {
        conductor: u64,
        expected: usize,
        got: usize,
    },
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("conductor must be positive")]
    ZeroConductor,
}

/// Euler's totient function.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0)");
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn lcm64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Coefficients of the N-th cyclotomic polynomial `Phi_N`, ascending degree,
/// monic, with integer coefficients. Computed by exact division of `X^N - 1`
/// by the product of `Phi_d` over proper divisors `d` of `N`, and cached.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial requires N >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.as_ref().clone();
    }
    // X^N - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        result = int_poly_exact_div(&result, &phi_d);
    }
    cache
        .lock()
        .unwrap()
        .insert(n, Arc::new(result.clone()));
    result
}

/// Exact division of integer polynomials; panics if the division is not
/// exact (it always is for the cyclotomic recursion).
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
    }
    assert!(rem.iter().all(BigInt::is_zero), "inexact division");
    quot
}

/// Precomputed reduction data for one conductor.
struct Reducer {
    degree: usize,
    /// Normal forms of X^(degree), X^(degree+1), ..., X^(2*degree-2).
    high_rows: Vec<Vec<Rational>>,
    /// Normal forms of zeta^k for 0 <= k < N.
    zeta_pows: Vec<Vec<Rational>>,
    /// The reduction rows are always integral (the cyclotomic polynomial is
    /// monic with integer coefficients); kept as machine integers when they
    /// fit, enabling the fast multiplication path.
    int_high_rows: Option<Vec<Vec<i64>>>,
}

fn reducer(n: u64) -> &'static Reducer {
    // Reducers live for the process lifetime; leaking keeps the hot path
    // free of locks and refcount traffic. The set of conductors in a run
    // is small.
    static CACHE: OnceLock<Mutex<HashMap<u64, &'static Reducer>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit;
    }
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    // X^degree mod Phi_N = -(low-order coefficients), since Phi_N is monic.
    let base: Vec<Rational> = phi[..degree]
        .iter()
        .map(|c| -Rational::from_integer(c.clone()))
        .collect();
    let shift_reduce = |row: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); degree];
        let top = row[degree - 1].clone();
        out[1..degree].clone_from_slice(&row[..degree - 1]);
        if !top.is_zero() {
            for i in 0..degree {
                out[i] += &top * &base[i];
            }
        }
        out
    };
    let mut high_rows = Vec::new();
    if degree >= 1 {
        let mut row = base.clone();
        high_rows.push(row.clone());
        for _ in 1..degree.saturating_sub(1) {
            row = shift_reduce(&row);
            high_rows.push(row.clone());
        }
    }
    let mut zeta_pows = Vec::with_capacity(n as usize);
    let mut pow = vec![Rational::zero(); degree];
    pow[0] = Rational::one();
    zeta_pows.push(pow.clone());
    for _ in 1..n {
        pow = if degree == 1 {
            // zeta is the rational -phi[0]; multiply by it.
            vec![&pow[0] * &base[0]]
        } else {
            shift_reduce(&pow)
        };
        zeta_pows.push(pow.clone());
    }
    let int_high_rows = high_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    if c.is_integer() {
                        i64::try_from(c.numer().clone()).ok().filter(|v| v.abs() < SMALL)
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<i64>>>()
        })
        .collect::<Option<Vec<Vec<i64>>>>();
    let r: &'static Reducer = Box::leak(Box::new(Reducer {
        degree,
        high_rows,
        zeta_pows,
        int_high_rows,
    }));
    cache.lock().unwrap().insert(n, r);
    r
}

/// Magnitude bound below which coordinates take the machine-integer
/// multiplication path.
const SMALL: i64 = 1 << 30;

fn as_small_ints(v: &[Rational]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    v.iter()
        .map(|c| {
            if c.is_integer() {
                c.numer().to_i64().filter(|x| x.abs() < SMALL)
            } else {
                None
            }
        })
        .collect()
}

impl Reducer {
    /// Reduce a polynomial of degree < 2*degree-1 to normal form.
    fn reduce(&self, poly: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < self.degree {
                out[i] += c;
            } else {
                let row = &self.high_rows[i - self.degree];
                for (j, rc) in row.iter().enumerate() {
                    if !rc.is_zero() {
                        out[j] += c * rc;
                    }
                }
            }
        }
        out
    }
}

/// An exact element of the cyclotomic field `Q(zeta_N)`.
#[derive(Clone)]
pub struct CycNumber {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    /// The zero element of `Q(zeta_N)`.
    pub fn zero(conductor: u64) -> Self {
        let d = euler_phi(conductor) as usize;
        CycNumber {
            conductor,
            coeffs: vec![Rational::zero(); d],
        }
    }

    /// The unit element of `Q(zeta_N)`.
    pub fn one(conductor: u64) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = Rational::one();
        z
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNumber {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    /// `zeta_N^k`, reduced to normal form.
    pub fn root_of_unity(conductor: u64, k: i64) -> Self {
        assert!(conductor >= 1);
        let r = reducer(conductor);
        let k = k.rem_euclid(conductor as i64) as usize;
        CycNumber {
            conductor,
            coeffs: r.zeta_pows[k].clone(),
        }
    }

    /// The primitive root `zeta_N`.
    pub fn zeta(conductor: u64) -> Self {
        Self::root_of_unity(conductor, 1)
    }

    /// Build from explicit power-basis coefficients.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rational>) -> Result<Self, CycError> {
        if conductor == 0 {
            return Err(CycError::ZeroConductor);
        }
        let expected = euler_phi(conductor) as usize;
        if coeffs.len() != expected {
            return Err(CycError::BadCoefficientLength {
                conductor,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(CycNumber { conductor, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Returns the value as a rational if it lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor == 1 {
            return Some(self.coeffs[0].clone());
        }
        let min = self.minimized();
        if min.conductor == 1 {
            Some(min.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under the compatible embedding `zeta_N -> zeta_M^(M/N)`.
    pub fn embed(&self, m: u64) -> Result<Self, CycError> {
        if m == 0 {
            return Err(CycError::ZeroConductor);
        }
        if m == self.conductor {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.conductor) {
            return Err(CycError::ConductorNotDivisible {
                from: self.conductor,
                to: m,
            });
        }
        let step = m / self.conductor;
        let r = reducer(m);
        let mut out = vec![Rational::zero(); r.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pow = &r.zeta_pows[(step * i as u64 % m) as usize];
            for (j, pc) in pow.iter().enumerate() {
                if !pc.is_zero() {
                    out[j] += c * pc;
                }
            }
        }
        Ok(CycNumber {
            conductor: m,
            coeffs: out,
        })
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let l = lcm64(self.conductor, other.conductor);
            (self.embed(l).unwrap(), other.embed(l).unwrap())
        }
    }

    /// Conjugation `zeta_N -> zeta_N^(-1)`; an involutive ring automorphism
    /// fixing the rationals.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let r = reducer(n);
        let mut out = vec![Rational::zero(); r.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = ((n - i as u64 % n) % n) as usize;
            let pow = &r.zeta_pows[k];
            for (j, pc) in pow.iter().enumerate() {
                if !pc.is_zero() {
                    out[j] += c * pc;
                }
            }
        }
        CycNumber {
            conductor: n,
            coeffs: out,
        }
    }

    /// `|z|^2 = z * conj(z)`; fixed by conjugation.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm modulo
    /// `Phi_N`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.conductor));
        }
        if self.conductor == 1 || self.coeffs[1..].iter().all(Rational::is_zero) {
            let mut out = Self::zero(self.conductor);
            out.coeffs[0] = Rational::one() / &self.coeffs[0];
            return Ok(out);
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let (g, _, v) = rat_poly_ext_gcd(&phi, &self.coeffs);
        // Phi_N is irreducible over Q, so the gcd is a nonzero constant.
        debug_assert_eq!(rat_poly_degree(&g), Some(0));
        let scale = Rational::one() / &g[0];
        let inv_poly: Vec<Rational> = v.iter().map(|c| c * &scale).collect();
        let r = reducer(self.conductor);
        Ok(CycNumber {
            conductor: self.conductor,
            coeffs: r.reduce(&inv_poly),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycError> {
        let (a, b) = self.unify(other);
        Ok(&a * &b.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Self, CycError> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        let mut result = Self::one(self.conductor);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.powi(e as i64).unwrap()
    }

    /// Smallest `t >= 1` with `z^t = 1`, or `None` when `z` is not a root of
    /// unity. The roots of unity in `Q(zeta_N)` all have order dividing
    /// `lcm(2, N)`, so the single check `z^lcm(2,N) = 1` bounds the search.
    pub fn multiplicative_order(&self) -> Result<Option<u64>, CycError> {
        if self.is_zero() {
            return Err(CycError::ZeroOrder);
        }
        let n = self.conductor;
        let bound = if n.is_multiple_of(2) { n } else { 2 * n };
        if !self.pow(bound).is_one() {
            return Ok(None);
        }
        for t in divisors(bound) {
            if self.pow(t).is_one() {
                return Ok(Some(t));
            }
        }
        unreachable!("order must divide the bound")
    }

    /// Re-express the value in the smallest divisor conductor that contains
    /// it, e.g. `zeta_6^2 + 1 -> conductor 3`.
    pub fn minimized(&self) -> Self {
        for d in divisors(self.conductor) {
            if d == self.conductor {
                break;
            }
            if let Some(coeffs) = self.coords_in_subfield(d) {
                return CycNumber {
                    conductor: d,
                    coeffs,
                };
            }
        }
        self.clone()
    }

    /// Power-basis coordinates of this value over `Q(zeta_m)` for `m`
    /// dividing the conductor, if the value lies in that subfield.
    fn coords_in_subfield(&self, m: u64) -> Option<Vec<Rational>> {
        debug_assert!(self.conductor.is_multiple_of(m));
        let dm = euler_phi(m) as usize;
        let dn = self.coeffs.len();
        // Columns: embeddings of zeta_m^i; solve for rational coordinates.
        let mut cols = Vec::with_capacity(dm);
        for i in 0..dm {
            let b = CycNumber::root_of_unity(m, i as i64)
                .embed(self.conductor)
                .unwrap();
            cols.push(b.coeffs);
        }
        rat_solve(dn, &cols, &self.coeffs)
    }

    /// Membership in `O_M`, the subring generated by the M-th roots of
    /// unity: true iff the value has integer coordinates in the power basis
    /// of `Z[zeta_M]`. `M = 0` denotes the image of `Z`.
    pub fn is_cyclotomic_integer_in(&self, m: u64) -> bool {
        if m == 0 {
            return match self.as_rational() {
                Some(r) => r.is_integer(),
                None => false,
            };
        }
        let l = lcm64(self.conductor, m);
        let z = self.embed(l).unwrap();
        let dm = euler_phi(m) as usize;
        let mut cols = Vec::with_capacity(dm);
        for i in 0..dm {
            let b = CycNumber::root_of_unity(m, i as i64).embed(l).unwrap();
            cols.push(b.coeffs);
        }
        match rat_solve(z.coeffs.len(), &cols, &z.coeffs) {
            Some(coords) => coords.iter().all(Rational::is_integer),
            None => false,
        }
    }

    /// Scale by a rational.
    pub fn scale(&self, r: &Rational) -> Self {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

fn rat_poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Extended gcd of rational polynomials: returns (g, u, v) with
/// u*a + v*b = g.
fn rat_poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![Rational::zero()];
    let mut t0 = vec![Rational::zero()];
    let mut t1 = vec![Rational::one()];
    while rat_poly_degree(&r1).is_some() {
        let (q, r) = rat_poly_divmod(&r0, &r1);
        let s2 = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
        let t2 = rat_poly_sub(&t0, &rat_poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

fn rat_poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (da, db) = match (rat_poly_degree(a), rat_poly_degree(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return vec![Rational::zero()],
    };
    let mut out = vec![Rational::zero(); da + db + 1];
    for i in 0..=da {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=db {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

fn rat_poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

fn rat_poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = rat_poly_degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let da = match rat_poly_degree(&rem) {
        Some(d) => d,
        None => return (vec![Rational::zero()], rem),
    };
    if da < db {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); da - db + 1];
    let lead = b[db].clone();
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for i in 0..=db {
            let delta = &c * &b[i];
            rem[k + i] -= delta;
        }
    }
    (quot, rem)
}

/// Solve `sum_i x_i * cols[i] = rhs` over the rationals by Gaussian
/// elimination; returns `None` when inconsistent.
fn rat_solve(nrows: usize, cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = Rational::one() / &m[rank][col];
        for c in col..=ncols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=ncols {
                    let delta = &f * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    // Inconsistent if any remaining row is (0, ..., 0 | nonzero).
    for r in rank..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        if self.conductor == rhs.conductor {
            return CycNumber {
                conductor: self.conductor,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(x, y)| x + y)
                    .collect(),
            };
        }
        let (mut a, b) = self.unify(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        if self.conductor == rhs.conductor {
            return CycNumber {
                conductor: self.conductor,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(x, y)| x - y)
                    .collect(),
            };
        }
        let (mut a, b) = self.unify(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn mul_same_conductor(conductor: u64, a: &[Rational], b: &[Rational]) -> CycNumber {
    let d = a.len();
    if d == 1 {
        return CycNumber {
            conductor,
            coeffs: vec![&a[0] * &b[0]],
        };
    }
    // Scalar fast path: a constant operand only scales the other.
    let scalar_of = |v: &[Rational]| -> Option<usize> {
        let mut nz = None;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                if nz.is_some() {
                    return None;
                }
                nz = Some(i);
            }
        }
        nz
    };
    if let Some(0) = scalar_of(a) {
        return CycNumber {
            conductor,
            coeffs: b.iter().map(|c| c * &a[0]).collect(),
        };
    }
    if let Some(0) = scalar_of(b) {
        return CycNumber {
            conductor,
            coeffs: a.iter().map(|c| c * &b[0]).collect(),
        };
    }
    // Machine-integer path: small integral coordinates multiply and reduce
    // in i128 without touching big-integer arithmetic.
    if let (Some(ia), Some(ib)) = (as_small_ints(a), as_small_ints(b)) {
        let r = reducer(conductor);
        if let Some(rows) = &r.int_high_rows {
            let mut prod = vec![0i128; 2 * d - 1];
            for (i, &x) in ia.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in ib.iter().enumerate() {
                    if y != 0 {
                        prod[i + j] += x as i128 * y as i128;
                    }
                }
            }
            let mut out = vec![0i128; d];
            for (i, &c) in prod.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if i < d {
                    out[i] += c;
                } else {
                    for (j, &rc) in rows[i - d].iter().enumerate() {
                        if rc != 0 {
                            out[j] += c * rc as i128;
                        }
                    }
                }
            }
            return CycNumber {
                conductor,
                coeffs: out
                    .into_iter()
                    .map(|c| Rational::from_integer(BigInt::from(c)))
                    .collect(),
            };
        }
    }
    let mut prod = vec![Rational::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    // No reduction needed when the product degree stays below d.
    if prod[d..].iter().all(Rational::is_zero) {
        prod.truncate(d);
        return CycNumber {
            conductor,
            coeffs: prod,
        };
    }
    let r = reducer(conductor);
    CycNumber {
        conductor,
        coeffs: r.reduce(&prod),
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.conductor == rhs.conductor {
            return mul_same_conductor(self.conductor, &self.coeffs, &rhs.coeffs);
        }
        let (a, b) = self.unify(rhs);
        mul_same_conductor(a.conductor, &a.coeffs, &b.coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

/// Formats `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, CycError> {
    let bad = || CycError::BadRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

impl fmt::Display for CycNumber {
    /// Canonical rendering `a0 + a1*z{N} + a2*z{N}^2 + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.cmp(&Rational::zero()) == Ordering::Less;
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = abs.is_one();
            if i == 0 {
                write!(f, "{}", format_rational(&abs))?;
            } else {
                if !coeff_is_one {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                if i == 1 {
                    write!(f, "z{}", self.conductor)?;
                } else {
                    write!(f, "z{}^{}", self.conductor, i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber[{}; {}]", self.conductor, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumberRepr {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CycNumberRepr {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CycNumberRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycNumber::from_coeffs(repr.conductor, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Independent long-division oracle used to pin Phi_6.
    fn divide_out(mut num: Vec<i64>, den: &[i64]) -> Vec<i64> {
        let dd = den.len() - 1;
        let dn = num.len() - 1;
        let mut quot = vec![0i64; dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = num[k + dd] / den[dd];
            quot[k] = c;
            for i in 0..=dd {
                num[k + i] -= c * den[i];
            }
        }
        assert!(num.iter().all(|&c| c == 0));
        quot
    }

    #[test]
    fn cyclotomic_polynomial_small_cases() {
        assert_eq!(
            cyclotomic_polynomial(1),
            vec![BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        // Phi_6 frozen from dividing X^6 - 1 by Phi_1 * Phi_2 * Phi_3 with an
        // independent division routine.
        let x6m1 = vec![-1i64, 0, 0, 0, 0, 0, 1];
        let q = divide_out(x6m1, &[-1, 1]); // / Phi_1
        let q = divide_out(q, &[1, 1]); // / Phi_2
        let q = divide_out(q, &[1, 1, 1]); // / Phi_3
        assert_eq!(q, vec![1, -1, 1]);
        assert_eq!(
            cyclotomic_polynomial(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
    }

    #[test]
    fn monic_with_totient_degree() {
        for n in 1..=40u64 {
            let p = cyclotomic_polynomial(n);
            assert_eq!(p.len() as u64 - 1, euler_phi(n), "degree of Phi_{n}");
            assert!(p.last().unwrap().is_one(), "Phi_{n} monic");
        }
    }

    #[test]
    fn sum_of_primitive_cube_roots() {
        let z = CycNumber::zeta(3);
        let sum = &z + &z.pow(2);
        assert_eq!(sum, CycNumber::from_integer(-1));
    }

    #[test]
    fn inversion_examples() {
        // invert(1 + zeta_3^-2) = 1 + zeta_3^2, since both multiply to 1.
        let z = CycNumber::zeta(3);
        let a = &CycNumber::one(3) + &z.powi(-2).unwrap();
        let inv = a.inv().unwrap();
        let expected = &CycNumber::one(3) + &z.pow(2);
        assert_eq!(inv, expected);
        assert!((&a * &inv).is_one());

        let b = &CycNumber::one(3) - &z;
        assert!((&b * &b.inv().unwrap()).is_one());

        assert_eq!(
            CycNumber::zero(5).inv(),
            Err(CycError::DivisionByZero(5))
        );
    }

    #[test]
    fn conj_is_inverse_root() {
        let z5 = CycNumber::zeta(5);
        assert_eq!(z5.conj(), z5.pow(4));
        let r = CycNumber::from_rational(rat(7, 3));
        assert_eq!(r.conj(), r);
        let z7 = CycNumber::zeta(7);
        let v = &CycNumber::one(7) + &z7.pow(3).scale(&rat(2, 1));
        assert_eq!(v.conj().conj(), v);
    }

    #[test]
    fn norm_examples() {
        // (1 + zeta)(1 + zeta^2) = 2 + zeta + zeta^2 = 1 for zeta = zeta_3.
        let z = CycNumber::zeta(3);
        let v = &CycNumber::one(3) + &z;
        assert_eq!(v.norm_sq(), CycNumber::from_integer(1));
        assert!(CycNumber::zero(4).norm_sq().is_zero());
        assert_eq!(
            CycNumber::from_integer(3).norm_sq(),
            CycNumber::from_integer(9)
        );
    }

    #[test]
    fn embed_compatibility() {
        let z3 = CycNumber::zeta(3);
        let z6 = CycNumber::zeta(6);
        assert_eq!(z3.embed(6).unwrap(), z6.pow(2));
        assert_eq!(
            CycNumber::from_integer(-1).embed(4).unwrap(),
            CycNumber::from_integer(-1)
        );
        // Norm is embedding-invariant.
        let v = &CycNumber::one(3) + &z3;
        let w = v.embed(12).unwrap();
        assert_eq!(w.norm_sq(), CycNumber::from_integer(1));
        assert_eq!(v.embed(3).unwrap(), v);
        assert!(matches!(
            z3.embed(4),
            Err(CycError::ConductorNotDivisible { from: 3, to: 4 })
        ));
    }

    #[test]
    fn multiplicative_orders() {
        let z9 = CycNumber::zeta(9);
        let sq = z9.pow(2);
        assert_eq!(sq.multiplicative_order().unwrap(), Some(9));
        // Direct powering confirms the order.
        assert!(sq.pow(9).is_one());
        for t in 1..9 {
            assert!(!sq.pow(t).is_one());
        }
        assert_eq!(
            CycNumber::from_integer(1).multiplicative_order().unwrap(),
            Some(1)
        );
        assert_eq!(
            CycNumber::from_integer(2).multiplicative_order().unwrap(),
            None
        );
        assert_eq!(
            CycNumber::zero(3).multiplicative_order(),
            Err(CycError::ZeroOrder)
        );
        assert_eq!(
            CycNumber::from_integer(-1).multiplicative_order().unwrap(),
            Some(2)
        );
    }

    #[test]
    fn minimization_and_membership() {
        let z6 = CycNumber::zeta(6);
        // zeta_6^2 generates Q(zeta_3).
        let v = z6.pow(2);
        assert_eq!(v.minimized().conductor(), 3);
        assert_eq!(v.minimized(), CycNumber::zeta(3));
        // 2 + 2*zeta_3^2 lies in Z[zeta_6].
        let z3 = CycNumber::zeta(3);
        let w = (&CycNumber::one(3) + &z3.pow(2)).scale(&rat(2, 1));
        assert!(w.is_cyclotomic_integer_in(6));
        // (1 + zeta_3^2)/2 = (1 - zeta_6)/2 has half-integer coordinates.
        assert!(!w.scale(&rat(1, 4)).is_cyclotomic_integer_in(6));
        assert!(CycNumber::from_integer(5).is_cyclotomic_integer_in(0));
        assert!(!CycNumber::from_rational(rat(1, 2)).is_cyclotomic_integer_in(0));
        assert!(!z3.is_cyclotomic_integer_in(0));
    }

    #[test]
    fn display_canonical_form() {
        let z6 = CycNumber::zeta(6);
        let v = &CycNumber::from_integer(2) - &z6.scale(&rat(2, 1));
        assert_eq!(v.to_string(), "2 - 2*z6");
        assert_eq!(CycNumber::zero(5).to_string(), "0");
        let w = &z6.scale(&rat(1, 2)) - &CycNumber::one(6);
        assert_eq!(w.to_string(), "-1 + 1/2*z6");
    }

    #[test]
    fn serde_round_trip() {
        let z12 = CycNumber::zeta(12);
        let v = &z12.pow(5).scale(&rat(-3, 7)) + &CycNumber::from_integer(2).embed(12).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        let back: CycNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        let parsed: Result<CycNumber, _> =
            serde_json::from_str("{\"conductor\":3,\"coeffs\":[\"1\"]}");
        assert!(parsed.is_err(), "length must match phi(3) = 2");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyc() -> impl Strategy<Value = CycNumber> {
            let conductors = prop_oneof![Just(1u64), Just(3), Just(4), Just(6), Just(12)];
            conductors.prop_flat_map(|n| {
                let d = euler_phi(n) as usize;
                proptest::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(move |cs| {
                    let coeffs = cs.into_iter().map(|(p, q)| rat(p, q)).collect();
                    CycNumber::from_coeffs(n, coeffs).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn ring_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
            }

            #[test]
            fn conj_is_ring_automorphism(a in arb_cyc(), b in arb_cyc()) {
                prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
                prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
                prop_assert_eq!(a.conj().conj(), a);
            }

            #[test]
            fn norm_is_multiplicative(a in arb_cyc(), b in arb_cyc()) {
                prop_assert_eq!((&a * &b).norm_sq(), &a.norm_sq() * &b.norm_sq());
                let n = a.norm_sq();
                prop_assert_eq!(n.conj(), n);
            }

            #[test]
            fn embed_commutes_with_ops(a in arb_cyc(), b in arb_cyc()) {
                let m = lcm64(a.conductor(), b.conductor()) * 2;
                let ea = a.embed(m).unwrap();
                let eb = b.embed(m).unwrap();
                prop_assert_eq!((&a + &b).embed(m).unwrap(), &ea + &eb);
                prop_assert_eq!((&a * &b).embed(m).unwrap(), &ea * &eb);
                prop_assert_eq!(a.conj().embed(m).unwrap(), ea.conj());
                if !a.is_zero() {
                    prop_assert_eq!(a.inv().unwrap().embed(m).unwrap(), ea.inv().unwrap());
                }
            }

            #[test]
            fn field_inverse_law(a in arb_cyc()) {
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
            }

            #[test]
            fn roots_of_unity_have_unit_norm(n in 1u64..=12, k in 0i64..12) {
                let z = CycNumber::root_of_unity(n, k);
                prop_assert!(z.norm_sq().is_one());
            }
        }
    }
}
