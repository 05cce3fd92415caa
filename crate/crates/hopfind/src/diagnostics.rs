//! Optional empirical observations about indicator sequences. Nothing here
//! is asserted by the test suites; these functions report what holds on a
//! computed range and leave interpretation to the caller.

use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::hopf::HopfAlgebra;
use crate::indicators::indicator_trace_range;

/// Whether `nu_n = f(n) * n` for a periodic sequence `f` of the given
/// period, on `1..=checked_upto`. When it holds, `factor[(n-1) % period]`
/// is `f(n)`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearFactorObservation {
    pub period: u64,
    pub holds: bool,
    pub checked_upto: u64,
    pub factor: Vec<CycNumber>,
}

pub fn linear_factor_observation(
    h: &HopfAlgebra,
    period: u64,
    upto: u64,
) -> LinearFactorObservation {
    let values = indicator_trace_range(h, 1, upto as i64);
    let mut factor: Vec<Option<CycNumber>> = vec![None; period as usize];
    let mut holds = true;
    for v in &values {
        let n = v.n as u64;
        let f = v
            .value
            .div(&CycNumber::from_integer(v.n))
            .expect("n >= 1 is nonzero");
        let slot = &mut factor[((n - 1) % period) as usize];
        match slot {
            None => *slot = Some(f),
            Some(existing) => {
                if *existing != f {
                    holds = false;
                    break;
                }
            }
        }
    }
    LinearFactorObservation {
        period,
        holds,
        checked_upto: upto,
        factor: factor
            .into_iter()
            .map(|f| f.unwrap_or_else(|| CycNumber::from_integer(0)))
            .collect(),
    }
}

/// Whether `nu_n / gcd(n, dim)` is an algebraic integer for every
/// `n` in `1..=checked_upto`; failures list the offending `n`.
#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityObservation {
    pub checked_upto: u64,
    pub all_integral: bool,
    pub failures: Vec<u64>,
}

pub fn divisibility_observation(h: &HopfAlgebra, upto: u64) -> DivisibilityObservation {
    let dim = h.dim() as u64;
    let values = indicator_trace_range(h, 1, upto as i64);
    let mut failures = Vec::new();
    for v in &values {
        let n = v.n as u64;
        let g = gcd(n, dim);
        let quotient = v
            .value
            .div(&CycNumber::from_integer(g as i64))
            .expect("gcd is nonzero");
        let q = quotient.minimized();
        if !q.is_cyclotomic_integer_in(q.conductor()) {
            failures.push(n);
        }
    }
    DivisibilityObservation {
        checked_upto: upto,
        all_integral: failures.is_empty(),
        failures,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::taft;

    #[test]
    fn taft_4_linear_factor_holds_with_period_2() {
        let h = taft(2, &CycNumber::from_integer(-1)).unwrap();
        let obs = linear_factor_observation(&h, 2, 12);
        assert!(obs.holds);
        // nu_n = n, so the factor is constantly 1.
        assert!(obs.factor.iter().all(CycNumber::is_one));
    }

    #[test]
    fn taft_9_divisibility_observation() {
        let h = taft(3, &CycNumber::zeta(3)).unwrap();
        let obs = divisibility_observation(&h, 12);
        assert!(obs.all_integral, "failures at {:?}", obs.failures);
    }
}
