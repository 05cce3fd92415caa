//! Exact verification of the Hopf algebra axioms.
//!
//! Every check compares structure tensors term by term; a failing check
//! carries the first witness basis index (or index pair/triple) at which the
//! identity breaks. Failures are data, not errors: downstream code decides
//! whether a failed report aborts.

use std::collections::BTreeMap;

use crate::cyclotomic::CycNumber;
use crate::linalg::{sparse_from_dense, sparse_normalize, SparseVec};

use super::HopfAlgebra;

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn is_hopf(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn sparse_eq(a: &SparseVec, b: &SparseVec) -> bool {
    let a = sparse_normalize(a.clone());
    let b = sparse_normalize(b.clone());
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x.0 == y.0 && x.1 == y.1)
}

/// Worker count for the heavy per-basis loops: the available parallelism,
/// optionally capped by HOPFIND_JOBS.
fn workers() -> usize {
    let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var("HOPFIND_JOBS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => avail.min(cap),
        _ => avail,
    }
}

/// Runs `check(i)` for every `i` in `0..d` across worker threads (strided,
/// which balances the uneven per-index cost) and returns the failing
/// witness with the smallest index, if any.
fn parallel_first_failure<F>(d: usize, check: F) -> Option<String>
where
    F: Fn(usize) -> Option<String> + Sync,
{
    let nthreads = workers().min(d.max(1));
    if nthreads <= 1 {
        return (0..d).find_map(check);
    }
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..nthreads {
            let check = &check;
            handles.push(scope.spawn(move || {
                (t..d)
                    .step_by(nthreads)
                    .find_map(|i| check(i).map(|w| (i, w)))
            }));
        }
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("axiom worker"))
            .min_by_key(|(i, _)| *i)
            .map(|(_, w)| w)
    })
}

/// Tensor-square terms accumulated as (index pair, coefficient) and
/// collapsed by sort-merge; cheaper than a tree map in the hot loops.
type TensorTerms = Vec<((usize, usize), CycNumber)>;

fn tensor_collapse(mut terms: TensorTerms) -> TensorTerms {
    terms.sort_unstable_by_key(|(k, _)| *k);
    let mut out: TensorTerms = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        if let Some((k0, acc)) = out.last_mut() {
            if *k0 == k {
                *acc = &*acc + &c;
                continue;
            }
        }
        out.push((k, c));
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Runs every axiom check exactly; the report is failure-free iff the data
/// is a Hopf algebra.
pub fn verify_axioms(h: &HopfAlgebra) -> AxiomReport {
    let d = h.dim;
    let timing = std::env::var_os("HOPFIND_AXIOM_TIMING").is_some();
    let mut stamp = std::time::Instant::now();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, witness: Option<String>| {
        if timing {
            eprintln!("axiom check {name}: {:?}", stamp.elapsed());
            stamp = std::time::Instant::now();
        }
        checks.push(AxiomCheck {
            name,
            passed: witness.is_none(),
            witness,
        });
    };

    // Associativity: (e_i e_j) e_k = e_i (e_j e_k).
    let witness = parallel_first_failure(d, |i| {
        for j in 0..d {
            let ij = &h.mult[i][j];
            for k in 0..d {
                let left = h.product_vec_basis(ij, k);
                let right = h.product_basis_vec(i, &h.mult[j][k]);
                if !sparse_eq(&left, &right) {
                    return Some(format!("(i, j, k) = ({i}, {j}, {k})"));
                }
            }
        }
        None
    });
    push("associativity", witness);

    // Unit law: 1 * e_i = e_i = e_i * 1.
    let one = h.unit_sparse();
    let mut witness = None;
    for i in 0..d {
        let e_i: SparseVec = vec![(i, CycNumber::one(h.conductor))];
        if !sparse_eq(&h.product(&one, &e_i), &e_i) || !sparse_eq(&h.product(&e_i, &one), &e_i) {
            witness = Some(format!("basis index {i}"));
            break;
        }
    }
    push("unit-law", witness);

    // Coassociativity: (Delta x id) Delta = (id x Delta) Delta.
    let mut witness = None;
    for i in 0..d {
        let mut left: BTreeMap<(usize, usize, usize), CycNumber> = BTreeMap::new();
        let mut right: BTreeMap<(usize, usize, usize), CycNumber> = BTreeMap::new();
        for (j, k, c) in &h.comult[i] {
            for (a, b, c2) in &h.comult[*j] {
                let v = c * c2;
                let e = left.entry((*a, *b, *k)).or_insert_with(|| CycNumber::zero(h.conductor));
                *e = &*e + &v;
            }
            for (a, b, c2) in &h.comult[*k] {
                let v = c * c2;
                let e = right
                    .entry((*j, *a, *b))
                    .or_insert_with(|| CycNumber::zero(h.conductor));
                *e = &*e + &v;
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        if left != right {
            witness = Some(format!("basis index {i}"));
            break;
        }
    }
    push("coassociativity", witness);

    // Counit law: (eps x id) Delta = id = (id x eps) Delta.
    let mut witness = None;
    for i in 0..d {
        let mut left: SparseVec = Vec::new();
        let mut right: SparseVec = Vec::new();
        for (j, k, c) in &h.comult[i] {
            if !h.counit[*j].is_zero() {
                left.push((*k, c * &h.counit[*j]));
            }
            if !h.counit[*k].is_zero() {
                right.push((*j, c * &h.counit[*k]));
            }
        }
        let e_i: SparseVec = vec![(i, CycNumber::one(h.conductor))];
        if !sparse_eq(&sparse_normalize(left), &e_i) || !sparse_eq(&sparse_normalize(right), &e_i)
        {
            witness = Some(format!("basis index {i}"));
            break;
        }
    }
    push("counit-law", witness);

    // Delta and eps are algebra maps; Delta(1) = 1 x 1 and eps(1) = 1.
    let mut witness = parallel_first_failure(d, |i| {
        for j in 0..d {
            // Delta(e_i e_j)
            let mut lhs: TensorTerms = Vec::new();
            for (k, c) in &h.mult[i][j] {
                for (a, b, c2) in &h.comult[*k] {
                    lhs.push(((*a, *b), c * c2));
                }
            }
            // Delta(e_i) Delta(e_j); skip tuples whose product cells are
            // empty before touching any scalar arithmetic.
            let mut rhs: TensorTerms = Vec::new();
            for (a1, b1, c1) in &h.comult[i] {
                let row_a = &h.mult[*a1];
                let row_b = &h.mult[*b1];
                for (a2, b2, c2) in &h.comult[j] {
                    let cell_a = &row_a[*a2];
                    if cell_a.is_empty() {
                        continue;
                    }
                    let cell_b = &row_b[*b2];
                    if cell_b.is_empty() {
                        continue;
                    }
                    let c12 = c1 * c2;
                    for (fa, ca) in cell_a {
                        for (fb, cb) in cell_b {
                            rhs.push(((*fa, *fb), &(&c12 * ca) * cb));
                        }
                    }
                }
            }
            if tensor_collapse(lhs) != tensor_collapse(rhs) {
                return Some(format!("(i, j) = ({i}, {j})"));
            }
        }
        None
    });
    if witness.is_none() {
        let mut delta_one: TensorTerms = Vec::new();
        for (i, c) in sparse_from_dense(&h.unit) {
            for (a, b, c2) in &h.comult[i] {
                delta_one.push(((*a, *b), &c * c2));
            }
        }
        let mut unit_sq: TensorTerms = Vec::new();
        for (a, ca) in sparse_from_dense(&h.unit) {
            for (b, cb) in sparse_from_dense(&h.unit) {
                unit_sq.push(((a, b), &ca * &cb));
            }
        }
        if tensor_collapse(delta_one) != tensor_collapse(unit_sq) {
            witness = Some("Delta(1) != 1 x 1".to_string());
        }
    }
    push("bialgebra-comult", witness);

    let mut witness = None;
    'bicounit: for i in 0..d {
        for j in 0..d {
            let lhs = h.counit_of(&h.mult[i][j]);
            let rhs = &h.counit[i] * &h.counit[j];
            if lhs != rhs {
                witness = Some(format!("(i, j) = ({i}, {j})"));
                break 'bicounit;
            }
        }
    }
    if witness.is_none() && !h.counit_of(&h.unit_sparse()).is_one() {
        witness = Some("eps(1) != 1".to_string());
    }
    push("bialgebra-counit", witness);

    // Antipode law: mult (S x id) Delta = unit eps = mult (id x S) Delta.
    let antipode_side = |left_leg: bool| -> Option<String> {
        for i in 0..d {
            let mut acc: SparseVec = Vec::new();
            for (j, k, c) in &h.comult[i] {
                let term = if left_leg {
                    h.product_vec_basis(&h.antipode_col(*j), *k)
                } else {
                    let sk = h.antipode_col(*k);
                    h.product_basis_vec(*j, &sk)
                };
                for (t, v) in term {
                    acc.push((t, &v * c));
                }
            }
            let acc = sparse_normalize(acc);
            let expected = sparse_normalize(
                sparse_from_dense(&h.unit)
                    .into_iter()
                    .map(|(t, v)| (t, &v * &h.counit[i]))
                    .collect(),
            );
            if !sparse_eq(&acc, &expected) {
                return Some(format!("basis index {i}"));
            }
        }
        None
    };
    push("antipode-left", antipode_side(true));
    push("antipode-right", antipode_side(false));

    // S^{-1} S = id.
    let witness = if h.antipode_inv.matmul(&h.antipode).is_identity() {
        None
    } else {
        Some("antipode_inverse * antipode != identity".to_string())
    };
    push("antipode-inverse", witness);

    AxiomReport { checks }
}

#[cfg(test)]
mod tests {
    use super::super::{group_algebra, taft};
    use super::*;
    use crate::cyclotomic::CycNumber;

    #[test]
    fn taft_3_passes_all_checks() {
        let h = taft(3, &CycNumber::zeta(3)).unwrap();
        let report = verify_axioms(&h);
        assert!(report.is_hopf(), "failures: {:?}", report.failures());
    }

    #[test]
    fn corrupted_mult_fails_associativity_with_witness() {
        let mut h = taft(3, &CycNumber::zeta(3)).unwrap();
        // Corrupt one multiplication entry.
        h.mult[1][1] = vec![(0, CycNumber::one(3))];
        let report = verify_axioms(&h);
        assert!(!report.is_hopf());
        let failed: Vec<_> = report.failures().iter().map(|c| c.name).collect();
        assert!(failed.contains(&"associativity"), "failed: {failed:?}");
        let assoc = report
            .checks
            .iter()
            .find(|c| c.name == "associativity")
            .unwrap();
        assert!(assoc.witness.is_some());
    }

    #[test]
    fn group_algebra_z4_passes() {
        let h = group_algebra(&crate::hopf::cyclic_cayley(4)).unwrap();
        assert!(verify_axioms(&h).is_hopf());
    }
}
