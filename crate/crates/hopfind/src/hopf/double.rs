//! The Drinfeld double on the basis `e_t^* (x) e_u` of `H^{*cop} (x) H`.
//!
//! Multiplication is
//!
//! ```text
//! (f >< h)(f' >< h') = f . (h_(1) -> f' <- S^{-1}(h_(3))) >< h_(2) h',
//! (a -> f <- b)(x) = f(b x a),
//! ```
//!
//! and the coalgebra structure is the tensor coalgebra of `H^{*cop}` and
//! `H`. Both `H` (as `eps >< h`) and `H^{*cop}` (as `f >< 1`) sit inside as
//! Hopf subalgebras with `(f >< 1)(eps >< h) = f >< h`, so the antipode is
//! forced to be
//!
//! ```text
//! S_D(f >< h) = (eps >< S(h)) . (f o S^{-1} >< 1),
//! ```
//!
//! being an antihomomorphism extending the antipodes of the two
//! subalgebras. The construction evaluates this product through the
//! double's own multiplication tensor and then certifies the result against
//! the antipode equations `mult (S x id) Delta = unit eps = mult (id x S)
//! Delta`; since the convolution inverse of the identity is unique, passing
//! that check canonically identifies the antipode. A certification failure
//! is reported as an error (it would indicate a construction bug).

use crate::cyclotomic::CycNumber;
use crate::linalg::{sparse_from_dense, sparse_normalize, Matrix, SparseVec};

use super::{HopfAlgebra, HopfError};

pub fn drinfeld_double(h: &HopfAlgebra) -> Result<HopfAlgebra, HopfError> {
    let d = h.dim;
    let dd = d * d;
    let conductor = h.conductor;
    let idx = |t: usize, u: usize| t * d + u;

    // Delta^(3) per basis element: (Delta x id) Delta.
    let mut delta3: Vec<Vec<(usize, usize, usize, CycNumber)>> = Vec::with_capacity(d);
    for u in 0..d {
        let mut terms = Vec::new();
        for (j, k, c) in &h.comult[u] {
            for (a, b, c2) in &h.comult[*j] {
                terms.push((*a, *b, *k, c * c2));
            }
        }
        delta3.push(terms);
    }

    // Dual multiplication and dual comultiplication tensors.
    let mut dual_mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); d]; d];
    for k in 0..d {
        for (i, j, c) in &h.comult[k] {
            dual_mult[*i][*j].push((k, c.clone()));
        }
    }
    let mut dual_comult: Vec<Vec<(usize, usize, CycNumber)>> = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            for (t, c) in &h.mult[i][j] {
                dual_comult[*t].push((i, j, c.clone()));
            }
        }
    }

    // Multiplication tensor of the double.
    let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dd]; dd];
    for u in 0..d {
        for t in 0..d {
            // Terms common to every left factor (s, u): the transformed
            // functional h_(1) -> e_t^* <- S^{-1}(h_(3)) and the H-part
            // h_(2) e_v are assembled per (a, b, c) in Delta^(3)(e_u).
            for (a, b, c, gamma) in &delta3[u] {
                let s_inv_c = h.antipode_inv_col(*c);
                // g_x = <e_t^*, S^{-1}(e_c) e_x e_a>.
                let mut g: SparseVec = Vec::new();
                for x in 0..d {
                    let w1 = h.product_vec_basis(&s_inv_c, x);
                    let w2 = h.product_vec_basis(&w1, *a);
                    for (y, cy) in w2 {
                        if y == t && !cy.is_zero() {
                            g.push((x, cy));
                        }
                    }
                }
                if g.is_empty() {
                    continue;
                }
                for s in 0..d {
                    // f g in H*, then tensor with the H-part.
                    let mut fg: SparseVec = Vec::new();
                    for (x, gx) in &g {
                        for (y, cy) in &dual_mult[s][*x] {
                            fg.push((*y, gx * cy));
                        }
                    }
                    let fg = sparse_normalize(fg);
                    if fg.is_empty() {
                        continue;
                    }
                    for v in 0..d {
                        let hpart = &h.mult[*b][v];
                        if hpart.is_empty() {
                            continue;
                        }
                        let cell = &mut mult[idx(s, u)][idx(t, v)];
                        for (y, cy) in &fg {
                            for (z, cz) in hpart {
                                cell.push((idx(*y, *z), &(gamma * cy) * cz));
                            }
                        }
                    }
                }
            }
        }
    }
    for row in &mut mult {
        for cell in row.iter_mut() {
            *cell = sparse_normalize(std::mem::take(cell));
        }
    }

    // Unit: eps >< 1.
    let mut unit = vec![CycNumber::zero(conductor); dd];
    for t in 0..d {
        if h.counit[t].is_zero() {
            continue;
        }
        for u in 0..d {
            if !h.unit[u].is_zero() {
                unit[idx(t, u)] = &h.counit[t] * &h.unit[u];
            }
        }
    }

    // Tensor coalgebra of H^{*cop} and H.
    let mut comult: Vec<Vec<(usize, usize, CycNumber)>> = vec![Vec::new(); dd];
    for t in 0..d {
        for u in 0..d {
            let mut terms = Vec::new();
            for (i, j, c) in &dual_comult[t] {
                for (a, b, c2) in &h.comult[u] {
                    terms.push((idx(*j, *a), idx(*i, *b), c * c2));
                }
            }
            comult[idx(t, u)] = terms;
        }
    }

    let mut counit = vec![CycNumber::zero(conductor); dd];
    for t in 0..d {
        for u in 0..d {
            counit[idx(t, u)] = &h.unit[t] * &h.counit[u];
        }
    }

    let labels = {
        let ls: Vec<String> = (0..dd)
            .map(|i| format!("({})*><{}", h.label(i / d), h.label(i % d)))
            .collect();
        Some(ls)
    };

    let mut double = HopfAlgebra {
        dim: dd,
        conductor,
        mult,
        unit,
        comult,
        counit,
        antipode: Matrix::zero(dd, dd, conductor),
        antipode_inv: Matrix::zero(dd, dd, conductor),
        basis_labels: labels,
        name: format!("double({})", h.name),
        hint: None,
    };

    // S_D(e_t^* >< e_u) = (eps >< S(e_u)) . (e_t^* o S^{-1} >< 1).
    let eps_sparse = sparse_from_dense(&h.counit);
    let unit_sparse = sparse_from_dense(&h.unit);
    let mut antipode = Matrix::zero(dd, dd, conductor);
    for t in 0..d {
        for u in 0..d {
            let s_u = h.antipode_col(u);
            let mut left: SparseVec = Vec::new();
            for (p, cp) in &eps_sparse {
                for (w, cw) in &s_u {
                    left.push((idx(*p, *w), cp * cw));
                }
            }
            let mut right: SparseVec = Vec::new();
            for x in 0..d {
                let coeff = h.antipode_inv.get(t, x);
                if coeff.is_zero() {
                    continue;
                }
                for (z, cz) in &unit_sparse {
                    right.push((idx(x, *z), coeff * cz));
                }
            }
            let col = double.product(&sparse_normalize(left), &sparse_normalize(right));
            for (i, c) in col {
                antipode.set(i, idx(t, u), c);
            }
        }
    }
    let antipode_inv = antipode
        .inverse()
        .ok_or_else(|| HopfError::AntipodeConstruction("double antipode is singular".into()))?;
    double.antipode = antipode;
    double.antipode_inv = antipode_inv;

    // Certify the antipode equations; uniqueness of the convolution inverse
    // makes a passing candidate the antipode.
    certify_antipode(&double)?;
    Ok(double)
}

fn certify_antipode(h: &HopfAlgebra) -> Result<(), HopfError> {
    let unit = h.unit_sparse();
    for i in 0..h.dim {
        let mut left: SparseVec = Vec::new();
        let mut right: SparseVec = Vec::new();
        for (j, k, c) in &h.comult[i] {
            for (t, v) in h.product_vec_basis(&h.antipode_col(*j), *k) {
                left.push((t, &v * c));
            }
            let sk = h.antipode_col(*k);
            for (t, v) in h.product_basis_vec(*j, &sk) {
                right.push((t, &v * c));
            }
        }
        let expected = sparse_normalize(
            unit.iter()
                .map(|(t, v)| (*t, v * &h.counit[i]))
                .collect(),
        );
        if sparse_normalize(left) != expected || sparse_normalize(right) != expected {
            return Err(HopfError::AntipodeConstruction(format!(
                "antipode equation fails at basis index {i}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic_cayley, group_algebra, taft, verify_axioms};
    use super::*;

    #[test]
    fn double_of_z2_passes_axioms() {
        let h = group_algebra(&cyclic_cayley(2)).unwrap();
        let d = drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), 4);
        let report = verify_axioms(&d);
        assert!(report.is_hopf(), "{:?}", report.failures());
    }

    #[test]
    fn double_of_sweedler_passes_axioms() {
        let h = taft(2, &CycNumber::from_integer(-1)).unwrap();
        let d = drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), 16);
        let report = verify_axioms(&d);
        assert!(report.is_hopf(), "{:?}", report.failures());
    }

    #[test]
    fn double_of_taft_3_passes_axioms() {
        let h = taft(3, &CycNumber::zeta(3)).unwrap();
        let d = drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), 81);
        let report = verify_axioms(&d);
        assert!(report.is_hopf(), "{:?}", report.failures());
    }
}
