//! Derived constructions: dual, opposite, co-opposite, tensor product.

use crate::cyclotomic::CycNumber;
use crate::linalg::{Matrix, SparseVec};

use super::HopfAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derived {
    Dual,
    Op,
    Cop,
}

/// The dual, opposite or co-opposite Hopf algebra. The dual transposes the
/// structure tensors (multiplication of `H*` comes from `Delta` of `H`,
/// `S* = S^t`); `op` reverses the multiplication and `cop` reverses the
/// comultiplication, both taking `S^{-1}` as antipode.
pub fn derived(h: &HopfAlgebra, which: Derived) -> HopfAlgebra {
    match which {
        Derived::Dual => dual(h),
        Derived::Op => opposite(h),
        Derived::Cop => coopposite(h),
    }
}

fn dual(h: &HopfAlgebra) -> HopfAlgebra {
    let d = h.dim;
    // e_i^* e_j^* = sum_k <Delta(e_k), e_i (x) e_j> e_k^*.
    let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); d]; d];
    for k in 0..d {
        for (i, j, c) in &h.comult[k] {
            mult[*i][*j].push((k, c.clone()));
        }
    }
    for row in &mut mult {
        for cell in row.iter_mut() {
            *cell = crate::linalg::sparse_normalize(std::mem::take(cell));
        }
    }
    // Delta(e_k^*) = sum_{i,j} <e_k^*, e_i e_j> e_i^* (x) e_j^*.
    let mut comult: Vec<Vec<(usize, usize, CycNumber)>> = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            for (k, c) in &h.mult[i][j] {
                comult[*k].push((i, j, c.clone()));
            }
        }
    }
    let labels = h
        .basis_labels
        .as_ref()
        .map(|ls| ls.iter().map(|l| format!("({l})*")).collect());
    HopfAlgebra {
        dim: d,
        conductor: h.conductor,
        mult,
        unit: h.counit.clone(),
        comult,
        counit: h.unit.clone(),
        antipode: h.antipode.transpose(),
        antipode_inv: h.antipode_inv.transpose(),
        basis_labels: labels,
        name: format!("dual({})", h.name),
        hint: h.hint,
    }
}

fn opposite(h: &HopfAlgebra) -> HopfAlgebra {
    let d = h.dim;
    let mult: Vec<Vec<SparseVec>> = (0..d)
        .map(|i| (0..d).map(|j| h.mult[j][i].clone()).collect())
        .collect();
    HopfAlgebra {
        dim: d,
        conductor: h.conductor,
        mult,
        unit: h.unit.clone(),
        comult: h.comult.clone(),
        counit: h.counit.clone(),
        antipode: h.antipode_inv.clone(),
        antipode_inv: h.antipode.clone(),
        basis_labels: h.basis_labels.clone(),
        name: format!("op({})", h.name),
        hint: h.hint,
    }
}

fn coopposite(h: &HopfAlgebra) -> HopfAlgebra {
    let comult: Vec<Vec<(usize, usize, CycNumber)>> = h
        .comult
        .iter()
        .map(|terms| terms.iter().map(|(j, k, c)| (*k, *j, c.clone())).collect())
        .collect();
    HopfAlgebra {
        dim: h.dim,
        conductor: h.conductor,
        mult: h.mult.clone(),
        unit: h.unit.clone(),
        comult,
        counit: h.counit.clone(),
        antipode: h.antipode_inv.clone(),
        antipode_inv: h.antipode.clone(),
        basis_labels: h.basis_labels.clone(),
        name: format!("cop({})", h.name),
        hint: h.hint,
    }
}

/// Componentwise tensor product on the product basis, index `i1*d2 + i2`;
/// scalars are coerced into the least common conductor.
pub fn tensor(h1: &HopfAlgebra, h2: &HopfAlgebra) -> HopfAlgebra {
    let (d1, d2) = (h1.dim, h2.dim);
    let d = d1 * d2;
    let conductor = h1.common_conductor(h2);
    let em = |c: &CycNumber| c.embed(conductor).expect("lcm conductor");
    let idx = |i1: usize, i2: usize| i1 * d2 + i2;

    let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); d]; d];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j1 in 0..d1 {
                for j2 in 0..d2 {
                    let mut cell = Vec::new();
                    for (k1, c1) in &h1.mult[i1][j1] {
                        for (k2, c2) in &h2.mult[i2][j2] {
                            cell.push((idx(*k1, *k2), &em(c1) * &em(c2)));
                        }
                    }
                    mult[idx(i1, i2)][idx(j1, j2)] = crate::linalg::sparse_normalize(cell);
                }
            }
        }
    }

    let mut unit = vec![CycNumber::zero(conductor); d];
    for (i1, u1) in h1.unit.iter().enumerate() {
        if u1.is_zero() {
            continue;
        }
        for (i2, u2) in h2.unit.iter().enumerate() {
            if !u2.is_zero() {
                unit[idx(i1, i2)] = &em(u1) * &em(u2);
            }
        }
    }

    let mut comult: Vec<Vec<(usize, usize, CycNumber)>> = vec![Vec::new(); d];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            let mut terms = Vec::new();
            for (j1, k1, c1) in &h1.comult[i1] {
                for (j2, k2, c2) in &h2.comult[i2] {
                    terms.push((idx(*j1, *j2), idx(*k1, *k2), &em(c1) * &em(c2)));
                }
            }
            comult[idx(i1, i2)] = terms;
        }
    }

    let mut counit = vec![CycNumber::zero(conductor); d];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            counit[idx(i1, i2)] = &em(&h1.counit[i1]) * &em(&h2.counit[i2]);
        }
    }

    let kron = |a: &Matrix, b: &Matrix| -> Matrix {
        let mut m = Matrix::zero(d, d, conductor);
        for r1 in 0..d1 {
            for c1 in 0..d1 {
                let x = a.get(r1, c1);
                if x.is_zero() {
                    continue;
                }
                let x = em(x);
                for r2 in 0..d2 {
                    for c2 in 0..d2 {
                        let y = b.get(r2, c2);
                        if !y.is_zero() {
                            m.set(idx(r1, r2), idx(c1, c2), &x * &em(y));
                        }
                    }
                }
            }
        }
        m
    };

    let labels = match (&h1.basis_labels, &h2.basis_labels) {
        (Some(l1), Some(l2)) => {
            let mut ls = Vec::with_capacity(d);
            for a in l1 {
                for b in l2 {
                    ls.push(format!("{a}(x){b}"));
                }
            }
            Some(ls)
        }
        _ => None,
    };

    HopfAlgebra {
        dim: d,
        conductor,
        mult,
        unit,
        comult,
        counit,
        antipode: kron(&h1.antipode, &h2.antipode),
        antipode_inv: kron(&h1.antipode_inv, &h2.antipode_inv),
        basis_labels: labels,
        name: format!("tensor({}, {})", h1.name, h2.name),
        hint: None,
    }
}
