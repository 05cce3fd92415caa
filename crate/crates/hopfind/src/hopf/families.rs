//! The built-in algebra families: group algebras from Cayley tables, the
//! Taft algebras, and the associated graded small quantum group of sl2.
//!
//! Basis orderings are fixed so serialized fixtures stay stable:
//! group algebras use the table order, `taft(N)` uses `x^r g^s` ordered by
//! `(r, s)` lexicographically, and `gr_uqsl2(N)` uses `x^r y^s g^l` ordered
//! by `(r, s, l)` lexicographically.

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::{lcm64, CycNumber, Rational};
use crate::linalg::{Matrix, SparseVec};
use crate::qcomb::gaussian_binomial;

use super::{HopfAlgebra, HopfError, RecurrenceHint};

/// Cayley table of the cyclic group Z/n, elements `0..n` with addition.
pub fn cyclic_cayley(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Cayley table of the direct product, indexed `i1 * |G2| + i2`.
pub fn product_cayley(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (na, nb) = (a.len(), b.len());
    let mut t = vec![vec![0usize; na * nb]; na * nb];
    for i1 in 0..na {
        for i2 in 0..nb {
            for j1 in 0..na {
                for j2 in 0..nb {
                    t[i1 * nb + i2][j1 * nb + j2] = a[i1][j1] * nb + b[i2][j2];
                }
            }
        }
    }
    t
}

/// Cayley table of the symmetric group on three letters. Elements are the
/// six permutations of `[0, 1, 2]` in lexicographic order of their one-line
/// notation; composition applies the right factor first.
pub fn s3_cayley() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let n = perms.len();
    let mut t = vec![vec![0usize; n]; n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let comp = [p[q[0]], p[q[1]], p[q[2]]];
            t[i][j] = index_of(&comp);
        }
    }
    t
}

fn validate_group(table: &[Vec<usize>]) -> Result<usize, HopfError> {
    let n = table.len();
    if n == 0 {
        return Err(HopfError::NotAGroup("empty table".into()));
    }
    if n > 64 {
        return Err(HopfError::GroupTooLarge(n));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(HopfError::NotAGroup(format!("row {i} has length {}", row.len())));
        }
        if row.iter().any(|&x| x >= n) {
            return Err(HopfError::NotAGroup(format!("row {i} has an out-of-range entry")));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
        .ok_or_else(|| HopfError::NotAGroup("no two-sided identity".into()))?;
    for i in 0..n {
        if !(0..n).any(|j| table[i][j] == identity && table[j][i] == identity) {
            return Err(HopfError::NotAGroup(format!("element {i} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(HopfError::NotAGroup(format!(
                        "associativity fails at triple ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok(identity)
}

/// The group algebra `kG` from a Cayley table; the identity element is
/// located and validated together with inverses and associativity
/// (exhaustively, for |G| <= 64).
pub fn group_algebra(table: &[Vec<usize>]) -> Result<HopfAlgebra, HopfError> {
    let identity = validate_group(table)?;
    group_algebra_with_identity(table, identity)
}

/// As [`group_algebra`], with the identity index supplied by the caller.
pub fn group_algebra_with_identity(
    table: &[Vec<usize>],
    identity: usize,
) -> Result<HopfAlgebra, HopfError> {
    let checked_identity = validate_group(table)?;
    if identity != checked_identity {
        return Err(HopfError::NotAGroup(format!(
            "claimed identity {identity} but the table identity is {checked_identity}"
        )));
    }
    let n = table.len();
    let one = || CycNumber::from_integer(1);
    let mult: Vec<Vec<SparseVec>> = (0..n)
        .map(|i| (0..n).map(|j| vec![(table[i][j], one())]).collect())
        .collect();
    let mut unit = vec![CycNumber::from_integer(0); n];
    unit[identity] = one();
    let comult: Vec<Vec<(usize, usize, CycNumber)>> =
        (0..n).map(|i| vec![(i, i, one())]).collect();
    let counit = vec![one(); n];
    let mut antipode = Matrix::zero(n, n, 1);
    for i in 0..n {
        let inv = (0..n)
            .find(|&j| table[i][j] == identity && table[j][i] == identity)
            .expect("validated");
        antipode.set(inv, i, one());
    }
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut h = HopfAlgebra::from_parts(
        n,
        1,
        mult,
        unit,
        comult,
        counit,
        antipode.clone(),
        Some(antipode.clone()),
        Some(labels),
        format!("group({n})"),
    )?;
    // S(g) = g^{-1} is an involution on the basis, so S is its own inverse.
    debug_assert!(antipode.matmul(&antipode).is_identity());
    h.hint = Some(RecurrenceHint {
        exponent: group_exponent(table, identity),
        loewy: 1,
    });
    Ok(h)
}

fn group_exponent(table: &[Vec<usize>], identity: usize) -> u64 {
    let mut e = 1u64;
    for start in 0..table.len() {
        let mut ord = 1u64;
        let mut cur = start;
        while cur != identity {
            cur = table[cur][start];
            ord += 1;
        }
        e = lcm64(e, ord);
    }
    e
}

fn require_order(omega: &CycNumber, expected: u64) -> Result<(), HopfError> {
    let found = if omega.is_zero() {
        None
    } else {
        omega.multiplicative_order().unwrap()
    };
    if found == Some(expected) {
        Ok(())
    } else {
        Err(HopfError::WrongOrder { expected, found })
    }
}

/// The Taft algebra of dimension N^2: generated by a grouplike `g` and a
/// skew-primitive `x` with `x^N = 0`, `g^N = 1`, `g x = omega x g`,
/// `Delta(x) = x (x) 1 + g (x) x`, `S(x) = -g^{-1} x`, `S(g) = g^{-1}`.
/// Basis `x^r g^s` at index `r*N + s`.
pub fn taft(n: u64, omega: &CycNumber) -> Result<HopfAlgebra, HopfError> {
    if n <= 1 {
        return Err(HopfError::DegenerateN(n));
    }
    require_order(omega, n)?;
    let nn = n as usize;
    let dim = nn * nn;
    let conductor = omega.conductor();
    let idx = |r: usize, s: usize| r * nn + s;
    let zero = || CycNumber::zero(conductor);

    // (x^r g^s)(x^r' g^s') = omega^(s r') x^(r+r') g^(s+s'), zero past x^N.
    let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for r in 0..nn {
        for s in 0..nn {
            for rp in 0..nn {
                for sp in 0..nn {
                    if r + rp >= nn {
                        continue;
                    }
                    let coeff = omega.pow(((s * rp) as u64) % n);
                    mult[idx(r, s)][idx(rp, sp)] = vec![(idx(r + rp, (s + sp) % nn), coeff)];
                }
            }
        }
    }

    let mut unit = vec![zero(); dim];
    unit[idx(0, 0)] = CycNumber::one(conductor);

    // Delta(x^r g^s) = sum_a C(r, a)_omega x^a g^(r-a+s) (x) x^(r-a) g^s.
    let mut comult: Vec<Vec<(usize, usize, CycNumber)>> = vec![Vec::new(); dim];
    for r in 0..nn {
        for s in 0..nn {
            let mut terms = Vec::with_capacity(r + 1);
            for a in 0..=r {
                let c = gaussian_binomial(r as i64, a as i64).eval_cyc(omega);
                terms.push((idx(a, (r - a + s) % nn), idx(r - a, s), c));
            }
            comult[idx(r, s)] = terms;
        }
    }

    let mut counit = vec![zero(); dim];
    for s in 0..nn {
        counit[idx(0, s)] = CycNumber::one(conductor);
    }

    // S(x^r g^s) = g^{-s} (-g^{-1} x)^r, assembled through the product
    // tensor rather than a hand-derived exponent formula. In normal form
    // -g^{-1} x = -omega^{-1} x g^{N-1}.
    let minus_gx: SparseVec = vec![(idx(1, nn - 1), -&omega.powi(-1).unwrap())];
    let mut antipode = Matrix::zero(dim, dim, conductor);
    let mut h_mult_view = HopfAlgebra {
        dim,
        conductor,
        mult,
        unit: unit.clone(),
        comult: comult.clone(),
        counit: counit.clone(),
        antipode: Matrix::zero(dim, dim, conductor),
        antipode_inv: Matrix::zero(dim, dim, conductor),
        basis_labels: None,
        name: String::new(),
        hint: None,
    };
    for r in 0..nn {
        for s in 0..nn {
            let mut acc: SparseVec = vec![(idx(0, (nn - s) % nn), CycNumber::one(conductor))];
            for _ in 0..r {
                acc = h_mult_view.product(&acc, &minus_gx);
            }
            for (t, c) in acc {
                antipode.set(t, idx(r, s), c);
            }
        }
    }
    let antipode_inv = monomial_inverse(&antipode).ok_or_else(|| {
        HopfError::AntipodeConstruction("taft antipode is not invertible".into())
    })?;

    let labels: Vec<String> = (0..dim)
        .map(|i| format!("x^{} g^{}", i / nn, i % nn))
        .collect();
    h_mult_view.antipode = antipode;
    h_mult_view.antipode_inv = antipode_inv;
    h_mult_view.basis_labels = Some(labels);
    h_mult_view.name = format!("taft({n})");
    h_mult_view.hint = Some(RecurrenceHint {
        exponent: n,
        loewy: nn,
    });
    Ok(h_mult_view)
}

/// The associated graded small quantum group of sl2 at an odd order-N root
/// `q`: generators `g = K`, `x = E`, `y = FK` with `x^N = y^N = 0`,
/// `g^N = 1`, `g x = q^2 x g`, `g y = q^{-2} y g`, `y x = q^2 x y`, all
/// three generators sharing the Taft-style comultiplication. Basis
/// `x^r y^s g^l` at index `(r*N + s)*N + l`.
pub fn gr_uqsl2(n: u64, q: &CycNumber) -> Result<HopfAlgebra, HopfError> {
    if n.is_multiple_of(2) || n <= 1 {
        return Err(HopfError::EvenOrder(n));
    }
    require_order(q, n)?;
    let nn = n as usize;
    let dim = nn * nn * nn;
    let conductor = q.conductor();
    let idx = |r: usize, s: usize, l: usize| (r * nn + s) * nn + l;
    let zero = || CycNumber::zero(conductor);
    let qpow = |e: i64| q.powi(e.rem_euclid(n as i64)).unwrap();

    // x^r y^s g^l * x^r' y^s' g^l' =
    //   q^(2(l r' - l s' + s r')) x^(r+r') y^(s+s') g^(l+l').
    let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for r in 0..nn {
        for s in 0..nn {
            for l in 0..nn {
                let i = idx(r, s, l);
                for rp in 0..nn {
                    if r + rp >= nn {
                        continue;
                    }
                    for sp in 0..nn {
                        if s + sp >= nn {
                            continue;
                        }
                        for lp in 0..nn {
                            let e = 2 * (l as i64 * rp as i64 - l as i64 * sp as i64
                                + s as i64 * rp as i64);
                            mult[i][idx(rp, sp, lp)] =
                                vec![(idx(r + rp, s + sp, (l + lp) % nn), qpow(e))];
                        }
                    }
                }
            }
        }
    }

    let mut unit = vec![zero(); dim];
    unit[idx(0, 0, 0)] = CycNumber::one(conductor);

    // Delta(x^r y^s g^l) = sum_{a,b} C(r,a)_{q^2} C(s,b)_{q^{-2}}
    //   q^{-2(r-a)b} x^a y^b g^{r+s-a-b+l} (x) x^{r-a} y^{s-b} g^l.
    let q2 = q * q;
    let q2inv = q2.inv().expect("root of unity");
    let mut comult: Vec<Vec<(usize, usize, CycNumber)>> = vec![Vec::new(); dim];
    for r in 0..nn {
        for s in 0..nn {
            for l in 0..nn {
                let mut terms = Vec::with_capacity((r + 1) * (s + 1));
                for a in 0..=r {
                    let ca = gaussian_binomial(r as i64, a as i64).eval_cyc(&q2);
                    for b in 0..=s {
                        let cb = gaussian_binomial(s as i64, b as i64).eval_cyc(&q2inv);
                        let tw = qpow(-2 * ((r - a) as i64) * (b as i64));
                        let coeff = &(&ca * &cb) * &tw;
                        if coeff.is_zero() {
                            continue;
                        }
                        terms.push((
                            idx(a, b, (r + s - a - b + l) % nn),
                            idx(r - a, s - b, l),
                            coeff,
                        ));
                    }
                }
                comult[idx(r, s, l)] = terms;
            }
        }
    }

    let mut counit = vec![zero(); dim];
    for l in 0..nn {
        counit[idx(0, 0, l)] = CycNumber::one(conductor);
    }

    // S(x^r y^s g^l) = g^{-l} (-g^{-1} y)^s (-g^{-1} x)^r; in normal form
    // -g^{-1} x = -q^{-2} x g^{N-1} and -g^{-1} y = -q^2 y g^{N-1}.
    let mut view = HopfAlgebra {
        dim,
        conductor,
        mult,
        unit: unit.clone(),
        comult: comult.clone(),
        counit: counit.clone(),
        antipode: Matrix::zero(dim, dim, conductor),
        antipode_inv: Matrix::zero(dim, dim, conductor),
        basis_labels: None,
        name: String::new(),
        hint: None,
    };
    let minus_gx: SparseVec = vec![(idx(1, 0, nn - 1), -&qpow(-2))];
    let minus_gy: SparseVec = vec![(idx(0, 1, nn - 1), -&qpow(2))];
    let mut antipode = Matrix::zero(dim, dim, conductor);
    for r in 0..nn {
        for s in 0..nn {
            for l in 0..nn {
                let mut acc: SparseVec =
                    vec![(idx(0, 0, (nn - l) % nn), CycNumber::one(conductor))];
                for _ in 0..s {
                    acc = view.product(&acc, &minus_gy);
                }
                for _ in 0..r {
                    acc = view.product(&acc, &minus_gx);
                }
                for (t, c) in acc {
                    antipode.set(t, idx(r, s, l), c);
                }
            }
        }
    }
    let antipode_inv = monomial_inverse(&antipode).ok_or_else(|| {
        HopfError::AntipodeConstruction("gr_uqsl2 antipode is not invertible".into())
    })?;

    let labels: Vec<String> = (0..dim)
        .map(|i| {
            let l = i % nn;
            let s = (i / nn) % nn;
            let r = i / (nn * nn);
            format!("x^{r} y^{s} g^{l}")
        })
        .collect();
    view.antipode = antipode;
    view.antipode_inv = antipode_inv;
    view.basis_labels = Some(labels);
    view.name = format!("gr_uqsl2({n})");
    view.hint = Some(RecurrenceHint {
        exponent: n,
        loewy: 2 * nn - 1,
    });
    Ok(view)
}

/// Inverts a monomial matrix (exactly one nonzero per column) in O(d^2);
/// falls back to Gaussian elimination otherwise.
pub(crate) fn monomial_inverse(m: &Matrix) -> Option<Matrix> {
    let d = m.nrows();
    let mut inv = Matrix::zero(d, d, 1);
    for j in 0..d {
        let col = m.sparse_column(j);
        if col.len() != 1 {
            return m.inverse();
        }
        let (i, c) = &col[0];
        let one = Rational::from_integer(BigInt::one());
        inv.set(j, *i, c.inv().ok()?.scale(&one));
    }
    Some(inv)
}
