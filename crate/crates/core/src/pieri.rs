//! Classical and quantum K-theoretic Pieri rules, and the Pieri operators built from them.

use std::collections::BTreeMap;

use crate::element::{QPoly, QkElement};
use crate::error::{Error, Result};
use crate::partitions::{Basis, GrContext, Partition};

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_index(ctx: &GrContext, i: usize) -> Result<()> {
    if i == 0 || i > ctx.cols() {
        return Err(Error::PieriIndex { i, max: ctx.cols() });
    }
    Ok(())
}

/// O^λ · O^i in K(Gr(k,n)).
pub fn classical_pieri(ctx: &GrContext, lambda: &Partition, i: usize) -> Result<QkElement> {
    ctx.check(lambda)?;
    check_index(ctx, i)?;
    let mut out = QkElement::zero();
    for nu in ctx.horizontal_strips_over(lambda) {
        let shape = ctx.horizontal_strip(lambda, &nu);
        let size = shape.size as usize;
        if size < i || shape.rows == 0 || size > i + shape.rows - 1 {
            continue;
        }
        let e = size - i;
        out.add_term(nu, 0, sign(e) * binomial(shape.rows - 1, e))?;
    }
    Ok(out)
}

/// O^λ * O^i in QK(Gr(k,n)), via outer-rim removals for the q-part.
pub fn quantum_pieri(ctx: &GrContext, lambda: &Partition, i: usize) -> Result<QkElement> {
    let mut out = classical_pieri(ctx, lambda, i)?;
    let n = ctx.n() as i64;
    for (nu, rho) in ctx.outer_rim_removals(lambda) {
        let e = nu.size() as i64 + n - lambda.size() as i64 - i as i64;
        if e < 0 || e as usize > rho {
            continue;
        }
        let e = e as usize;
        out.add_term(nu, 1, sign(e) * binomial(rho, e))?;
    }
    Ok(out)
}

/// The same product computed through strips over λ↓λ_k.
pub fn quantum_pieri_restated(ctx: &GrContext, lambda: &Partition, i: usize) -> Result<QkElement> {
    let mut out = classical_pieri(ctx, lambda, i)?;
    let k = ctx.k();
    let lk = lambda.part(k);
    if lk == 0 {
        return Ok(out);
    }
    let cols = ctx.cols();
    let tilde = ctx.seidel_down(lambda, lk as i64);
    for nu_t in ctx.horizontal_strips_over(&tilde) {
        let shape = ctx.horizontal_strip(&tilde, &nu_t);
        let size = shape.size as usize;
        if size < i || shape.rows == 0 || size > i + shape.rows - 1 || nu_t.part(1) <= cols - lk {
            continue;
        }
        let mut parts: Vec<usize> = (2..=k).map(|j| nu_t.part(j) + lk - 1).collect();
        parts.push(lk + nu_t.part(1) - cols - 1);
        let nu = ctx.partition(&parts)?;
        let exponent = (nu.size() + ctx.n()) as i64 - (i + lambda.size()) as i64;
        out.add_term(nu, 1, sign(exponent.unsigned_abs() as usize) * binomial(shape.rows - 1, size - i))?;
    }
    Ok(out)
}

/// One nonzero entry of a Pieri operator column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieriEntry {
    pub row: usize,
    pub degree: usize,
    pub coeff: i64,
}

/// Multiplication by O^i on the Schubert basis, stored column by column.
#[derive(Clone, Debug)]
pub struct PieriOperator {
    index: usize,
    columns: Vec<Vec<PieriEntry>>,
}

impl PieriOperator {
    pub fn new(basis: &Basis, i: usize) -> Result<Self> {
        let ctx = basis.ctx();
        check_index(ctx, i)?;
        let columns = basis
            .elems()
            .iter()
            .map(|lam| {
                let prod = quantum_pieri(ctx, lam, i)?;
                prod.iter()
                    .map(|(degree, nu, coeff)| Ok(PieriEntry { row: basis.index_of(nu)?, degree, coeff }))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PieriOperator { index: i, columns })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[PieriEntry] {
        &self.columns[j]
    }

    /// Entries as a map (row, col) → polynomial in q.
    pub fn to_matrix(&self) -> BTreeMap<(usize, usize), QPoly> {
        let mut m = BTreeMap::new();
        for (col, entries) in self.columns.iter().enumerate() {
            for e in entries {
                m.insert((e.row, col), QPoly::monomial(e.degree, e.coeff));
            }
        }
        m
    }

    /// Applies the operator to a basis-indexed element.
    pub fn apply(&self, basis: &Basis, a: &QkElement) -> Result<QkElement> {
        let mut out = QkElement::zero();
        for (d, lam, c) in a.iter() {
            for e in &self.columns[basis.index_of(lam)?] {
                let coeff = c.checked_mul(e.coeff).ok_or(Error::ArithmeticOverflow("Pieri application"))?;
                out.add_term(basis.get(e.row).clone(), d + e.degree, coeff)?;
            }
        }
        Ok(out)
    }
}

/// P_1, …, P_{n−k} for the given basis.
pub fn pieri_operators(basis: &Basis) -> Result<Vec<PieriOperator>> {
    (1..=basis.ctx().cols()).map(|i| PieriOperator::new(basis, i)).collect()
}

/// Product of two sparse q-matrices.
pub fn matrix_product(
    a: &BTreeMap<(usize, usize), QPoly>,
    b: &BTreeMap<(usize, usize), QPoly>,
) -> Result<BTreeMap<(usize, usize), QPoly>> {
    let mut rows_of_b: BTreeMap<usize, Vec<(usize, &QPoly)>> = BTreeMap::new();
    for ((r, c), v) in b {
        rows_of_b.entry(*r).or_default().push((*c, v));
    }
    let mut out: BTreeMap<(usize, usize), QPoly> = BTreeMap::new();
    for ((r, mid), va) in a {
        if let Some(row) = rows_of_b.get(mid) {
            for (c, vb) in row {
                let t = va.mul(vb)?;
                let slot = out.entry((*r, *c)).or_default();
                *slot = slot.add(&t)?;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(ctx: &GrContext, terms: &[(&[usize], usize, i64)]) -> QkElement {
        let mut e = QkElement::zero();
        for (p, d, c) in terms {
            e.add_term(ctx.partition(p).unwrap(), *d, *c).unwrap();
        }
        e
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 1), 3);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn classical_example() {
        let ctx = GrContext::new(2, 4).unwrap();
        let got = classical_pieri(&ctx, &ctx.partition(&[1, 0]).unwrap(), 1).unwrap();
        assert_eq!(got, elem(&ctx, &[(&[2, 0], 0, 1), (&[1, 1], 0, 1), (&[2, 1], 0, -1)]));
        let got = classical_pieri(&ctx, &ctx.empty(), 2).unwrap();
        assert_eq!(got, QkElement::basis(ctx.special(2)));
    }

    #[test]
    fn quantum_example_gr49() {
        let ctx = GrContext::new(4, 9).unwrap();
        let lam = ctx.partition(&[4, 3, 2, 1]).unwrap();
        let expect = elem(
            &ctx,
            &[
                (&[5, 4, 3, 2], 0, 1),
                (&[2, 2, 1, 0], 1, 1),
                (&[3, 1, 1, 0], 1, 1),
                (&[3, 2, 0, 0], 1, 1),
                (&[3, 2, 1, 0], 1, -3),
            ],
        );
        assert_eq!(quantum_pieri(&ctx, &lam, 4).unwrap(), expect);
        assert_eq!(quantum_pieri_restated(&ctx, &lam, 4).unwrap(), expect);
    }

    #[test]
    fn projective_space_is_cyclic() {
        // QK(P^{n-1}): O^a * O^b = O^{a+b} below n, else q·O^{a+b-n}.
        for n in 2..=7 {
            let ctx = GrContext::new(1, n).unwrap();
            for a in 0..n {
                for b in 1..n {
                    let got = quantum_pieri(&ctx, &ctx.special(a), b).unwrap();
                    let expect = if a + b < n {
                        QkElement::basis(ctx.special(a + b))
                    } else {
                        QkElement::term(ctx.special(a + b - n), 1, 1)
                    };
                    assert_eq!(got, expect, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_index() {
        let ctx = GrContext::new(2, 4).unwrap();
        assert!(classical_pieri(&ctx, &ctx.empty(), 0).is_err());
        assert!(quantum_pieri(&ctx, &ctx.empty(), 3).is_err());
    }

    #[test]
    fn operators_commute() {
        for (k, n) in [(2, 5), (3, 6)] {
            let basis = Basis::new(GrContext::new(k, n).unwrap());
            let ops = pieri_operators(&basis).unwrap();
            let mats: Vec<_> = ops.iter().map(|p| p.to_matrix()).collect();
            for a in &mats {
                for b in &mats {
                    assert_eq!(matrix_product(a, b).unwrap(), matrix_product(b, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn operator_on_unit_is_special_class() {
        let ctx = GrContext::new(3, 7).unwrap();
        let basis = Basis::new(ctx);
        for op in pieri_operators(&basis).unwrap() {
            let got = op.apply(&basis, &QkElement::basis(ctx.empty())).unwrap();
            assert_eq!(got, QkElement::basis(ctx.special(op.index())));
        }
    }
}
