//! Products in QK(Gr(k,n)).
//!
//! The general path writes each O^λ as a classical Giambelli polynomial in the special classes
//! O^1, …, O^{n−k}, evaluates it through the quantum Pieri operators, and removes the q-adic
//! error term by term. All arithmetic is modulo q^{D+1}, where D is the context truncation.
//! For k = 3 a second path strips third rows with T and expands one factor through a two-term
//! Giambelli formula.

use std::io::Write;

use serde::Serialize;

use crate::element::{QPoly, QkElement};
use crate::error::{Error, Result};
use crate::partitions::{Basis, GrContext, Partition};
use crate::pieri::{classical_pieri, pieri_operators, PieriOperator};
use crate::seidel::{seidel_t_power_exact, StructureIndex};

/// Dense vector over Z[q]/(q^{D+1}) in the Schubert basis, stored degree-major.
#[derive(Clone, Debug, PartialEq, Eq)]
struct QVec {
    dim: usize,
    data: Vec<i64>,
}

impl QVec {
    fn zeros(dim: usize, trunc: usize) -> Self {
        QVec { dim, data: vec![0; dim * (trunc + 1)] }
    }

    fn unit(dim: usize, trunc: usize, idx: usize) -> Self {
        let mut v = Self::zeros(dim, trunc);
        v.data[idx] = 1;
        v
    }

    fn degree_slice(&self, d: usize) -> &[i64] {
        &self.data[d * self.dim..(d + 1) * self.dim]
    }

    fn degrees(&self) -> usize {
        self.data.len() / self.dim
    }
}

fn axpy(acc: &mut [i64], factor: i64, x: &[i64]) -> Result<()> {
    for (a, &b) in acc.iter_mut().zip(x) {
        if b != 0 {
            let t = factor.checked_mul(b).ok_or(Error::ArithmeticOverflow("lift"))?;
            *a = a.checked_add(t).ok_or(Error::ArithmeticOverflow("lift"))?;
        }
    }
    Ok(())
}

fn apply_pieri(op: &PieriOperator, v: &QVec) -> Result<QVec> {
    let trunc = v.degrees() - 1;
    let mut out = QVec::zeros(v.dim, trunc);
    for d in 0..=trunc {
        for (j, &c) in v.degree_slice(d).iter().enumerate() {
            if c == 0 {
                continue;
            }
            for e in op.column(j) {
                let deg = d + e.degree;
                if deg > trunc {
                    continue;
                }
                let t = c.checked_mul(e.coeff).ok_or(Error::ArithmeticOverflow("Pieri step"))?;
                let slot = &mut out.data[deg * v.dim + e.row];
                *slot = slot.checked_add(t).ok_or(Error::ArithmeticOverflow("Pieri step"))?;
            }
        }
    }
    Ok(out)
}

/// O^λ = O^{λ_1}·O^{λ'} − Σ c_ν O^ν classically, with λ' = (λ_2, …, λ_k, 0).
#[derive(Clone, Debug)]
struct GiambelliStep {
    lead: usize,
    tail: usize,
    corrections: Vec<(usize, i64)>,
}

/// Shared data for computing products in one Grassmannian.
#[derive(Debug)]
pub struct QkEngine {
    ctx: GrContext,
    basis: Basis,
    pieri: Vec<PieriOperator>,
    steps: Vec<Option<GiambelliStep>>,
    order: Vec<usize>,
    residues: Vec<Vec<(usize, usize, i64)>>,
}

impl QkEngine {
    pub fn new(ctx: GrContext) -> Result<Self> {
        let basis = Basis::new(ctx);
        let pieri = pieri_operators(&basis)?;
        let mut steps = vec![None; basis.len()];
        for (idx, lam) in basis.elems().iter().enumerate() {
            if lam.is_empty() {
                continue;
            }
            let mut tail_parts = lam.parts()[1..].to_vec();
            tail_parts.push(0);
            let tail = Partition::from_parts(tail_parts);
            let expansion = classical_pieri(&ctx, &tail, lam.part(1))?;
            if expansion.coeff(lam, 0) != 1 {
                return Err(Error::Internal(format!("Pieri leading coefficient of {lam} is not 1")));
            }
            let corrections = expansion
                .iter()
                .filter(|(_, nu, _)| *nu != lam)
                .map(|(_, nu, c)| Ok((basis.index_of(nu)?, c)))
                .collect::<Result<Vec<_>>>()?;
            steps[idx] = Some(GiambelliStep { lead: lam.part(1), tail: basis.index_of(&tail)?, corrections });
        }
        // Each step needs its tail (fewer rows) and corrections (no more rows, strictly later in
        // the basis order), so sort by row count and then backwards through the basis.
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&i| (basis.get(i).length(), std::cmp::Reverse(i)));
        let mut engine = QkEngine { ctx, basis, pieri, steps, order, residues: Vec::new() };
        let unit = engine.basis.index_of(&ctx.empty())?;
        let raw = engine.giambelli_images(unit)?;
        let mut residues = Vec::with_capacity(raw.len());
        for (idx, v) in raw.iter().enumerate() {
            let mut list = Vec::new();
            for d in 0..v.degrees() {
                for (j, &c) in v.degree_slice(d).iter().enumerate() {
                    let expected = i64::from(d == 0 && j == idx);
                    if c == expected {
                        continue;
                    }
                    if d == 0 {
                        return Err(Error::Internal(format!(
                            "classical Giambelli expansion of {} fails at {}",
                            engine.basis.get(idx),
                            engine.basis.get(j)
                        )));
                    }
                    list.push((j, d, c));
                }
            }
            residues.push(list);
        }
        engine.residues = residues;
        Ok(engine)
    }

    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn pieri(&self, i: usize) -> &PieriOperator {
        &self.pieri[i - 1]
    }

    /// G_λ(P_1, …, P_{n−k})·O^μ for every λ.
    fn giambelli_images(&self, mu: usize) -> Result<Vec<QVec>> {
        let dim = self.basis.len();
        let trunc = self.ctx.trunc();
        let mut images: Vec<Option<QVec>> = vec![None; dim];
        for &idx in &self.order {
            let v = match &self.steps[idx] {
                None => QVec::unit(dim, trunc, mu),
                Some(step) => {
                    let tail = images[step.tail].as_ref().ok_or_else(|| order_error(idx))?;
                    let mut v = apply_pieri(&self.pieri[step.lead - 1], tail)?;
                    for &(nu, c) in &step.corrections {
                        let other = images[nu].as_ref().ok_or_else(|| order_error(idx))?;
                        axpy(&mut v.data, -c, &other.data)?;
                    }
                    v
                }
            };
            images[idx] = Some(v);
        }
        Ok(images.into_iter().map(|v| v.expect("all images computed")).collect())
    }

    /// O^λ * O^μ for every λ, as dense vectors modulo q^{D+1}.
    fn column(&self, mu: usize) -> Result<Vec<QVec>> {
        let images = self.giambelli_images(mu)?;
        let dim = self.basis.len();
        let trunc = self.ctx.trunc();
        let mut out: Vec<QVec> = (0..dim).map(|_| QVec::zeros(dim, trunc)).collect();
        for d in 0..=trunc {
            for lam in 0..dim {
                let mut acc = images[lam].degree_slice(d).to_vec();
                for &(nu, e, c) in &self.residues[lam] {
                    if e <= d {
                        axpy(&mut acc, -c, out[nu].degree_slice(d - e))?;
                    }
                }
                out[lam].data[d * dim..(d + 1) * dim].copy_from_slice(&acc);
            }
        }
        if out.iter().any(|v| v.degree_slice(trunc).iter().any(|&c| c != 0)) {
            return Err(Error::NotStabilized { trunc });
        }
        Ok(out)
    }

    /// O^λ * O^μ for every λ in basis order.
    pub fn products_with(&self, mu: &Partition) -> Result<Vec<QkElement>> {
        let col = self.column(self.basis.index_of(mu)?)?;
        Ok(col.iter().map(|v| self.to_element(v)).collect())
    }

    fn to_element(&self, v: &QVec) -> QkElement {
        let mut e = QkElement::zero();
        for d in 0..v.degrees() {
            for (j, &c) in v.degree_slice(d).iter().enumerate() {
                if c != 0 {
                    e.add_term(self.basis.get(j).clone(), d, c).expect("distinct terms");
                }
            }
        }
        e
    }

    /// O^λ * O^μ through the Giambelli lift.
    pub fn product_basis(&self, lambda: &Partition, mu: &Partition) -> Result<QkElement> {
        let lam = self.basis.index_of(lambda)?;
        let col = self.column(self.basis.index_of(mu)?)?;
        Ok(self.to_element(&col[lam]))
    }

    /// O^λ * O^μ through third-row stripping and the two-term Giambelli formula (k = 3 only).
    pub fn product_basis_gr3(&self, lambda: &Partition, mu: &Partition) -> Result<QkElement> {
        if self.ctx.k() != 3 {
            return Err(Error::Precondition("the Gr(3,n) path needs k = 3".into()));
        }
        let shift = lambda.part(3) + mu.part(3);
        let lam_hat = strip_third_row(lambda);
        let mu_hat = strip_third_row(mu);
        let mut reduced = QkElement::zero();
        for (sign, word) in giambelli_gr3(&self.ctx, &mu_hat)? {
            let mut term = QkElement::basis(lam_hat.clone());
            for &a in word.iter().filter(|&&a| a > 0) {
                term = self.pieri(a).apply(&self.basis, &term)?;
            }
            reduced.add_scaled(&term, sign)?;
        }
        let out = seidel_t_power_exact(&self.ctx, &reduced, shift)?;
        out.check(&self.ctx)?;
        Ok(out)
    }

    /// Bilinear product of two elements; errors if a term passes the truncation.
    pub fn product(&self, a: &QkElement, b: &QkElement) -> Result<QkElement> {
        a.check(&self.ctx)?;
        b.check(&self.ctx)?;
        let mut out = QkElement::zero();
        let mut columns: std::collections::HashMap<usize, Vec<QVec>> = std::collections::HashMap::new();
        for (e, mu, cb) in b.iter() {
            let mu_idx = self.basis.index_of(mu)?;
            if !columns.contains_key(&mu_idx) {
                columns.insert(mu_idx, self.column(mu_idx)?);
            }
            let col = &columns[&mu_idx];
            for (d, lam, ca) in a.iter() {
                let prod = self.to_element(&col[self.basis.index_of(lam)?]);
                let c = ca.checked_mul(cb).ok_or(Error::ArithmeticOverflow("product"))?;
                out.add_scaled(&prod.q_shift(d + e), c)?;
            }
        }
        if let Some(deg) = out.max_degree().filter(|&deg| deg > self.ctx.trunc()) {
            return Err(Error::DegreeOverflow { degree: deg, trunc: self.ctx.trunc() });
        }
        Ok(out)
    }

    /// N_{λ,μ}^{ν,d}. Degrees above D give 0, since every basis product vanishes at degree D.
    pub fn structure_constant(&self, t: &StructureIndex) -> Result<i64> {
        let prod = self.product_basis(&t.lambda, &t.mu)?;
        self.ctx.check(&t.nu)?;
        if t.d > self.ctx.trunc() {
            return Ok(0);
        }
        Ok(prod.coeff(&t.nu, t.d))
    }
}

fn order_error(idx: usize) -> Error {
    Error::Internal(format!("Giambelli recursion order broken at basis index {idx}"))
}

fn strip_third_row(lambda: &Partition) -> Partition {
    let l3 = lambda.part(3);
    Partition::from_parts(vec![lambda.part(1) - l3, lambda.part(2) - l3, 0])
}

/// (λ̂, μ̂, ν↓(λ_3+μ_3), d̂) with third rows removed; `None` when d̂ < 0, meaning N = 0.
pub fn reduce_third_row(ctx: &GrContext, t: &StructureIndex) -> Option<StructureIndex> {
    assert_eq!(ctx.k(), 3, "third-row reduction needs k = 3");
    let s = t.lambda.part(3) + t.mu.part(3);
    let nu_hat = ctx.seidel_down(&t.nu, s as i64);
    let num = t.nu.size() as i64 - nu_hat.size() as i64 - 3 * s as i64;
    let n = ctx.n() as i64;
    debug_assert_eq!(num.rem_euclid(n), 0);
    let d_hat = t.d as i64 + num / n;
    (d_hat >= 0).then(|| {
        StructureIndex::new(strip_third_row(&t.lambda), strip_third_row(&t.mu), nu_hat, d_hat as usize)
    })
}

/// Signed words [a, b] with O^μ = Σ ± O^a*O^b, where O^0 is the unit (k = 3, μ_3 = 0).
pub fn giambelli_gr3(ctx: &GrContext, mu: &Partition) -> Result<Vec<(i64, Vec<usize>)>> {
    if ctx.k() != 3 || mu.part(3) != 0 {
        return Err(Error::Precondition(format!("{mu} is not a two-row partition of Gr(3,n)")));
    }
    ctx.check(mu)?;
    let (m1, m2) = (mu.part(1), mu.part(2));
    if m2 == 0 {
        return Ok(vec![(1, vec![m1])]);
    }
    let mut recipe = vec![(1, vec![m1, m2 - 1])];
    for j in m1..=ctx.cols() {
        recipe.push((1, vec![j, m2]));
        recipe.push((-1, vec![j, m2 - 1]));
    }
    Ok(recipe)
}

/// ξ_μ, the signed sum over rook strips above μ∨.
pub fn ideal_sheaf(ctx: &GrContext, mu: &Partition) -> Result<QkElement> {
    ctx.check(mu)?;
    let mut out = QkElement::zero();
    for (eta, sign) in ctx.rook_strips_over(mu) {
        out.add_term(eta, 0, sign)?;
    }
    Ok(out)
}

/// All products O^λ * O^μ of one Grassmannian, stored sparsely.
#[derive(Clone, Debug)]
pub struct MultiplicationTable {
    ctx: GrContext,
    basis: Basis,
    /// Entry (λ, μ) at λ·dim + μ: (ν index, q-degree, coefficient) sorted by (degree, ν).
    entries: Vec<Vec<(u32, u8, i64)>>,
}

#[derive(Serialize)]
struct TableRecord<'a> {
    lambda: &'a [usize],
    mu: &'a [usize],
    product: serde_json::Value,
}

impl MultiplicationTable {
    pub fn build(engine: &QkEngine) -> Result<Self> {
        let dim = engine.basis.len();
        let mut entries = vec![Vec::new(); dim * dim];
        for mu in 0..dim {
            let col = engine.column(mu)?;
            for (lam, v) in col.iter().enumerate() {
                let mut list = Vec::new();
                for d in 0..v.degrees() {
                    for (j, &c) in v.degree_slice(d).iter().enumerate() {
                        if c != 0 {
                            list.push((j as u32, d as u8, c));
                        }
                    }
                }
                entries[lam * dim + mu] = list;
            }
        }
        Ok(MultiplicationTable { ctx: engine.ctx, basis: engine.basis.clone(), entries })
    }

    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Sparse product of basis elements by index.
    pub fn entry(&self, lam: usize, mu: usize) -> &[(u32, u8, i64)] {
        &self.entries[lam * self.dim() + mu]
    }

    pub fn coeff(&self, lam: usize, mu: usize, nu: usize, d: usize) -> i64 {
        let list = self.entry(lam, mu);
        list.binary_search_by(|&(j, e, _)| (e as usize, j as usize).cmp(&(d, nu)))
            .map_or(0, |pos| list[pos].2)
    }

    pub fn structure_constant(&self, t: &StructureIndex) -> Result<i64> {
        Ok(self.coeff(
            self.basis.index_of(&t.lambda)?,
            self.basis.index_of(&t.mu)?,
            self.basis.index_of(&t.nu)?,
            t.d,
        ))
    }

    /// Writes the product into `out`, laid out as degree·dim + ν.
    pub fn dense_into(&self, lam: usize, mu: usize, out: &mut [i64]) {
        out.iter_mut().for_each(|x| *x = 0);
        for &(j, d, c) in self.entry(lam, mu) {
            out[d as usize * self.dim() + j as usize] = c;
        }
    }

    pub fn product_basis(&self, lam: usize, mu: usize) -> QkElement {
        let mut e = QkElement::zero();
        for &(j, d, c) in self.entry(lam, mu) {
            e.add_term(self.basis.get(j as usize).clone(), d as usize, c).expect("distinct terms");
        }
        e
    }

    /// Bilinear product; terms above `trunc` are dropped, so results are exact modulo q^{trunc+1}.
    pub fn multiply_truncated(&self, a: &QkElement, b: &QkElement, trunc: usize) -> Result<QkElement> {
        let mut out = QkElement::zero();
        for (da, pa, ca) in a.iter() {
            let ia = self.basis.index_of(pa)?;
            for (db, pb, cb) in b.iter() {
                if da + db > trunc {
                    continue;
                }
                let ib = self.basis.index_of(pb)?;
                let c = ca.checked_mul(cb).ok_or(Error::ArithmeticOverflow("table product"))?;
                for &(j, d, x) in self.entry(ia, ib) {
                    let deg = da + db + d as usize;
                    if deg <= trunc {
                        let t = c.checked_mul(x).ok_or(Error::ArithmeticOverflow("table product"))?;
                        out.add_term(self.basis.get(j as usize).clone(), deg, t)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Largest q-degree occurring in any product.
    pub fn max_degree(&self) -> usize {
        self.entries.iter().flat_map(|l| l.iter().map(|&(_, d, _)| d as usize)).max().unwrap_or(0)
    }

    /// Whether both tables hold the same products.
    pub fn same_products(&self, other: &MultiplicationTable) -> bool {
        self.basis.elems() == other.basis.elems() && self.entries == other.entries
    }

    /// One JSON object per (λ, μ) in basis order.
    pub fn write_json_lines(&self, mut w: impl Write) -> std::io::Result<()> {
        let dim = self.dim();
        for lam in 0..dim {
            for mu in 0..dim {
                let rec = TableRecord {
                    lambda: self.basis.get(lam).parts(),
                    mu: self.basis.get(mu).parts(),
                    product: self.product_basis(lam, mu).to_json_value(),
                };
                serde_json::to_writer(&mut w, &rec)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }

    /// CSV rows `lambda,mu,q,nu,coeff` with partitions written as `a b c`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        let fmt = |p: &Partition| p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(w, "lambda,mu,q,nu,coeff")?;
        let dim = self.dim();
        for lam in 0..dim {
            for mu in 0..dim {
                for &(j, d, c) in self.entry(lam, mu) {
                    writeln!(
                        w,
                        "{},{},{},{},{}",
                        fmt(self.basis.get(lam)),
                        fmt(self.basis.get(mu)),
                        d,
                        fmt(self.basis.get(j as usize)),
                        c
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Builds the full table through the Giambelli lift, raising the truncation until no product
/// reaches the top degree.
pub fn giambelli_lift_general(ctx: GrContext) -> Result<MultiplicationTable> {
    let mut ctx = ctx;
    loop {
        let attempt = QkEngine::new(ctx).and_then(|engine| MultiplicationTable::build(&engine));
        match attempt {
            Err(Error::NotStabilized { trunc }) if trunc < 4 * ctx.n() => {
                ctx = GrContext::with_trunc(ctx.k(), ctx.n(), trunc + 1)?;
            }
            other => return other,
        }
    }
}

/// χ(O^λ·ξ_μ) over the classical part of the table.
pub fn pairing(table: &MultiplicationTable, lambda: &Partition, mu: &Partition) -> Result<QPoly> {
    let xi = ideal_sheaf(table.ctx(), mu)?;
    let prod = table.multiply_truncated(&QkElement::basis(lambda.clone()), &xi, 0)?;
    crate::element::euler_char(&prod)
}

/// Associativity of (O^λ*O^μ)*O^κ against O^λ*(O^μ*O^κ) through degree `d`.
pub fn verify_recursion(table: &MultiplicationTable, lambda: &Partition, mu: &Partition, kappa: &Partition, d: usize) -> Result<bool> {
    let b = table.basis();
    let (l, m, k) = (b.index_of(lambda)?, b.index_of(mu)?, b.index_of(kappa)?);
    let left = table.multiply_truncated(&table.product_basis(l, m), &QkElement::basis(kappa.clone()), d)?;
    let right = table.multiply_truncated(&QkElement::basis(lambda.clone()), &table.product_basis(m, k), d)?;
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: usize, n: usize) -> GrContext {
        GrContext::new(k, n).unwrap()
    }

    #[test]
    fn unit_and_point_square() {
        let c = ctx(2, 4);
        let engine = QkEngine::new(c).unwrap();
        for lam in c.partitions() {
            assert_eq!(engine.product_basis(&c.empty(), &lam).unwrap(), QkElement::basis(lam.clone()));
        }
        let full = c.full();
        assert_eq!(engine.product_basis(&full, &full).unwrap(), QkElement::term(c.empty(), 2, 1));
    }

    #[test]
    fn special_classes_act_by_pieri() {
        let c = ctx(3, 7);
        let engine = QkEngine::new(c).unwrap();
        for i in 1..=c.cols() {
            for (lam, prod) in c.partitions().iter().zip(engine.products_with(&c.special(i)).unwrap()) {
                assert_eq!(prod, crate::pieri::quantum_pieri(&c, lam, i).unwrap());
            }
        }
    }

    #[test]
    fn gr3_recipe_reproduces_class() {
        for n in [6, 7] {
            let c = ctx(3, n);
            let engine = QkEngine::new(c).unwrap();
            for mu in c.partitions().into_iter().filter(|m| m.part(3) == 0) {
                let got = engine.product_basis_gr3(&c.empty(), &mu).unwrap();
                assert_eq!(got, QkElement::basis(mu.clone()), "n={n} mu={mu}");
            }
        }
    }

    #[test]
    fn gr3_path_matches_lift_path() {
        let c = ctx(3, 6);
        let engine = QkEngine::new(c).unwrap();
        let table = MultiplicationTable::build(&engine).unwrap();
        for (i, lam) in c.partitions().iter().enumerate() {
            for (j, mu) in c.partitions().iter().enumerate() {
                assert_eq!(engine.product_basis_gr3(lam, mu).unwrap(), table.product_basis(i, j));
            }
        }
    }

    #[test]
    fn third_row_reduction_example() {
        let c = ctx(3, 6);
        let p = |v: &[usize]| c.partition(v).unwrap();
        let t = StructureIndex::new(p(&[2, 2, 1]), p(&[1, 1, 1]), p(&[1, 1, 0]), 1);
        let table = giambelli_lift_general(c).unwrap();
        let expect = table.structure_constant(&t).unwrap();
        let got = reduce_third_row(&c, &t).map_or(0, |r| table.structure_constant(&r).unwrap());
        assert_eq!(got, expect);
        let same = StructureIndex::new(p(&[2, 1]), p(&[1]), p(&[2, 2]), 0);
        assert_eq!(reduce_third_row(&c, &same), Some(same.clone()));
    }

    #[test]
    fn ideal_sheaf_examples() {
        let c = ctx(2, 4);
        let p = |v: &[usize]| c.partition(v).unwrap();
        let xi = ideal_sheaf(&c, &p(&[2, 2])).unwrap();
        let mut expect = QkElement::basis(p(&[0, 0]));
        expect.add_term(p(&[1, 0]), 0, -1).unwrap();
        assert_eq!(xi, expect);
        assert_eq!(ideal_sheaf(&c, &p(&[0, 0])).unwrap(), QkElement::basis(c.full()));
    }

    #[test]
    fn pairing_is_identity_gr24() {
        let c = ctx(2, 4);
        let table = giambelli_lift_general(c).unwrap();
        for lam in c.partitions() {
            for mu in c.partitions() {
                let chi = pairing(&table, &lam, &mu).unwrap();
                assert_eq!(chi, QPoly::constant(i64::from(lam == mu)));
            }
        }
    }

    #[test]
    fn element_product_checks_truncation() {
        let c = ctx(2, 4);
        let engine = QkEngine::new(c).unwrap();
        let a = QkElement::term(c.full(), c.trunc(), 1);
        assert!(engine.product(&a, &QkElement::basis(c.full())).is_err());
        let unit = QkElement::basis(c.empty());
        assert_eq!(engine.product(&unit, &a).unwrap(), a);
    }

    #[test]
    fn recursion_holds_gr25() {
        let c = ctx(2, 5);
        let table = giambelli_lift_general(c).unwrap();
        let ps = c.partitions();
        for l in &ps {
            for m in &ps {
                assert!(verify_recursion(&table, l, m, &c.column(), c.trunc()).unwrap());
            }
        }
    }

    #[test]
    fn json_lines_are_deterministic() {
        let table = giambelli_lift_general(ctx(1, 3)).unwrap();
        let mut buf = Vec::new();
        table.write_json_lines(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 9);
        assert_eq!(
            text.lines().last().unwrap(),
            r#"{"lambda":[2],"mu":[2],"product":{"terms":[{"coeff":1,"partition":[1],"q":1}]}}"#
        );
    }
}
