//! Closed formula for structure constants of QK(Gr(3,n)).

use crate::engine::{reduce_third_row, MultiplicationTable};
use crate::error::{Error, Result};
use crate::partitions::{GrContext, Partition};
use crate::seidel::{duality, reduce_deg_one, reduce_lemred, LemredVariant, StructureIndex};

/// Source of classical (d = 0) coefficients N_{λ,μ}^{ν}.
pub trait ClassicalCoefficients {
    fn classical(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> i64;
}

impl ClassicalCoefficients for MultiplicationTable {
    fn classical(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> i64 {
        let t = StructureIndex::new(lambda.clone(), mu.clone(), nu.clone(), 0);
        self.structure_constant(&t).expect("partitions of the table's Grassmannian")
    }
}

fn p3(a: usize, b: usize, c: usize) -> Partition {
    Partition::from_parts(vec![a, b, c])
}

fn check_two_row(ctx: &GrContext, t: &StructureIndex) -> Result<()> {
    if ctx.k() != 3 {
        return Err(Error::Precondition("the Gr(3,n) rule needs k = 3".into()));
    }
    for p in [&t.lambda, &t.mu, &t.nu] {
        ctx.check(p)?;
    }
    if t.lambda.part(3) != 0 || t.mu.part(3) != 0 {
        return Err(Error::Precondition(format!("{t}: factors must have λ_3 = μ_3 = 0")));
    }
    Ok(())
}

/// N_{λ,μ}^{ν,d} for λ_3 = μ_3 = 0; degree-one constants reduce to classical ones or to the
/// explicit value in terms of A = λ_1+μ_1−ν_1−ν_2 and m = |ν|+n−|λ|−|μ|.
pub fn qlr_gr3(ctx: &GrContext, t: &StructureIndex, lr: &impl ClassicalCoefficients) -> Result<i64> {
    check_two_row(ctx, t)?;
    let n = ctx.n();
    let (l, m, v) = (&t.lambda, &t.mu, &t.nu);
    match t.d {
        0 => return Ok(lr.classical(l, m, v)),
        1 => {}
        _ => return Ok(0),
    }
    if v.part(1) < l.part(1).max(m.part(1)) {
        let (a, b) = if v.part(1) < l.part(1) { (l, m) } else { (m, l) };
        let lam = p3(a.part(2) + n - 3 - a.part(1), n - 3 - a.part(1), 0);
        let shift = n - 2 - a.part(1);
        let nu = p3(v.part(1) + shift, v.part(2) + shift, v.part(3) + shift);
        return Ok(lr.classical(&lam, b, &nu));
    }
    if v.part(2) < l.part(2).max(m.part(2)) {
        let (a, b) = if v.part(2) < l.part(2) { (l, m) } else { (m, l) };
        let lam = p3(n - 3 - a.part(2), a.part(1) - a.part(2), 0);
        let shift = n - 2 - a.part(2);
        let nu = p3(v.part(2) + shift, v.part(3) + shift, v.part(1) + 1 - a.part(2));
        return Ok(lr.classical(&lam, b, &nu));
    }
    let big_a = l.part(1) as i64 + m.part(1) as i64 - v.part(1) as i64 - v.part(2) as i64;
    let mm = v.size() as i64 + n as i64 - l.size() as i64 - m.size() as i64;
    let holds = big_a > 0
        && (0..=3).contains(&mm)
        && (l.part(1) + l.part(2)).min(m.part(1) + m.part(2)) >= n - 3 + v.part(3)
        && l.part(1).min(m.part(1)) > v.part(2)
        && l.part(2).min(m.part(2)) > v.part(3);
    if !holds {
        return Ok(0);
    }
    let cap = (n - 3 - v.part(1)) as i64;
    let m0 = big_a.min(cap);
    let m1 = (big_a - 1).min(cap);
    Ok(match mm {
        0 => m1,
        1 => -m0 - 2 * m1,
        2 => 2 * m0 + m1,
        _ => -m0,
    })
}

/// N_{λ,μ}^{ν,d} in Gr(3,n) for arbitrary third rows: strip them, then apply [`qlr_gr3`].
pub fn gr3_structure_constant(ctx: &GrContext, t: &StructureIndex, lr: &impl ClassicalCoefficients) -> Result<i64> {
    if ctx.k() != 3 {
        return Err(Error::Precondition("the Gr(3,n) rule needs k = 3".into()));
    }
    match reduce_third_row(ctx, t) {
        None => Ok(0),
        Some(reduced) => qlr_gr3(ctx, &reduced, lr),
    }
}

/// Whether (−1)^{|λ|+|μ|+|ν|+dn}·N ≥ 0.
pub fn positivity_check(ctx: &GrContext, t: &StructureIndex, value: i64) -> bool {
    value == 0 || (t.parity(ctx.n()) == 0) == (value > 0)
}

/// Outcome of the ν_3 = 0 analysis for degree-one constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nu3Outcome {
    /// Equal to the classical constant at this index.
    Classical(StructureIndex),
    /// Equal to the given integer.
    Value(i64),
    Zero,
}

/// N_{λ,μ}^{ν,1} with all third rows zero and ν_1 ≥ max(λ_1,μ_1), ν_2 ≥ max(λ_2,μ_2).
///
/// The classical indices are produced by composing the duality, an equal-loss shift that clears
/// the third row of ν∨, and a degree-one reduction, so each one is a valid identity.
pub fn nu3_zero_case(ctx: &GrContext, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<Nu3Outcome> {
    let t = StructureIndex::new(lambda.clone(), mu.clone(), nu.clone(), 1);
    check_two_row(ctx, &t)?;
    let cols = ctx.cols();
    let (l, m, v) = (lambda, mu, nu);
    if v.part(3) != 0
        || v.part(1) < l.part(1).max(m.part(1))
        || v.part(2) < l.part(2).max(m.part(2))
    {
        return Err(Error::Precondition(format!("{t} is outside the ν_3 = 0 case")));
    }
    let via_dual = |shift: usize| -> Result<StructureIndex> {
        let dual = duality(ctx, &t).swapped();
        let moved = reduce_lemred(ctx, &dual, LemredVariant::EqualDown(shift))
            .ok_or_else(|| Error::Internal(format!("equal-loss shift fails for {t}")))?;
        let moved = moved.swapped();
        reduce_deg_one(ctx, &moved).ok_or_else(|| Error::Internal(format!("degree-one step fails for {t}")))
    };
    if cols - m.part(2) < l.part(1) || cols - m.part(1) < l.part(2) {
        // ν∨ and μ∨ both have first part n−3; one ↑1 removes it.
        let dual = duality(ctx, &t).swapped();
        let moved = reduce_lemred(ctx, &dual, LemredVariant::EqualUp(1))
            .ok_or_else(|| Error::Internal(format!("equal-loss shift fails for {t}")))?
            .swapped();
        return reduce_deg_one(ctx, &moved)
            .map(Nu3Outcome::Classical)
            .ok_or_else(|| Error::Internal(format!("degree-one step fails for {t}")));
    }
    if l == m && m == v && l.part(1) + l.part(2) <= cols {
        if l.part(1) < 2 * l.part(2) {
            return via_dual(cols - l.part(1)).map(Nu3Outcome::Classical);
        }
        if l.part(1) + l.part(2) < cols {
            return Ok(Nu3Outcome::Zero);
        }
        if l.part(1) == 2 * l.part(2) {
            return Ok(Nu3Outcome::Value(-(l.part(2) as i64)));
        }
        // λ_1 > 2λ_2: the shifted dual index (λ, (λ_1, λ_1−λ_2, 0), (λ_1, λ_1−λ_2, 0)) falls under
        // the first case above.
        let shifted = Partition::from_parts(vec![l.part(1), l.part(1) - l.part(2), 0]);
        return nu3_zero_case(ctx, l, &shifted, &shifted);
    }
    Ok(Nu3Outcome::Zero)
}
