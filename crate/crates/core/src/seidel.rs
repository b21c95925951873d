//! Seidel operators T and H, the minimal q-degree formula, and index reductions of structure
//! constants N_{λ,μ}^{ν,d}.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::QkElement;
use crate::error::{Error, Result};
use crate::partitions::{GrContext, Partition};

/// T(O^λ) = O^{(1,…,1)} * O^λ as (q-power, partition).
pub fn t_basis(ctx: &GrContext, lambda: &Partition) -> (usize, Partition) {
    if lambda.part(1) == ctx.cols() {
        (1, ctx.seidel_up(lambda, 1))
    } else {
        (0, ctx.seidel_up(lambda, 1))
    }
}

/// H(O^μ) = O^{n−k} * O^μ as (q-power, partition).
pub fn h_basis(ctx: &GrContext, mu: &Partition) -> (usize, Partition) {
    let d = usize::from(mu.part(ctx.k()) > 0);
    (d, ctx.seidel_down(mu, 1))
}

fn apply_basis_map(
    ctx: &GrContext,
    a: &QkElement,
    f: impl Fn(&GrContext, &Partition) -> (usize, Partition),
    checked: bool,
) -> Result<QkElement> {
    let mut out = QkElement::zero();
    for (d, lam, c) in a.iter() {
        let (e, nu) = f(ctx, lam);
        if checked && d + e > ctx.trunc() {
            return Err(Error::DegreeOverflow { degree: d + e, trunc: ctx.trunc() });
        }
        out.add_term(nu, d + e, c)?;
    }
    Ok(out)
}

/// The operator T, erroring if a term passes the context truncation.
pub fn seidel_t(ctx: &GrContext, a: &QkElement) -> Result<QkElement> {
    apply_basis_map(ctx, a, t_basis, true)
}

/// The operator H, erroring if a term passes the context truncation.
pub fn seidel_h(ctx: &GrContext, a: &QkElement) -> Result<QkElement> {
    apply_basis_map(ctx, a, h_basis, true)
}

/// T^p without any truncation bound.
pub fn seidel_t_power_exact(ctx: &GrContext, a: &QkElement, p: usize) -> Result<QkElement> {
    let mut cur = a.clone();
    for _ in 0..p {
        cur = apply_basis_map(ctx, &cur, t_basis, false)?;
    }
    Ok(cur)
}

/// H^p without any truncation bound.
pub fn seidel_h_power_exact(ctx: &GrContext, a: &QkElement, p: usize) -> Result<QkElement> {
    let mut cur = a.clone();
    for _ in 0..p {
        cur = apply_basis_map(ctx, &cur, h_basis, false)?;
    }
    Ok(cur)
}

/// (d_r(λ), λ↑r) with T^r(O^λ) = q^{d_r} O^{λ↑r}.
pub fn qh_seidel_power(ctx: &GrContext, lambda: &Partition, r: usize) -> (usize, Partition) {
    (ctx.seidel_degree(lambda, r), ctx.seidel_up(lambda, r))
}

/// Smallest q-degree in O^λ*O^μ, with the smallest shift r attaining it.
pub fn d_min(ctx: &GrContext, lambda: &Partition, mu: &Partition) -> (usize, usize) {
    let n = ctx.n();
    let (ls, ms) = (lambda.size() as i64, mu.size() as i64);
    let mut best = (i64::MIN, 0);
    for i in 0..=n {
        let num = ls - ctx.seidel_up(lambda, i).size() as i64 + ms - ctx.seidel_up(mu, n - i).size() as i64;
        debug_assert_eq!(num.rem_euclid(n as i64), 0);
        let val = num / n as i64;
        if val > best.0 {
            best = (val, i);
        }
    }
    (best.0 as usize, best.1)
}

/// The index (λ, μ, ν, d) of a structure constant N_{λ,μ}^{ν,d}.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct StructureIndex {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub d: usize,
}

impl StructureIndex {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition, d: usize) -> Self {
        StructureIndex { lambda, mu, nu, d }
    }

    /// Commutativity: N_{λ,μ}^{ν,d} = N_{μ,λ}^{ν,d}.
    pub fn swapped(&self) -> Self {
        StructureIndex { lambda: self.mu.clone(), mu: self.lambda.clone(), nu: self.nu.clone(), d: self.d }
    }

    /// Parity exponent |λ|+|μ|+|ν|+dn of the sign pattern.
    pub fn parity(&self, n: usize) -> usize {
        (self.lambda.size() + self.mu.size() + self.nu.size() + self.d * n) % 2
    }
}

impl fmt::Display for StructureIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N[{}, {}; {}, d={}]", self.lambda, self.mu, self.nu, self.d)
    }
}

/// Shift-transport identities for a structure constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemredVariant {
    /// Applies when λ loses more size under ↑1 than ν does: shift both by ↑1 and lower d.
    Up,
    /// Same with ↓1.
    Down,
    /// Applies when λ and ν lose equal size under ↑i: shift both by ↑i, d unchanged.
    EqualUp(usize),
    /// Same with ↓i.
    EqualDown(usize),
}

fn loss(lambda: &Partition, shifted: &Partition) -> i64 {
    lambda.size() as i64 - shifted.size() as i64
}

pub fn reduce_lemred(ctx: &GrContext, t: &StructureIndex, variant: LemredVariant) -> Option<StructureIndex> {
    let (lam_s, nu_s) = match variant {
        LemredVariant::Up => (ctx.seidel_up(&t.lambda, 1), ctx.seidel_up(&t.nu, 1)),
        LemredVariant::Down => (ctx.seidel_down(&t.lambda, 1), ctx.seidel_down(&t.nu, 1)),
        LemredVariant::EqualUp(i) => (ctx.seidel_up(&t.lambda, i), ctx.seidel_up(&t.nu, i)),
        LemredVariant::EqualDown(i) => {
            (ctx.seidel_down(&t.lambda, i as i64), ctx.seidel_down(&t.nu, i as i64))
        }
    };
    let dl = loss(&t.lambda, &lam_s);
    let dn = loss(&t.nu, &nu_s);
    let d = match variant {
        LemredVariant::Up | LemredVariant::Down => {
            if dl <= dn || t.d == 0 {
                return None;
            }
            t.d - 1
        }
        LemredVariant::EqualUp(_) | LemredVariant::EqualDown(_) => {
            if dl != dn {
                return None;
            }
            t.d
        }
    };
    Some(StructureIndex::new(lam_s, t.mu.clone(), nu_s, d))
}

/// N_{λ,μ}^{ν,d} = N_{λ↑i,μ}^{ν↑i, d − d_i(λ) + d_i(ν)}; `None` when the new degree is negative.
pub fn seidel_transport(ctx: &GrContext, t: &StructureIndex, i: usize) -> Option<StructureIndex> {
    let d = t.d as i64 - ctx.seidel_degree(&t.lambda, i) as i64 + ctx.seidel_degree(&t.nu, i) as i64;
    (d >= 0).then(|| StructureIndex::new(ctx.seidel_up(&t.lambda, i), t.mu.clone(), ctx.seidel_up(&t.nu, i), d as usize))
}

/// N_{λ,μ}^{ν,d} = N_{λ,ν∨}^{μ∨,d}.
pub fn duality(ctx: &GrContext, t: &StructureIndex) -> StructureIndex {
    StructureIndex::new(t.lambda.clone(), ctx.dual(&t.nu), ctx.dual(&t.mu), t.d)
}

/// λ↑r and ν↑r for r = n−k−λ_m+m, from their closed forms, checked against iterated shifts.
pub fn lemcom_shift(ctx: &GrContext, lambda: &Partition, nu: &Partition, m: usize) -> Result<(Partition, Partition)> {
    let k = ctx.k();
    let cols = ctx.cols();
    if m == 0 || m > k {
        return Err(Error::Precondition(format!("row index {m} outside 1..={k}")));
    }
    if (1..m).any(|i| nu.part(i) < lambda.part(i)) || nu.part(m) >= lambda.part(m) {
        return Err(Error::Precondition(format!("row {m} is not the first row with ν_i < λ_i")));
    }
    let lm = lambda.part(m);
    let mut lam_parts: Vec<usize> = (m + 1..=k).map(|j| lambda.part(j) + cols - lm).collect();
    lam_parts.extend((1..m).map(|j| lambda.part(j) - lm));
    lam_parts.push(0);
    let mut nu_parts: Vec<usize> = (m..=k).map(|j| nu.part(j) + cols + 1 - lm).collect();
    nu_parts.extend((1..m).map(|j| nu.part(j) + 1 - lm));
    let lam_r = ctx.partition(&lam_parts)?;
    let nu_r = ctx.partition(&nu_parts)?;
    let r = cols - lm + m;
    if lam_r != ctx.seidel_up(lambda, r) || nu_r != ctx.seidel_up(nu, r) {
        return Err(Error::Internal(format!("closed-form shift disagrees for {lambda}, {nu}, m={m}")));
    }
    Ok((lam_r, nu_r))
}

fn first_row_below(lambda: &Partition, nu: &Partition, k: usize) -> Option<usize> {
    (1..=k).find(|&i| nu.part(i) < lambda.part(i))
}

/// The shift r = n−k−λ_m+m used by [`reduce_deg_one`], when it applies.
pub fn deg_one_shift(ctx: &GrContext, t: &StructureIndex) -> Option<usize> {
    if t.d == 0 {
        return None;
    }
    let m = first_row_below(&t.lambda, &t.nu, ctx.k())?;
    Some(ctx.cols() - t.lambda.part(m) + m)
}

/// Lowers d by one when some ν_i < λ_i.
pub fn reduce_deg_one(ctx: &GrContext, t: &StructureIndex) -> Option<StructureIndex> {
    if t.d == 0 {
        return None;
    }
    let m = first_row_below(&t.lambda, &t.nu, ctx.k())?;
    let (lam_r, nu_r) = lemcom_shift(ctx, &t.lambda, &t.nu, m).expect("preconditions hold by choice of m");
    Some(StructureIndex::new(lam_r, t.mu.clone(), nu_r, t.d - 1))
}

/// Lowers d by s ≥ 2 in one shift.
pub fn reduce_higher(ctx: &GrContext, t: &StructureIndex, s: usize) -> Option<StructureIndex> {
    let k = ctx.k();
    if s < 2 || t.d < s || s > k {
        return None;
    }
    if t.nu.part(1) + s - 2 >= t.lambda.part(s - 1) {
        return None;
    }
    let row = (s..=k).find(|&j| t.nu.part(j - s + 1) + s - 1 < t.lambda.part(j))?;
    let r = ctx.cols() - t.lambda.part(row) + row;
    Some(StructureIndex::new(ctx.seidel_up(&t.lambda, r), t.mu.clone(), ctx.seidel_up(&t.nu, r), t.d - s))
}

/// Duality followed by a shift and a degree-one reduction on μ; applies when ν_1 ≥ λ_1.
pub fn reduce_dual_shift(ctx: &GrContext, t: &StructureIndex) -> Option<StructureIndex> {
    let k = ctx.k();
    let n = ctx.n() as i64;
    let cols = ctx.cols() as i64;
    if t.d == 0 || t.nu.part(1) < t.lambda.part(1) {
        return None;
    }
    let nu1 = t.nu.part(1) as i64;
    let m = (1..=k).find(|&j| t.nu.part(1) < t.lambda.part(k + 1 - j) + t.mu.part(j))?;
    let mu_m = t.mu.part(m) as i64;
    let m = m as i64;
    Some(StructureIndex::new(
        ctx.seidel_down(&ctx.dual(&t.nu), cols - nu1),
        ctx.seidel_down(&t.mu, k as i64 + mu_m - m),
        ctx.seidel_down(&ctx.dual(&t.lambda), n - nu1 + mu_m - m),
        t.d - 1,
    ))
}

/// Rule names appearing in reduction traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    ThirdRow,
    HigherShift,
    DegreeOne,
    DegreeOneSwapped,
    DualShift,
    DualShiftSwapped,
    SeidelUp,
    SeidelDown,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::ThirdRow => "third-row",
            Rule::HigherShift => "higher-shift",
            Rule::DegreeOne => "degree-one",
            Rule::DegreeOneSwapped => "degree-one-swapped",
            Rule::DualShift => "dual-shift",
            Rule::DualShiftSwapped => "dual-shift-swapped",
            Rule::SeidelUp => "seidel-up",
            Rule::SeidelDown => "seidel-down",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub rule: Rule,
    pub result: StructureIndex,
}

/// How a greedy reduction ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionEnd {
    /// Reached d = 0, a classical coefficient.
    Classical,
    /// The constant is zero because the reduced degree went negative.
    Zero,
    /// No rule applies.
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: StructureIndex,
    pub steps: Vec<ReductionStep>,
    pub end: ReductionEnd,
}

impl ReductionTrace {
    pub fn last(&self) -> &StructureIndex {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }
}

/// Reduces greedily toward degree zero.
///
/// For k = 3 the third rows are stripped first. A one-shot shift to degree zero is tried on the
/// input; after that, degree-one reductions with the smallest shift are preferred, then the
/// dual shift, then the ↑1/↓1 transports.
pub fn greedy_reduce(ctx: &GrContext, start: &StructureIndex) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut cur = start.clone();
    let finish = |steps, end| ReductionTrace { start: start.clone(), steps, end };

    if ctx.k() == 3 && cur.lambda.part(3) + cur.mu.part(3) > 0 {
        match crate::engine::reduce_third_row(ctx, &cur) {
            Some(next) => {
                cur = next.clone();
                steps.push(ReductionStep { rule: Rule::ThirdRow, result: next });
            }
            None => return finish(steps, ReductionEnd::Zero),
        }
    }
    if cur.d >= 2 {
        let one_shot = reduce_higher(ctx, &cur, cur.d).or_else(|| reduce_higher(ctx, &cur.swapped(), cur.d).map(|t| t.swapped()));
        if let Some(next) = one_shot {
            cur = next.clone();
            steps.push(ReductionStep { rule: Rule::HigherShift, result: next });
        }
    }
    while cur.d > 0 {
        let direct = deg_one_shift(ctx, &cur);
        let swapped = deg_one_shift(ctx, &cur.swapped());
        let step = match (direct, swapped) {
            (Some(a), Some(b)) if b < a => {
                Some((Rule::DegreeOneSwapped, reduce_deg_one(ctx, &cur.swapped()).map(|t| t.swapped())))
            }
            (Some(_), _) => Some((Rule::DegreeOne, reduce_deg_one(ctx, &cur))),
            (None, Some(_)) => {
                Some((Rule::DegreeOneSwapped, reduce_deg_one(ctx, &cur.swapped()).map(|t| t.swapped())))
            }
            (None, None) => None,
        };
        let step = step
            .or_else(|| reduce_dual_shift(ctx, &cur).map(|t| (Rule::DualShift, Some(t))))
            .or_else(|| reduce_dual_shift(ctx, &cur.swapped()).map(|t| (Rule::DualShiftSwapped, Some(t))))
            .or_else(|| reduce_lemred(ctx, &cur, LemredVariant::Up).map(|t| (Rule::SeidelUp, Some(t))))
            .or_else(|| reduce_lemred(ctx, &cur, LemredVariant::Down).map(|t| (Rule::SeidelDown, Some(t))));
        match step {
            Some((rule, Some(next))) => {
                cur = next.clone();
                steps.push(ReductionStep { rule, result: next });
            }
            _ => return finish(steps, ReductionEnd::Stuck),
        }
    }
    finish(steps, ReductionEnd::Classical)
}
