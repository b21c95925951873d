//! Partition combinatorics of curve neighborhoods of Schubert varieties.

use crate::error::{Error, Result};
use crate::partitions::{GrContext, Partition};

/// λ^d: drop the first d rows and d columns, padding with zeros.
pub fn curve_neighborhood(lambda: &Partition, d: usize) -> Partition {
    let k = lambda.len();
    let mut parts: Vec<usize> = (d + 1..=k).map(|j| lambda.part(j).saturating_sub(d)).collect();
    parts.resize(k, 0);
    Partition::from_parts(parts)
}

/// Removes the outer rim: (λ_2−1, …, λ_k−1, 0), floored at zero.
pub fn rim_peel(lambda: &Partition) -> Partition {
    curve_neighborhood(lambda, 1)
}

/// τ̃ with τ̃_j = min(η_{j−d+1} + d, n−k), reading η_i = n for i ≤ 0.
pub fn gamma_special(ctx: &GrContext, eta: &Partition, d: usize) -> Result<Partition> {
    ctx.check(eta)?;
    let k = ctx.k();
    if d == 0 || d >= (k + 1).min(ctx.cols()) {
        return Err(Error::Precondition(format!("degree {d} outside 1..min(k+1, n−k)")));
    }
    let parts = (1..=k)
        .map(|j| {
            let src = if j + 1 > d { eta.part(j + 1 - d) } else { ctx.n() };
            (src + d).min(ctx.cols())
        })
        .collect();
    Ok(Partition::from_parts(parts))
}

/// The right side of the special-degree identity: d−1 curve-neighborhood steps applied to the
/// opposite Schubert variety of μ∨↑1, written in the same opposite indexing.
pub fn gamma_special_via_shift(ctx: &GrContext, mu: &Partition, d: usize) -> Result<Partition> {
    ctx.check(mu)?;
    if mu.part(ctx.k()) == 0 {
        return Err(Error::Precondition(format!("{mu} needs k nonzero parts")));
    }
    let start = ctx.seidel_up(&ctx.dual(mu), 1);
    Ok(ctx.dual(&curve_neighborhood(&ctx.dual(&start), d - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ctx = GrContext::new(3, 7).unwrap();
        let p = |v: &[usize]| ctx.partition(v).unwrap();
        assert_eq!(curve_neighborhood(&p(&[4, 3, 2]), 1), p(&[2, 1, 0]));
        assert_eq!(curve_neighborhood(&p(&[4, 3, 2]), 3), ctx.empty());
        assert_eq!(curve_neighborhood(&p(&[4, 3, 2]), 0), p(&[4, 3, 2]));
        assert_eq!(rim_peel(&p(&[1, 1, 1])), ctx.empty());
    }

    #[test]
    fn gamma_small() {
        let ctx = GrContext::new(2, 4).unwrap();
        let eta = ctx.partition(&[1, 0]).unwrap();
        assert_eq!(gamma_special(&ctx, &eta, 1).unwrap(), ctx.partition(&[2, 1]).unwrap());
        assert!(gamma_special(&ctx, &eta, 2).is_err());

        let ctx = GrContext::new(3, 9).unwrap();
        let mu = ctx.partition(&[5, 3, 1]).unwrap();
        let eta = ctx.dual(&mu);
        assert_eq!(gamma_special(&ctx, &eta, 2).unwrap(), ctx.partition(&[6, 6, 5]).unwrap());
        assert_eq!(gamma_special_via_shift(&ctx, &mu, 2).unwrap(), ctx.partition(&[6, 6, 5]).unwrap());
    }
}
