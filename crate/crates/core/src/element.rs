//! Elements of QK(Gr(k,n)) written in the Schubert basis with q-power coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{GrContext, Partition};

/// Finite sum of c·q^d·O^λ. Terms are keyed by (d, λ) so iteration is sorted.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct QkElement {
    terms: BTreeMap<(usize, Partition), i64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    q: usize,
    partition: Vec<usize>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    terms: Vec<TermJson>,
}

impl QkElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(lambda: Partition) -> Self {
        Self::term(lambda, 0, 1)
    }

    pub fn term(lambda: Partition, degree: usize, coeff: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(lambda, degree, coeff).expect("single term cannot overflow");
        e
    }

    pub fn add_term(&mut self, lambda: Partition, degree: usize, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let key = (degree, lambda);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(Error::ArithmeticOverflow("element addition"))?;
        if *slot == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn coeff(&self, lambda: &Partition, degree: usize) -> i64 {
        self.terms.get(&(degree, lambda.clone())).copied().unwrap_or(0)
    }

    /// Terms as (q-degree, partition, coefficient), sorted by degree then partition.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Partition, i64)> {
        self.terms.iter().map(|((d, p), &c)| (*d, p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(d, _)| *d).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(d, _)| *d).max()
    }

    pub fn add(&self, other: &QkElement) -> Result<QkElement> {
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub fn sub(&self, other: &QkElement) -> Result<QkElement> {
        let mut out = self.clone();
        out.add_scaled(other, -1)?;
        Ok(out)
    }

    pub fn add_scaled(&mut self, other: &QkElement, factor: i64) -> Result<()> {
        for (d, p, c) in other.iter() {
            let c = c.checked_mul(factor).ok_or(Error::ArithmeticOverflow("element scaling"))?;
            self.add_term(p.clone(), d, c)?;
        }
        Ok(())
    }

    pub fn scale(&self, factor: i64) -> Result<QkElement> {
        let mut out = QkElement::zero();
        out.add_scaled(self, factor)?;
        Ok(out)
    }

    /// Multiplies by q^e.
    pub fn q_shift(&self, e: usize) -> QkElement {
        QkElement { terms: self.terms.iter().map(|((d, p), &c)| ((d + e, p.clone()), c)).collect() }
    }

    /// The q = 0 specialization.
    pub fn at_q_zero(&self) -> QkElement {
        QkElement { terms: self.terms.iter().filter(|((d, _), _)| *d == 0).map(|(k, &c)| (k.clone(), c)).collect() }
    }

    /// Drops terms of q-degree above `trunc`.
    pub fn truncate(&self, trunc: usize) -> QkElement {
        QkElement { terms: self.terms.iter().filter(|((d, _), _)| *d <= trunc).map(|(k, &c)| (k.clone(), c)).collect() }
    }

    pub fn check(&self, ctx: &GrContext) -> Result<()> {
        for (d, p, _) in self.iter() {
            ctx.check(p)?;
            if d > ctx.trunc() {
                return Err(Error::DegreeOverflow { degree: d, trunc: ctx.trunc() });
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = ElementJson {
            terms: self
                .iter()
                .map(|(q, p, coeff)| TermJson { q, partition: p.parts().to_vec(), coeff })
                .collect(),
        };
        serde_json::to_value(doc).expect("element serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str, ctx: &GrContext) -> Result<QkElement> {
        let doc: ElementJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = QkElement::zero();
        for t in doc.terms {
            out.add_term(ctx.partition(&t.partition)?, t.q, t.coeff)?;
        }
        out.check(ctx)?;
        Ok(out)
    }
}

impl fmt::Display for QkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, p, c)) in self.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{d}")?,
            }
            if a != 1 || d != 0 {
                write!(f, "*")?;
            }
            write!(f, "O^{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer polynomial in q stored as a coefficient list without trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPoly(Vec<i64>);

impl QPoly {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c·q^d.
    pub fn monomial(d: usize, c: i64) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &QPoly) -> Result<QPoly> {
        let len = self.0.len().max(other.0.len());
        (0..len)
            .map(|i| self.coeff(i).checked_add(other.coeff(i)).ok_or(Error::ArithmeticOverflow("polynomial addition")))
            .collect::<Result<Vec<_>>>()
            .map(QPoly::from_coeffs)
    }

    pub fn mul(&self, other: &QPoly) -> Result<QPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(QPoly::default());
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::ArithmeticOverflow("polynomial product"))?;
                out[i + j] = out[i + j].checked_add(t).ok_or(Error::ArithmeticOverflow("polynomial product"))?;
            }
        }
        Ok(QPoly::from_coeffs(out))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().filter(|(_, c)| **c != 0) {
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        write!(f, "q")?
                    } else {
                        write!(f, "q^{d}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Per q-degree sum of the basis coefficients, using χ(O^ν) = 1.
pub fn euler_char(a: &QkElement) -> Result<QPoly> {
    let mut coeffs = Vec::new();
    for (d, _, c) in a.iter() {
        if coeffs.len() <= d {
            coeffs.resize(d + 1, 0i64);
        }
        coeffs[d] = i64::checked_add(coeffs[d], c).ok_or(Error::ArithmeticOverflow("Euler characteristic"))?;
    }
    Ok(QPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_json() {
        let ctx = GrContext::new(2, 4).unwrap();
        let mut e = QkElement::zero();
        e.add_term(ctx.partition(&[2, 0]).unwrap(), 0, 1).unwrap();
        e.add_term(ctx.partition(&[1, 1]).unwrap(), 0, 1).unwrap();
        e.add_term(ctx.partition(&[2, 1]).unwrap(), 0, -1).unwrap();
        e.add_term(ctx.empty(), 2, 3).unwrap();
        assert_eq!(e.to_string(), "O^(1,1) + O^(2,0) - O^(2,1) + 3q^2*O^(0,0)");
        let back = QkElement::from_json(&e.to_json(), &GrContext::with_trunc(2, 4, 3).unwrap()).unwrap();
        assert_eq!(back, e);
        assert_eq!(
            QkElement::basis(ctx.empty()).to_json(),
            r#"{"terms":[{"coeff":1,"partition":[0,0],"q":0}]}"#
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let ctx = GrContext::new(2, 4).unwrap();
        let a = QkElement::basis(ctx.full());
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn euler_characteristic() {
        let ctx = GrContext::new(2, 4).unwrap();
        assert!(euler_char(&QkElement::zero()).unwrap().is_zero());
        for lam in ctx.partitions() {
            assert_eq!(euler_char(&QkElement::basis(lam)).unwrap(), QPoly::constant(1));
        }
        let e = QkElement::term(ctx.full(), 1, -2);
        assert_eq!(euler_char(&e).unwrap(), QPoly::monomial(1, -2));
    }

    #[test]
    fn poly_arithmetic() {
        let a = QPoly::from_coeffs(vec![1, 1]);
        assert_eq!(a.mul(&a).unwrap().coeffs(), &[1, 2, 1]);
        assert_eq!(a.add(&QPoly::from_coeffs(vec![-1, -1])).unwrap(), QPoly::default());
        assert_eq!(QPoly::from_coeffs(vec![2, 0, -1]).to_string(), "2 - q^2");
    }
}
