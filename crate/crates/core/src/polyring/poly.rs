use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::{FpScalar, PrimeField};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Coefficient field, variable names and term order of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Shared handle to a [`PolyRing`].
pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.len() > 63 {
            return Err(Error::InvalidInput("at most 63 variables are supported".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) || vars[..i].contains(v) {
                return Err(Error::InvalidVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.modulus()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same field and variables, different term order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }

    /// Same field, given variables and order.
    pub fn with_vars(&self, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        PolyRing::new(self.field.modulus() as u64, &vars, order)
    }

    /// True when the rings differ at most in their term order.
    pub fn compatible(&self, other: &PolyRing) -> bool {
        self.field == other.field && self.vars == other.vars
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Sparse polynomial over F_p. Terms are kept sorted by the ring's order,
/// largest first, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

#[inline]
pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field.reduce_i64(c);
        let terms = if c == 0 {
            vec![]
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), 1 % ring.characteristic())],
        }
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms: combines duplicates, drops
    /// zeros and sorts.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        let k = ring.field;
        let order = ring.order;
        for t in terms.iter_mut() {
            t.1 %= k.modulus();
        }
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = k.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> FpScalar {
        let c = self.terms.iter().find(|t| &t.0 == m).map_or(0, |t| t.1);
        self.ring.field.scalar(c as i64)
    }

    pub fn constant_term(&self) -> FpScalar {
        let c = match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        };
        self.ring.field.scalar(c as i64)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// True when every term has zero exponent in each variable of `mask`.
    pub fn avoids_vars(&self, mask: u64) -> bool {
        self.terms.iter().all(|t| t.0.support_mask() & mask == 0)
    }

    pub(crate) fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1, None))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let minus_one = self.ring.field.neg(1);
        Ok(self.add_scaled(other, minus_one, None))
    }

    pub fn neg(&self) -> Polynomial {
        let k = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), k.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let k = self.ring.field;
        let c = c % k.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), k.mul(*a, c)))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if c != 1 => self.scale(self.ring.field.inv(c)),
            _ => self.clone(),
        }
    }

    /// `self + c * mono * other`, merging in one pass. `mono` must not
    /// overflow (callers multiply monomials that come from divisibility).
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u32, mono: Option<&Monomial>) -> Polynomial {
        let k = self.ring.field;
        let order = self.ring.order;
        let shifted: Vec<(Monomial, u32)> = other
            .terms
            .iter()
            .map(|(m, a)| {
                let m = match mono {
                    Some(s) => m.mul(s).expect("monomial overflow in reduction"),
                    None => m.clone(),
                };
                (m, k.mul(*a, c))
            })
            .collect();
        let mut out = Vec::with_capacity(self.terms.len() + shifted.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < shifted.len() {
            match order.compare(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    if shifted[j].1 != 0 {
                        out.push(shifted[j].clone());
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = k.add(self.terms[i].1, shifted[j].1);
                    if s != 0 {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted[j..].iter().filter(|t| t.1 != 0).cloned());
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Polynomial> {
        let k = self.ring.field;
        let c = c % k.modulus();
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, x)| Ok((a.mul(m)?, k.mul(*x, c))))
            .collect::<Result<Vec<_>>>()?;
        // Multiplication by a monomial preserves the order.
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let k = self.ring.field;
        let mut terms = Vec::with_capacity(small.len() * large.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                terms.push((m1.mul(m2)?, k.mul(*c1, *c2)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, mut n: u64) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^(p^e)`, computed termwise: in characteristic p the Frobenius
    /// map is additive, so each term's exponents scale by p^e and each
    /// coefficient is raised to p^e.
    pub fn frobenius_pow(&self, e: u32) -> Result<Polynomial> {
        let k = self.ring.field;
        let q = (k.modulus() as u64)
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.scale(q)?, k.pow(*c, q))))
            .collect::<Result<Vec<_>>>()?;
        // Scaling exponents uniformly preserves every order used here.
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]` of the target ring.
    pub fn map_into(&self, target: &Ring, var_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.permute(var_map, n), *c))
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Same polynomial viewed in a ring that differs only in term order.
    pub fn reorder(&self, target: &Ring) -> Result<Polynomial> {
        if !self.ring.compatible(target) {
            return Err(Error::RingMismatch);
        }
        if self.ring.order == target.order {
            return Ok(Polynomial {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.order.compare(&b.0, &a.0));
        Ok(Polynomial {
            ring: target.clone(),
            terms,
        })
    }

    /// Sets every variable in `mask` to zero.
    pub fn kill_vars(&self, mask: u64) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| t.0.support_mask() & mask == 0)
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                f.write_str(&self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", c, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn ring_rejects_bad_variables() {
        assert!(PolyRing::new(3, &["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(3, &["1x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(4, &["x"], MonomialOrder::Grevlex).is_err());
    }

    #[test]
    fn small_arithmetic() {
        let r = ring(5, &["x", "y"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = x.add(&y).unwrap().add(&x.neg()).unwrap();
        assert_eq!(s, y);

        let r3 = ring(3, &["x"]);
        let x = Polynomial::var(&r3, 0);
        let a = Polynomial::one(&r3).add(&x).unwrap();
        let b = Polynomial::one(&r3).add(&x.scale(2)).unwrap();
        // (1 + x)(1 + 2x) = 1 + 3x + 2x^2 = 1 + 2x^2 over F_3
        let expected = Polynomial::one(&r3).add(&x.pow(2).unwrap().scale(2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn frobenius_matches_repeated_multiplication() {
        let r = ring(3, &["x", "y"]);
        let x = Polynomial::var(&r, 0);
        let two_x = x.scale(2);
        assert_eq!(two_x.frobenius_pow(1).unwrap(), x.pow(3).unwrap().scale(2));
        assert_eq!(two_x.frobenius_pow(0).unwrap(), two_x);
    }

    #[test]
    fn ring_mismatch() {
        let a = Polynomial::var(&ring(3, &["x"]), 0);
        let b = Polynomial::var(&ring(5, &["x"]), 0);
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
        assert_eq!(a.mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn frobenius_overflow() {
        let r = ring(3, &["x"]);
        let x = Polynomial::var(&r, 0).pow(1000).unwrap();
        assert_eq!(x.frobenius_pow(9), Err(Error::ExponentOverflow));
    }

    #[test]
    fn printing_is_canonical() {
        let r = ring(3, &["x1", "x2"]);
        let p = Polynomial::from_terms(
            &r,
            vec![
                (Monomial::from_exponents(&[0, 0]), 5),
                (Monomial::from_exponents(&[1, 1]), 2),
                (Monomial::from_exponents(&[2, 0]), 1),
            ],
        );
        assert_eq!(p.to_string(), "x1^2 + 2*x1*x2 + 2");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }
}
