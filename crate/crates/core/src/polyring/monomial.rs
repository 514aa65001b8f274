use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector with a cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial {
            degree: 1,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps: exps.into(),
        }
    }

    pub fn try_from_exponents(exps: &[u64]) -> Result<Self> {
        let exps = exps
            .iter()
            .map(|&e| u16::try_from(e).map_err(|_| Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_exponents(&exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Box<[u16]>>>()?;
        Ok(Monomial {
            degree: self.degree + other.degree,
            exps,
        })
    }

    /// Multiplies every exponent by `k`.
    pub fn scale(&self, k: u64) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&a| {
                (a as u64)
                    .checked_mul(k)
                    .and_then(|v| u16::try_from(v).ok())
                    .ok_or(Error::ExponentOverflow)
            })
            .collect::<Result<Box<[u16]>>>()?;
        Ok(Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps,
        })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            degree: other.degree - self.degree,
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// The variable index if this is a pure power `x_i^k`, k > 0.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Support as a bitmask over variable indices (< 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn permute(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps = vec![0u16; nvars];
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] = e;
            }
        }
        Monomial {
            degree: self.degree,
            exps: exps.into_boxed_slice(),
        }
    }
}

/// Term orders on monomials. `Elimination(k)` compares the first `k`
/// variables by grevlex and breaks ties with grevlex on the rest, so any
/// polynomial whose leading monomial avoids the first block lies entirely
/// in the subring of the remaining variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    Elimination(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.exps.len());
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                grevlex_slice(a1, b1).then_with(|| grevlex_slice(a2, b2))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Elimination(k) => format!("elimination({k})"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

// Larger exponent in the last differing variable means smaller monomial.
#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn grevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(
            o.compare(&m(&[1, 1]), &m(&[3, 0]).quotient_of(&m(&[3, 0]))),
            Ordering::Greater
        );
        // x1*x3 > x2*x4 in five variables
        assert_eq!(
            o.compare(&m(&[1, 0, 1, 0, 0]), &m(&[0, 1, 0, 1, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn elimination_prefers_first_block() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn overflow_is_an_error() {
        assert_eq!(m(&[u16::MAX]).mul(&m(&[1])), Err(Error::ExponentOverflow));
        assert_eq!(m(&[30000]).scale(3), Err(Error::ExponentOverflow));
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::Grevlex),
            (0usize..4).prop_map(MonomialOrder::Elimination),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..6, 3).prop_map(|e| m(&e))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_total_orders(o in orders(), a in mono(), b in mono(), c in mono()) {
            let ab = o.compare(&a, &b);
            prop_assert_eq!(ab.reverse(), o.compare(&b, &a));
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
            }
            prop_assert_eq!(ab, o.compare(&a.mul(&c).unwrap(), &b.mul(&c).unwrap()));
            let one = Monomial::one(3);
            prop_assert_ne!(o.compare(&a, &one), Ordering::Less);
        }
    }
}
