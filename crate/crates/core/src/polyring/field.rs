//! Arithmetic in the prime field F_p for word-sized p.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field F_p. Elements are plain `u32` residues in `[0, p)`;
/// polynomials store them unboxed and go through these methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn scalar(&self, v: i64) -> FpScalar {
        FpScalar {
            value: self.reduce_i64(v),
            modulus: self.p,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A single element of F_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    modulus: u32,
}

impl FpScalar {
    pub fn new(value: i64, field: PrimeField) -> Self {
        field.scalar(value)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn inv(&self) -> Option<FpScalar> {
        (self.value != 0).then(|| FpScalar {
            value: self.field().inv(self.value),
            modulus: self.modulus,
        })
    }

    pub fn pow(&self, e: u64) -> FpScalar {
        FpScalar {
            value: self.field().pow(self.value, e),
            modulus: self.modulus,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for FpScalar {
            type Output = FpScalar;
            fn $method(self, rhs: FpScalar) -> FpScalar {
                assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
                FpScalar {
                    value: self.field().$method(self.value, rhs.value),
                    modulus: self.modulus,
                }
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: self.field().neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_huge_moduli() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(matches!(PrimeField::new(1 << 31), Err(Error::ModulusTooLarge(_))));
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for p in [2u64, 3, 5, 7, 101] {
            let k = PrimeField::new(p).unwrap();
            for a in 1..p as u32 {
                assert_eq!(k.mul(a, k.inv(a)), 1);
            }
        }
    }

    #[test]
    fn negative_literals_reduce() {
        let k = PrimeField::new(3).unwrap();
        assert_eq!(k.scalar(-1).value(), 2);
        let two = k.scalar(2);
        assert_eq!((two * two).value(), 1);
        assert_eq!((-two).value(), 1);
        assert_eq!(two.pow(3), two);
    }
}
