//! Ideals of a polynomial ring with cached Gröbner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, divide, GroebnerBasis};
use crate::polyring::{parse, same_ring, Monomial, MonomialOrder, Polynomial, Ring};

type Slot = Arc<Mutex<Option<Arc<GroebnerBasis>>>>;

#[derive(Default)]
struct GbCache {
    slots: Mutex<HashMap<MonomialOrder, Slot>>,
}

/// An ideal given by generators. Gröbner bases are computed on first use,
/// once per order, and shared by clones.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Arc<GbCache>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            cache: Arc::default(),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| parse(s.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal::new(ring, gens).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Gröbner basis for the ring's own order.
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_in(self.ring.order())
    }

    pub fn groebner_in(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        let slot = {
            let mut slots = self.cache.slots.lock().unwrap();
            slots.entry(order).or_default().clone()
        };
        let mut entry = slot.lock().unwrap();
        if let Some(gb) = entry.as_ref() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.ring, &self.gens, order)?);
        *entry = Some(gb.clone());
        Ok(gb)
    }

    pub fn normal_form(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check(g)?;
        self.groebner()?.normal_form(g)
    }

    pub fn contains(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(g)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ideal(other)?;
        let gb = self.groebner()?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extensional equality via reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ideal(other)?;
        Ok(self.groebner()?.polys() == other.groebner()?.polys())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit_ideal())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    fn check(&self, g: &Polynomial) -> Result<()> {
        if same_ring(g.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_ideal(&self, other: &Ideal) -> Result<()> {
        if same_ring(&other.ring, &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// The Frobenius bracket power: generated by the `p^e`-th powers of the
    /// generators.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_pow(e))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `self ∩ other`, by eliminating `t` from `t·self + (1 − t)·other`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let mut names = vec![fresh_name(&self.ring)];
        names.extend(self.ring.vars().iter().cloned());
        let big = self.ring.with_vars(names, MonomialOrder::Elimination(1))?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = Polynomial::one(&big).sub(&t)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            gens.push(a.map_into(&big, &shift).mul(&t)?);
        }
        for b in &other.gens {
            gens.push(b.map_into(&big, &shift).mul(&one_minus_t)?);
        }
        let gb = buchberger(&big, &gens, MonomialOrder::Elimination(1))?;
        let back: Vec<usize> = std::iter::once(0).chain(0..n).collect();
        let kept = gb
            .polys()
            .iter()
            .filter(|g| g.avoids_vars(1))
            .map(|g| g.map_into(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `(self : (g))`, computed as `(self ∩ (g)) / g`.
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        self.check(g)?;
        if g.is_zero() {
            return Err(Error::ZeroColonDivisor);
        }
        if self.contains(g)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersect(&principal)?;
        let divisor = [g.clone()];
        let mut gens = Vec::with_capacity(meet.gens.len());
        for h in &meet.gens {
            let (q, r) = divide(h, &divisor);
            debug_assert!(r.is_zero(), "intersection element not divisible");
            gens.push(q.into_iter().next().unwrap());
        }
        Ideal::new(&self.ring, gens)
    }

    /// `(self : other) = {g : g·other ⊆ self}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let divisors: Vec<&Polynomial> = other.gens.iter().filter(|g| !g.is_zero()).collect();
        if divisors.is_empty() {
            return Err(Error::ZeroColonDivisor);
        }
        let mut acc: Option<Ideal> = None;
        for g in divisors {
            let c = self.colon_element(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) if a.is_unit()? => c,
                Some(a) if c.is_unit()? => a,
                Some(a) => a.intersect(&c)?,
            });
        }
        let result = acc.unwrap();
        // Reduced generators keep later computations small.
        let gb = result.groebner()?;
        Ideal::new(&self.ring, gb.polys().to_vec())
    }

    /// Generators of `self ∩ k[remaining variables]`, expressed in the same
    /// ambient ring.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        let mut drop: Vec<usize> = drop.to_vec();
        drop.sort_unstable();
        drop.dedup();
        if let Some(&bad) = drop.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidInput(format!("no variable with index {bad}")));
        }
        if drop.is_empty() {
            let gb = self.groebner()?;
            return Ideal::new(&self.ring, gb.polys().to_vec());
        }
        // Dropped variables first, then the rest in their original order.
        let mut perm: Vec<usize> = drop.clone();
        perm.extend((0..n).filter(|i| !drop.contains(i)));
        let names: Vec<String> = perm.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let order = MonomialOrder::Elimination(drop.len());
        let elim_ring = self.ring.with_vars(names, order)?;
        let mut forward = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            forward[old] = new;
        }
        let gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.map_into(&elim_ring, &forward))
            .collect();
        let gb = buchberger(&elim_ring, &gens, order)?;
        let mask: u64 = (1u64 << drop.len()) - 1;
        let kept = gb
            .polys()
            .iter()
            .filter(|g| g.avoids_vars(mask))
            .map(|g| g.map_into(&self.ring, &perm))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    pub fn eliminate_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Ideal> {
        let idx = names
            .iter()
            .map(|s| {
                self.ring
                    .var_index(s.as_ref())
                    .ok_or_else(|| Error::InvalidVariable(s.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// Krull dimension of `k[x]/self`: the largest set of variables no
    /// leading monomial is supported on.
    pub fn krull_dimension(&self) -> Result<usize> {
        let gb = self.groebner()?;
        if gb.is_unit_ideal() {
            return Err(Error::UnitIdeal);
        }
        let masks: Vec<u64> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
        let n = self.ring.nvars();
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size > best && masks.iter().all(|&m| m & !subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Monomials outside the leading-term ideal, in increasing order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let gb = self.groebner()?;
        standard_monomials_of(&gb)
    }

    pub fn is_artinian(&self) -> Result<bool> {
        match self.standard_monomials() {
            Ok(_) => Ok(true),
            Err(Error::NotArtinian(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Restricts to the ring with the given variables removed. Generators
    /// must not involve them.
    pub fn restrict(&self, target: &Ring, keep: &[usize]) -> Result<Ideal> {
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let mut gens = Vec::new();
        for g in &self.gens {
            if g.terms().iter().any(|(m, _)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .any(|(i, &e)| e > 0 && map[i] == usize::MAX)
            }) {
                return Err(Error::InvalidInput(format!("{g} involves a removed variable")));
            }
            let mut compact = map.clone();
            for v in compact.iter_mut() {
                if *v == usize::MAX {
                    *v = 0;
                }
            }
            gens.push(g.map_into(target, &compact));
        }
        Ideal::new(target, gens)
    }
}

pub(crate) fn standard_monomials_of(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    let ring = gb.ring();
    let n = ring.nvars();
    let lms = gb.leading_monomials();
    let mut bounds = vec![u16::MAX; n];
    for m in &lms {
        if m.is_one() {
            return Ok(Vec::new());
        }
        if let Some(i) = m.pure_power_var() {
            bounds[i] = bounds[i].min(m.exponents()[i]);
        }
    }
    if let Some(i) = bounds.iter().position(|&b| b == u16::MAX) {
        return Err(Error::NotArtinian(ring.vars()[i].clone()));
    }
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    loop {
        let m = Monomial::from_exponents(&exps);
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == n {
                let order = ring.order();
                out.sort_by(|a, b| order.compare(a, b));
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

fn fresh_name(ring: &Ring) -> String {
    let mut name = "t_aux".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PolyRing;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    fn same(a: &Ideal, b: &Ideal) -> bool {
        a.equals(b).unwrap()
    }

    #[test]
    fn sums_and_products() {
        let r = ring(3, &["x", "y", "z"]);
        let s = ideal(&r, &["x"]).sum(&ideal(&r, &["y"])).unwrap();
        assert!(same(&s, &ideal(&r, &["x", "y"])));
        let m = ideal(&r, &["x", "y"]);
        assert!(same(&m.product(&m).unwrap(), &ideal(&r, &["x^2", "x*y", "y^2"])));
        let p = ideal(&r, &["x^3", "y^3"])
            .product(&ideal(&r, &["x", "z"]))
            .unwrap();
        assert_eq!(p.generators().len(), 4);
        assert!(same(&p, &ideal(&r, &["x^4", "x^3*z", "x*y^3", "y^3*z"])));
    }

    #[test]
    fn bracket_powers() {
        let r = ring(3, &["x", "y"]);
        let m = ideal(&r, &["x", "y"]);
        assert!(same(&m.bracket_power(1).unwrap(), &ideal(&r, &["x^3", "y^3"])));
        assert!(same(&m.bracket_power(0).unwrap(), &m));
        let l = ideal(&r, &["x + y"]);
        assert!(same(&l.bracket_power(1).unwrap(), &ideal(&r, &["(x+y)^3"])));
        assert!(same(&l.bracket_power(1).unwrap(), &ideal(&r, &["x^3 + y^3"])));
    }

    #[test]
    fn colon_examples() {
        let r = ring(3, &["x", "y"]);
        let c = ideal(&r, &["x^2"]).colon(&ideal(&r, &["x"])).unwrap();
        assert!(same(&c, &ideal(&r, &["x"])));
        let c = ideal(&r, &["x^3*y^3"]).colon(&ideal(&r, &["x*y"])).unwrap();
        assert!(same(&c, &ideal(&r, &["x^2*y^2"])));
        assert_eq!(
            ideal(&r, &["x"]).colon(&ideal(&r, &["0"])).unwrap_err(),
            Error::ZeroColonDivisor
        );
        // unit colon when the divisor already lies in the ideal
        let c = ideal(&r, &["x"]).colon(&ideal(&r, &["x*y"])).unwrap();
        assert!(c.is_unit().unwrap());
    }

    #[test]
    fn colon_by_maximal_ideal() {
        // (xy, x^2, y^3) : (x, y) computed by hand: x and y^2 and xy
        let r = ring(3, &["x", "y"]);
        let a = ideal(&r, &["x*y", "x^2", "y^3"]);
        let c = a.colon(&ideal(&r, &["x", "y"])).unwrap();
        assert!(same(&c, &ideal(&r, &["x", "y^2"])));
    }

    #[test]
    fn elimination() {
        let r = ring(3, &["x", "y"]);
        let e = ideal(&r, &["x - y^2"]).eliminate(&[0]).unwrap();
        assert!(e.is_zero());
        let e = ideal(&r, &["x - y^2", "x"]).eliminate(&[0]).unwrap();
        assert!(same(&e, &ideal(&r, &["y^2"])));
        let e = ideal(&r, &["x - y^2", "x"]).eliminate_names(&["x"]).unwrap();
        assert!(same(&e, &ideal(&r, &["y^2"])));
    }

    #[test]
    fn intersection() {
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(same(&i, &ideal(&r, &["x*y"])));
        let i = ideal(&r, &["x^2", "y"]).intersect(&ideal(&r, &["x"])).unwrap();
        assert!(same(&i, &ideal(&r, &["x^2", "x*y"])));
    }

    #[test]
    fn dimensions() {
        let r = ring(3, &["x", "y"]);
        assert_eq!(ideal(&r, &["x*y"]).krull_dimension().unwrap(), 1);
        let r5 = ring(3, &["x1", "x2", "x3", "x4", "x5"]);
        assert_eq!(Ideal::zero(&r5).krull_dimension().unwrap(), 5);
        assert_eq!(
            ideal(&r, &["x", "x*y - 1"]).krull_dimension(),
            Err(Error::UnitIdeal)
        );
        assert_eq!(ideal(&r, &["x^2", "y^5"]).krull_dimension().unwrap(), 0);
    }

    #[test]
    fn standard_monomial_bases() {
        let r = ring(3, &["x", "y"]);
        let sm = ideal(&r, &["x^2", "y^2"]).standard_monomials().unwrap();
        let shown: Vec<String> = sm.iter().map(|m| r.format_monomial(m)).collect();
        assert_eq!(shown, ["1", "y", "x", "x*y"]);

        let r1 = ring(3, &["x"]);
        assert_eq!(ideal(&r1, &["x^3"]).standard_monomials().unwrap().len(), 3);

        let r23 = ring(3, &["x2", "x3"]);
        let sm = ideal(&r23, &["x2*x3", "x2^3", "x3^3"])
            .standard_monomials()
            .unwrap();
        let shown: Vec<String> = sm.iter().map(|m| r23.format_monomial(m)).collect();
        assert_eq!(shown, ["1", "x3", "x2", "x3^2", "x2^2"]);

        assert!(matches!(
            ideal(&r, &["x^2"]).standard_monomials(),
            Err(Error::NotArtinian(v)) if v == "y"
        ));
    }
}
