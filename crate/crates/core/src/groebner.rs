//! Buchberger's algorithm with the Gebauer–Möller pair criteria, and
//! multivariate division.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyring::{same_ring, Monomial, MonomialOrder, Polynomial, Ring};

pub const DEFAULT_MAX_PAIRS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Maximum number of S-pairs reduced before giving up.
    pub max_pairs: usize,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

/// A reduced, monic Gröbner basis sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// The ring the basis lives in; its order is the basis order.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis.iter().filter_map(|g| g.leading_monomial()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Reduces a polynomial of a compatible ring and returns the remainder
    /// in the caller's ring.
    pub fn normal_form(&self, g: &Polynomial) -> Result<Polynomial> {
        if same_ring(g.ring(), &self.ring) {
            return Ok(reduce(g, &self.basis));
        }
        let moved = g.reorder(&self.ring)?;
        reduce(&moved, &self.basis).reorder(g.ring())
    }

    pub fn contains(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(g)?.is_zero())
    }

    /// Checks the Buchberger criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_polynomial(&self.basis[i], &self.basis[j]);
                if !reduce(&s, &self.basis).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

pub fn buchberger(ring: &Ring, generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ring, generators, order, &BuchbergerOptions::default())
}

pub fn normal_form(g: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(g)
}

pub fn contains(gb: &GroebnerBasis, g: &Polynomial) -> Result<bool> {
    gb.contains(g)
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (Some(lf), Some(lg)) = (f.leading_monomial(), g.leading_monomial()) else {
        return Polynomial::zero(f.ring());
    };
    let k = f.ring().field();
    let l = lf.lcm(lg);
    let cf = k.inv(f.leading_coefficient().unwrap());
    let cg = k.inv(g.leading_coefficient().unwrap());
    let a = f
        .mul_term(&lf.quotient_of(&l), cf)
        .expect("lcm of existing monomials");
    a.add_scaled(g, k.neg(cg), Some(&lg.quotient_of(&l)))
}

/// Full reduction of `g` by `divisors`: no monomial of the result is
/// divisible by a leading monomial of a divisor.
pub fn reduce(g: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let reducers = Reducers::new(divisors.iter());
    reducers.reduce(g, None)
}

/// Multivariate division: returns quotients `q_i` and remainder `r` with
/// `g = sum q_i * d_i + r`.
pub fn divide(g: &Polynomial, divisors: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let reducers = Reducers::new(divisors.iter());
    let mut quotients: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); divisors.len()];
    let r = reducers.reduce(g, Some(&mut quotients));
    let qs = quotients
        .into_iter()
        .map(|t| Polynomial::from_terms(g.ring(), t))
        .collect();
    (qs, r)
}

struct Reducers<'a> {
    polys: Vec<(usize, &'a Polynomial, u64, u32)>,
}

impl<'a> Reducers<'a> {
    fn new(divisors: impl Iterator<Item = &'a Polynomial>) -> Self {
        let polys = divisors
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let lm = d.leading_monomial().unwrap();
                let k = d.ring().field();
                (i, d, lm.support_mask(), k.inv(d.leading_coefficient().unwrap()))
            })
            .collect();
        Reducers { polys }
    }

    fn find(&self, m: &Monomial) -> Option<&(usize, &'a Polynomial, u64, u32)> {
        let mask = m.support_mask();
        self.polys
            .iter()
            .find(|(_, d, dm, _)| dm & !mask == 0 && d.leading_monomial().unwrap().divides(m))
    }

    fn reduce(&self, g: &Polynomial, mut quotients: Option<&mut Vec<Vec<(Monomial, u32)>>>) -> Polynomial {
        let ring = g.ring();
        let k = ring.field();
        let order = ring.order();
        let mut rem: Vec<(Monomial, u32)> = Vec::new();
        let mut work: Vec<(Monomial, u32)> = g.terms().to_vec();
        // `work` holds the unprocessed part, largest term first.
        let mut head = 0;
        while head < work.len() {
            let (m, c) = (&work[head].0, work[head].1);
            match self.find(m) {
                None => {
                    rem.push(work[head].clone());
                    head += 1;
                }
                Some((idx, d, _, lc_inv)) => {
                    let shift = d.leading_monomial().unwrap().quotient_of(m);
                    let factor = k.mul(c, *lc_inv);
                    if let Some(q) = quotients.as_deref_mut() {
                        q[*idx].push((shift.clone(), factor));
                    }
                    let minus = k.neg(factor);
                    // work[head+1..] - factor * shift * tail(d)
                    let tail = &d.terms()[1..];
                    let mut merged = Vec::with_capacity(work.len() - head + tail.len());
                    let mut i = head + 1;
                    let mut shifted = tail.iter().map(|(tm, tc)| {
                        (
                            tm.mul(&shift).expect("monomial overflow in reduction"),
                            k.mul(*tc, minus),
                        )
                    });
                    let mut next = shifted.next();
                    while i < work.len() {
                        let Some((sm, sc)) = next.as_ref() else { break };
                        match order.compare(&work[i].0, sm) {
                            Ordering::Greater => {
                                merged.push(work[i].clone());
                                i += 1;
                            }
                            Ordering::Less => {
                                merged.push((sm.clone(), *sc));
                                next = shifted.next();
                            }
                            Ordering::Equal => {
                                let s = k.add(work[i].1, *sc);
                                if s != 0 {
                                    merged.push((sm.clone(), s));
                                }
                                i += 1;
                                next = shifted.next();
                            }
                        }
                    }
                    merged.extend_from_slice(&work[i..]);
                    if let Some(t) = next {
                        merged.push(t);
                        merged.extend(shifted);
                    }
                    work = merged;
                    head = 0;
                }
            }
        }
        if let Some(q) = quotients {
            for t in q.iter_mut() {
                let p = Polynomial::from_terms(ring, std::mem::take(t));
                *t = p.into_terms();
            }
        }
        Polynomial::from_terms(ring, rem)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ring: Ring,
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn active_polys(&self) -> Vec<Polynomial> {
        self.active_iter().cloned().collect()
    }

    fn active_iter(&self) -> impl Iterator<Item = &Polynomial> {
        self.polys
            .iter()
            .zip(self.active.iter())
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
    }

    fn reduce_by_active(&self, g: &Polynomial) -> Polynomial {
        Reducers::new(self.active_iter()).reduce(g, None)
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: Polynomial) {
        let lm_h = h.leading_monomial().unwrap().clone();
        let hi = self.polys.len();

        let mut candidates: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, lm_h.lcm(&self.lms[g])))
            .collect();
        candidates.reverse();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = candidates.pop() {
            let coprime = lm_h.is_coprime(&self.lms[g1]);
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lm_h.is_coprime(&self.lms[*g]))
            .map(|(g, l)| Pair { i: g, j: hi, lcm: l })
            .collect();

        let lms = &self.lms;
        self.pairs.retain(|pr| {
            !(lm_h.divides(&pr.lcm) && lms[pr.i].lcm(&lm_h) != pr.lcm && lm_h.lcm(&lms[pr.j]) != pr.lcm)
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && lm_h.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(lm_h);
        self.active.push(true);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }

    fn unit(&self) -> GroebnerBasis {
        GroebnerBasis {
            ring: self.ring.clone(),
            basis: vec![Polynomial::one(&self.ring)],
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators` under
/// `order`. Generators may come from any ring compatible with `ring`.
pub fn buchberger_with(
    ring: &Ring,
    generators: &[Polynomial],
    order: MonomialOrder,
    options: &BuchbergerOptions,
) -> Result<GroebnerBasis> {
    let target = if ring.order() == order {
        ring.clone()
    } else {
        ring.with_order(order)
    };
    let mut b = Builder {
        ring: target.clone(),
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in generators {
        let g = g.reorder(&target)?;
        let h = b.reduce_by_active(&g);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(b.unit());
        }
        b.update(h.monic());
    }

    let mut processed = 0usize;
    while let Some(pair) = b.select_pair() {
        processed += 1;
        if processed > options.max_pairs {
            return Err(Error::BudgetExceeded(options.max_pairs));
        }
        let s = s_polynomial(&b.polys[pair.i], &b.polys[pair.j]);
        let h = b.reduce_by_active(&s);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(b.unit());
        }
        b.update(h.monic());
    }

    let minimal = b.active_polys();
    let mut basis: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect();
    basis.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(GroebnerBasis { ring: target, basis })
}
