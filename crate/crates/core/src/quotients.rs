//! The local ring `R = k[x]/I` at the ideal of the variables: regular
//! sequences, socles, Frobenius on `R` and Frobenius closure of parameter
//! ideals.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::linalg::Echelon;
use crate::polyring::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

/// `k[x]/defining`, localized at `(x_1, ..., x_n)`. The defining ideal lies
/// inside the maximal ideal.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    defining: Ideal,
    maximal: Ideal,
}

impl QuotientPresentation {
    pub fn new(defining: Ideal) -> Result<Self> {
        if let Some(g) = defining
            .generators()
            .iter()
            .find(|g| !g.constant_term().is_zero())
        {
            return Err(Error::InvalidInput(format!(
                "relation {g} has a nonzero constant term, so the ring is not local at the origin"
            )));
        }
        let maximal = Ideal::maximal(defining.ring());
        Ok(QuotientPresentation { defining, maximal })
    }

    pub fn polynomial_ring(ring: &Ring) -> Self {
        QuotientPresentation::new(Ideal::zero(ring)).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        self.defining.ring()
    }

    pub fn characteristic(&self) -> u32 {
        self.ring().characteristic()
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    pub fn maximal(&self) -> &Ideal {
        &self.maximal
    }

    pub fn dimension(&self) -> Result<usize> {
        self.defining.krull_dimension()
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, g: &Polynomial) -> Result<Polynomial> {
        self.defining.normal_form(g)
    }

    pub fn is_zero(&self, g: &Polynomial) -> Result<bool> {
        self.defining.contains(g)
    }

    /// `ideal + defining`, the preimage of the extended ideal.
    pub fn extend(&self, ideal: &Ideal) -> Result<Ideal> {
        ideal.sum(&self.defining)
    }

    /// `g^(p^e)` reduced modulo the defining ideal.
    pub fn frobenius(&self, g: &Polynomial, e: u32) -> Result<Polynomial> {
        self.reduce(&self.reduce(g)?.frobenius_pow(e)?)
    }

    /// `R / ideal`, presented in the same ambient ring.
    pub fn quotient_by(&self, ideal: &Ideal) -> Result<QuotientPresentation> {
        QuotientPresentation::new(self.extend(ideal)?)
    }

    /// Removes variables that vanish in the quotient: `k[x]/A` with
    /// `x_j ∈ A` is `k[other vars]/(A ∩ k[other vars])`.
    pub fn drop_vanishing_variables(&self) -> Result<CompactPresentation> {
        let ring = self.ring();
        let n = ring.nvars();
        let mut drop = Vec::new();
        for i in 0..n {
            if self.defining.contains(&Polynomial::var(ring, i))? {
                drop.push(i);
            }
        }
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        if drop.is_empty() || keep.is_empty() {
            return Ok(CompactPresentation {
                quotient: self.clone(),
                keep: (0..n).collect(),
                kill_mask: 0,
            });
        }
        let names: Vec<String> = keep.iter().map(|&i| ring.vars()[i].clone()).collect();
        let small = PolyRing::new(ring.characteristic() as u64, &names, ring.order())?;
        let elim = self.defining.eliminate(&drop)?;
        let defining = elim.restrict(&small, &keep)?;
        let kill_mask = drop.iter().fold(0u64, |m, &i| m | (1 << i));
        Ok(CompactPresentation {
            quotient: QuotientPresentation::new(defining)?,
            keep,
            kill_mask,
        })
    }
}

/// A presentation with vanishing variables removed, plus the map from the
/// original ambient ring.
#[derive(Clone, Debug)]
pub struct CompactPresentation {
    pub quotient: QuotientPresentation,
    pub keep: Vec<usize>,
    kill_mask: u64,
}

impl CompactPresentation {
    pub fn map(&self, g: &Polynomial) -> Polynomial {
        let n = g.ring().nvars();
        let mut map = vec![0; n];
        for (new, &old) in self.keep.iter().enumerate() {
            map[old] = new;
        }
        g.kill_vars(self.kill_mask).map_into(self.quotient.ring(), &map)
    }
}

/// A basis of `((J + I) : m) / (J + I)`.
#[derive(Clone, Debug)]
pub struct SocleBasis {
    pub parameter: Ideal,
    pub basis: Vec<Polynomial>,
    pub dimension: usize,
}

pub fn is_nzd(r: &QuotientPresentation, g: &Polynomial) -> Result<bool> {
    if r.is_zero(g)? {
        return Err(Error::ZeroElement);
    }
    is_nzd_modulo(r.defining(), g)
}

fn is_nzd_modulo(k: &Ideal, g: &Polynomial) -> Result<bool> {
    if k.contains(g)? {
        return Ok(false);
    }
    let colon = k.colon_element(g)?;
    k.contains_ideal(&colon)
}

/// Each element is a nonzerodivisor modulo the previous ones and the final
/// quotient is nonzero.
pub fn is_regular_sequence(r: &QuotientPresentation, xs: &[Polynomial]) -> Result<bool> {
    let mut k = r.defining().clone();
    for x in xs {
        if !same_ring(x.ring(), r.ring()) {
            return Err(Error::RingMismatch);
        }
        if !is_nzd_modulo(&k, x)? {
            return Ok(false);
        }
        k = k.add_generators(std::slice::from_ref(x))?;
    }
    Ok(!k.is_unit()?)
}

/// Socle of `R/J`, by linear algebra on the standard monomials of `J + I`:
/// the common kernel of multiplication by every variable.
pub fn socle(r: &QuotientPresentation, j: &Ideal) -> Result<SocleBasis> {
    let k = r.extend(j)?;
    let gb = k.groebner()?;
    let mut std = k.standard_monomials()?;
    std.reverse();
    let ring = r.ring();
    let field = ring.field();
    let index: HashMap<&Monomial, usize> = std.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // Rows: one per (variable, target standard monomial); columns: the
    // unknown coefficients of the socle element.
    let n = std.len();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for v in 0..ring.nvars() {
        let mut block = vec![vec![0u32; n]; n];
        for (col, m) in std.iter().enumerate() {
            let prod = Polynomial::monomial(ring, m.mul(&Monomial::var(ring.nvars(), v))?, 1);
            let nf = gb.normal_form(&prod)?;
            for (tm, c) in nf.terms() {
                block[index[tm]][col] = *c;
            }
        }
        rows.extend(block);
    }
    let mut ech = Echelon::new(field, n);
    for row in rows {
        ech.insert(row);
    }
    let basis: Vec<Polynomial> = ech
        .kernel()
        .into_iter()
        .map(|v| {
            let terms = v
                .into_iter()
                .zip(std.iter())
                .filter(|(c, _)| *c != 0)
                .map(|(c, m)| (m.clone(), c))
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect();
    Ok(SocleBasis {
        parameter: j.clone(),
        dimension: basis.len(),
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureVerdict {
    /// Decisive: the witness lies in the Frobenius closure but not in `J`.
    NotFrobeniusClosed,
    /// No witness for any exponent up to the bound. Evidence only.
    ClosedUpTo(u32),
}

#[derive(Clone, Debug)]
pub struct ClosureWitness {
    /// Position of the candidate in the enumeration (basis vectors first).
    pub candidate_index: usize,
    pub element: Polynomial,
    pub e: u32,
    /// Membership re-checked for every larger exponent up to the bound.
    pub monotone_verified: bool,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub verdict: ClosureVerdict,
    pub e_max: u32,
    pub socle_dimension: usize,
    pub socle_basis: Vec<Polynomial>,
    pub candidates_tested: usize,
    /// Only basis vectors were tested because `p^dimension` exceeded the
    /// enumeration bound.
    pub partial: bool,
    pub regular_sequence_verified: bool,
    pub witness: Option<ClosureWitness>,
}

/// Above this many socle vectors only basis vectors are tested.
pub const COMBINATION_BOUND: u64 = 243;

/// Tests whether `J` is Frobenius closed in `R` by checking, for socle
/// elements `s` of `R/J` and `e = 1..=e_max`, whether
/// `s^(p^e) ∈ J^[p^e] + I`. A hit is decisive; no hit is bounded evidence.
pub fn frobenius_closure_test(r: &QuotientPresentation, j: &Ideal, e_max: u32) -> Result<ClosureReport> {
    let soc = socle(r, j)?;
    let regular = is_regular_sequence(r, j.generators())?;
    let p = r.characteristic() as u64;
    let ring = r.ring();
    let t = soc.dimension;
    let total = p.checked_pow(t as u32).unwrap_or(u64::MAX);
    let partial = total > COMBINATION_BOUND;
    let mut candidates: Vec<Polynomial> = soc.basis.clone();
    if !partial {
        for code in 1..total {
            let mut digits = Vec::with_capacity(t);
            let mut c = code;
            for _ in 0..t {
                digits.push((c % p) as u32);
                c /= p;
            }
            if digits.iter().filter(|&&d| d != 0).count() == 1 && digits.contains(&1) {
                continue; // a basis vector, already listed
            }
            let mut s = Polynomial::zero(ring);
            for (d, b) in digits.iter().zip(soc.basis.iter()) {
                if *d != 0 {
                    s = s.add(&b.scale(*d))?;
                }
            }
            candidates.push(s);
        }
    }
    let mut targets: Vec<Option<Ideal>> = vec![None; e_max as usize + 1];
    let mut target = |e: u32| -> Result<Ideal> {
        if targets[e as usize].is_none() {
            targets[e as usize] = Some(r.extend(&j.bracket_power(e)?)?);
        }
        Ok(targets[e as usize].clone().unwrap())
    };

    let mut witness = None;
    'outer: for (idx, s) in candidates.iter().enumerate() {
        for e in 1..=e_max {
            if target(e)?.contains(&s.frobenius_pow(e)?)? {
                let mut monotone = true;
                for e2 in e + 1..=e_max {
                    monotone &= target(e2)?.contains(&s.frobenius_pow(e2)?)?;
                }
                witness = Some(ClosureWitness {
                    candidate_index: idx,
                    element: s.clone(),
                    e,
                    monotone_verified: monotone,
                });
                break 'outer;
            }
        }
    }

    Ok(ClosureReport {
        verdict: if witness.is_some() {
            ClosureVerdict::NotFrobeniusClosed
        } else {
            ClosureVerdict::ClosedUpTo(e_max)
        },
        e_max,
        socle_dimension: t,
        socle_basis: soc.basis,
        candidates_tested: candidates.len(),
        partial,
        regular_sequence_verified: regular,
        witness,
    })
}

/// Membership in an Artinian ideal by dense linear algebra, independent of
/// Gröbner bases. The generators must include a pure power of every
/// variable; with `x_i^{a_i}` among them every monomial of degree
/// `N = Σ(a_i − 1) + 1` lies in `A`, so `A/m^N` is spanned by the
/// truncations of `monomial · generator` and `g ∈ A` iff its truncation
/// lies in that span.
pub fn artinian_membership_oracle(a: &Ideal, g: &Polynomial) -> Result<bool> {
    let oracle = TruncatedQuotient::new(a)?;
    Ok(oracle.contains(g))
}

/// `dim_k k[x]/A` computed by the same truncated linear algebra.
pub fn artinian_dimension_oracle(a: &Ideal) -> Result<usize> {
    let oracle = TruncatedQuotient::new(a)?;
    Ok(oracle.columns.len() - oracle.span.rank())
}

struct TruncatedQuotient {
    columns: HashMap<Monomial, usize>,
    span: Echelon,
}

impl TruncatedQuotient {
    fn new(a: &Ideal) -> Result<Self> {
        let ring = a.ring();
        let n = ring.nvars();
        let mut bounds = vec![None::<u16>; n];
        for g in a.generators() {
            if let [(m, _)] = g.terms() {
                if let Some(i) = m.pure_power_var() {
                    let e = m.exponents()[i];
                    bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
                }
            }
        }
        let mut cap = 1u32;
        for (i, b) in bounds.iter().enumerate() {
            match b {
                Some(e) => cap += *e as u32 - 1,
                None => return Err(Error::NotArtinian(ring.vars()[i].clone())),
            }
        }
        // Monomials of degree < cap, largest first under grevlex-like order.
        let mut monos = Vec::new();
        enumerate_below(n, cap, &mut vec![0; n], 0, 0, &mut monos);
        let order = MonomialOrder::Grevlex;
        monos.sort_by(|x, y| order.compare(y, x));
        let columns: HashMap<Monomial, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Echelon::new(ring.field(), monos.len());
        for g in a.generators() {
            for m in &monos {
                let mut row = vec![0u32; monos.len()];
                let mut any = false;
                for (tm, c) in g.terms() {
                    let prod = tm.mul(m)?;
                    if let Some(&col) = columns.get(&prod) {
                        row[col] = *c;
                        any = true;
                    }
                }
                if any {
                    span.insert(row);
                }
            }
        }
        Ok(TruncatedQuotient { columns, span })
    }

    fn contains(&self, g: &Polynomial) -> bool {
        let mut v = vec![0u32; self.columns.len()];
        for (m, c) in g.terms() {
            if let Some(&col) = self.columns.get(m) {
                v[col] = *c;
            }
        }
        self.span.contains(&v)
    }
}

fn enumerate_below(n: usize, cap: u32, exps: &mut Vec<u16>, i: usize, deg: u32, out: &mut Vec<Monomial>) {
    if i == n {
        out.push(Monomial::from_exponents(exps));
        return;
    }
    let mut e = 0;
    while deg + e < cap {
        exps[i] = e as u16;
        enumerate_below(n, cap, exps, i + 1, deg + e, out);
        e += 1;
    }
    exps[i] = 0;
}
