//! F-singularities: Fedder's F-purity test and the pseudocanonical cover
//! `S(f) = R + It ⊂ R[T]/(T² − f)` built from a canonical ideal `I`.
//!
//! Elements of `S(f)` are pairs `(a, b)` standing for `a + bt` with
//! `a ∈ R` and `b ∈ I`; `t² = f`. For odd `p` and `q = p^e`,
//! `(a + bt)^q = a^q + b^q f^((q−1)/2) t`, which turns Frobenius closure of
//! a parameter ideal of the cover into a membership question in `R`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::linalg::Echelon;
use crate::polyring::{same_ring, Monomial, Polynomial};
use crate::quotients::{
    frobenius_closure_test, is_nzd, is_regular_sequence, socle, ClosureReport, ClosureVerdict,
    QuotientPresentation, SocleBasis,
};

static NEXT_CONTEXT: AtomicU64 = AtomicU64::new(1);

/// The data `(R, I, f)` defining a cover.
#[derive(Clone, Debug)]
pub struct CoverContext {
    id: u64,
    quotient: QuotientPresentation,
    canonical: Ideal,
    canonical_ext: Ideal,
    twist: Polynomial,
}

/// `a + bt`, both components reduced modulo the defining ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverElement {
    context: u64,
    a: Polynomial,
    b: Polynomial,
}

impl CoverElement {
    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }
}

impl CoverContext {
    pub fn new(quotient: QuotientPresentation, canonical: Ideal, twist: Polynomial) -> Result<Self> {
        if !same_ring(quotient.ring(), canonical.ring()) || !same_ring(quotient.ring(), twist.ring()) {
            return Err(Error::RingMismatch);
        }
        if let Some(g) = canonical
            .generators()
            .iter()
            .find(|g| !g.constant_term().is_zero())
        {
            return Err(Error::InvalidInput(format!(
                "canonical ideal generator {g} is not in the maximal ideal"
            )));
        }
        let canonical_ext = quotient.extend(&canonical)?;
        let mut nonzero = false;
        for g in canonical.generators() {
            nonzero |= !quotient.is_zero(g)?;
        }
        if !nonzero {
            return Err(Error::InvalidInput("canonical ideal is zero in R".into()));
        }
        let twist = quotient.reduce(&twist)?;
        Ok(CoverContext {
            id: NEXT_CONTEXT.fetch_add(1, Ordering::Relaxed),
            quotient,
            canonical,
            canonical_ext,
            twist,
        })
    }

    pub fn quotient(&self) -> &QuotientPresentation {
        &self.quotient
    }

    pub fn canonical(&self) -> &Ideal {
        &self.canonical
    }

    pub fn twist(&self) -> &Polynomial {
        &self.twist
    }

    pub fn characteristic(&self) -> u32 {
        self.quotient.characteristic()
    }

    pub fn element(&self, a: &Polynomial, b: &Polynomial) -> Result<CoverElement> {
        if !self.canonical_ext.contains(b)? {
            return Err(Error::NotInIdeal(b.to_string()));
        }
        Ok(CoverElement {
            context: self.id,
            a: self.quotient.reduce(a)?,
            b: self.quotient.reduce(b)?,
        })
    }

    pub fn one(&self) -> CoverElement {
        let ring = self.quotient.ring();
        CoverElement {
            context: self.id,
            a: Polynomial::one(ring),
            b: Polynomial::zero(ring),
        }
    }

    pub fn zero(&self) -> CoverElement {
        let ring = self.quotient.ring();
        CoverElement {
            context: self.id,
            a: Polynomial::zero(ring),
            b: Polynomial::zero(ring),
        }
    }

    fn check(&self, u: &CoverElement) -> Result<()> {
        if u.context == self.id {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn make(&self, a: Polynomial, b: Polynomial) -> Result<CoverElement> {
        Ok(CoverElement {
            context: self.id,
            a: self.quotient.reduce(&a)?,
            b: self.quotient.reduce(&b)?,
        })
    }
}

pub fn cover_add(ctx: &CoverContext, u: &CoverElement, v: &CoverElement) -> Result<CoverElement> {
    ctx.check(u)?;
    ctx.check(v)?;
    ctx.make(u.a.add(&v.a)?, u.b.add(&v.b)?)
}

/// `(a + bt)(c + dt) = (ac + bdf) + (ad + bc)t`.
pub fn cover_mul(ctx: &CoverContext, u: &CoverElement, v: &CoverElement) -> Result<CoverElement> {
    ctx.check(u)?;
    ctx.check(v)?;
    let a = u.a.mul(&v.a)?.add(&u.b.mul(&v.b)?.mul(&ctx.twist)?)?;
    let b = u.a.mul(&v.b)?.add(&u.b.mul(&v.a)?)?;
    ctx.make(a, b)
}

/// `a + bt` is a unit iff `a ∉ m`: then `b²f − a²` is a unit because
/// `b ∈ I ⊆ m`.
pub fn cover_is_unit(ctx: &CoverContext, u: &CoverElement) -> Result<bool> {
    ctx.check(u)?;
    Ok(!u.a.constant_term().is_zero())
}

/// `(a + bt)^q = a^q + b^q f^((q−1)/2) t` for `q = p^e`, p odd.
pub fn cover_frobenius(ctx: &CoverContext, u: &CoverElement, e: u32) -> Result<CoverElement> {
    ctx.check(u)?;
    let p = ctx.characteristic();
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if e == 0 {
        return Ok(u.clone());
    }
    let q = (p as u64).checked_pow(e).ok_or(Error::ExponentOverflow)?;
    let a = ctx.quotient.frobenius(&u.a, e)?;
    let bq = ctx.quotient.frobenius(&u.b, e)?;
    let twist_pow = ctx.quotient.reduce(&ctx.twist.pow((q - 1) / 2)?)?;
    ctx.make(a, bq.mul(&twist_pow)?)
}

/// Checks that a regular sequence on `R` stays regular on `S(f)`. As an
/// `R`-module `S(f) = R ⊕ It`, so this asks for regularity on `R` and on
/// the module `I`.
pub fn cover_regular_sequence(ctx: &CoverContext, xs: &[Polynomial]) -> Result<bool> {
    if !is_regular_sequence(&ctx.quotient, xs)? {
        return Ok(false);
    }
    let ring = ctx.quotient.ring();
    let defining = ctx.quotient.defining();
    let module = &ctx.canonical_ext;
    for i in 0..xs.len() {
        let prefix = Ideal::new(ring, xs[..i].to_vec())?;
        let n = prefix.product(&ctx.canonical)?.sum(defining)?;
        let colon = n.colon_element(&xs[i])?;
        let killed = colon.intersect(module)?;
        if !n.contains_ideal(&killed)? {
            return Ok(false);
        }
    }
    let all = Ideal::new(ring, xs.to_vec())?;
    let last = all.product(&ctx.canonical)?.sum(defining)?;
    Ok(!last.contains_ideal(module)?)
}

/// Output of [`socle_lift`].
#[derive(Clone, Debug)]
pub struct SocleLift {
    pub x: Polynomial,
    pub tail: Vec<Polynomial>,
    /// Socle generator of `R/(I + (tail))`.
    pub z: Polynomial,
    /// `x·z`, a socle generator of `I/JI`.
    pub u: Polynomial,
    pub socle_dimension: usize,
}

/// Lifts the socle generator `z` of `R/(I + (x_2..x_d))` to the socle
/// generator `u = x·z` of `I/JI`, `J = (x, x_2, ..., x_d)`, and checks
/// that `m·u ⊆ JI` and `u ∉ JI`.
pub fn socle_lift(ctx: &CoverContext, x: &Polynomial, tail: &[Polynomial]) -> Result<SocleLift> {
    let r = &ctx.quotient;
    let ring = r.ring();
    if !ctx.canonical_ext.contains(x)? {
        return Err(Error::NotInIdeal(x.to_string()));
    }
    match is_nzd(r, x) {
        Ok(true) => {}
        Ok(false) | Err(Error::ZeroElement) => return Err(Error::NotNzd(x.to_string())),
        Err(e) => return Err(e),
    }
    let r_mod_i = r.quotient_by(&ctx.canonical)?;
    if !is_regular_sequence(&r_mod_i, tail)? {
        return Err(Error::NotRegularSequence("tail on R/I".into()));
    }
    let r_mod_x = r.quotient_by(&Ideal::new(ring, vec![x.clone()])?)?;
    if !is_regular_sequence(&r_mod_x, tail)? {
        return Err(Error::NotRegularSequence("tail on R/xR".into()));
    }
    let soc = socle(&r_mod_i, &Ideal::new(ring, tail.to_vec())?)?;
    if soc.dimension != 1 {
        return Err(Error::TypeNotOne(soc.dimension));
    }
    let z = soc.basis[0].clone();
    let u = r.reduce(&x.mul(&z)?)?;

    let mut sop = vec![x.clone()];
    sop.extend(tail.iter().cloned());
    let j = Ideal::new(ring, sop)?;
    let ji = r.extend(&j.product(&ctx.canonical)?)?;
    if ji.contains(&u)? {
        return Err(Error::InjectivityFailure(format!("u = {u} lies in JI")));
    }
    for v in 0..ring.nvars() {
        if !ji.contains(&Polynomial::var(ring, v).mul(&u)?)? {
            return Err(Error::InjectivityFailure(format!(
                "{}·u is not in JI",
                ring.vars()[v]
            )));
        }
    }
    Ok(SocleLift {
        x: x.clone(),
        tail: tail.to_vec(),
        z,
        u,
        socle_dimension: soc.dimension,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionVerdict {
    /// `u^q f^((q−1)/2) ∈ J^[q] I` at this exponent: the cover is not
    /// F-injective.
    DecisiveNotFInjective { e: u32 },
    /// No membership for `e = 1..=e_max`. Bounded evidence only.
    NoFailureUpTo { e_max: u32 },
    /// Characteristic 2: the cover is never F-injective.
    P2Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SubCheck {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        SubCheck {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipStep {
    pub e: u32,
    pub q: u64,
    pub member: bool,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub verdict: CriterionVerdict,
    pub assumptions: Vec<String>,
    pub checks: Vec<SubCheck>,
    pub lift: Option<SocleLift>,
    pub steps: Vec<MembershipStep>,
}

impl CriterionReport {
    pub fn witness(&self) -> Option<u32> {
        match self.verdict {
            CriterionVerdict::DecisiveNotFInjective { e } => Some(e),
            _ => None,
        }
    }
}

pub const ASSUME_CM: &str = "R is Cohen-Macaulay (user assertion, not verified)";
pub const ASSUME_CANONICAL: &str =
    "I is isomorphic to the canonical module of R (user assertion; type-1 and nonzerodivisor conditions checked)";
pub const ASSUME_BOUNDED: &str =
    "verdicts ending in _UP_TO are bounded evidence: only exponents e <= e_max were searched";

fn split_sop(sop: &[Polynomial]) -> Result<(&Polynomial, &[Polynomial])> {
    sop.split_first()
        .ok_or_else(|| Error::InvalidInput("the system of parameters is empty".into()))
}

/// For `q = p^e`, `e = 1..=e_max`, tests `u^q f^((q−1)/2) ∈ J^[q]·I + 𝓘`,
/// where `u` is the socle generator of `I/JI` obtained from
/// [`socle_lift`]. Membership at any `q` shows the cover is not
/// F-injective.
pub fn cover_injectivity_criterion(
    ctx: &CoverContext,
    sop: &[Polynomial],
    e_max: u32,
) -> Result<CriterionReport> {
    let p = ctx.characteristic();
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let r = &ctx.quotient;
    let ring = r.ring();
    let (x, tail) = split_sop(sop)?;
    let mut checks = Vec::new();
    if !is_regular_sequence(r, sop)? {
        return Err(Error::NotRegularSequence("sop on R".into()));
    }
    checks.push(SubCheck::new(
        "sop_regular_on_R",
        true,
        "verified by colon ideals",
    ));
    let lift = socle_lift(ctx, x, tail)?;
    checks.push(SubCheck::new(
        "socle_lift",
        true,
        format!("z = {}, u = x*z = {}; m*u in JI and u not in JI", lift.z, lift.u),
    ));

    let j = Ideal::new(ring, sop.to_vec())?;
    let mut steps = Vec::new();
    let mut witness = None;
    for e in 1..=e_max {
        let q = (p as u64).checked_pow(e).ok_or(Error::ExponentOverflow)?;
        let target = r.extend(&j.bracket_power(e)?.product(&ctx.canonical)?)?;
        let uq = r.frobenius(&lift.u, e)?;
        let fk = r.reduce(&ctx.twist.pow((q - 1) / 2)?)?;
        let member = target.contains(&uq.mul(&fk)?)?;
        steps.push(MembershipStep { e, q, member });
        if member && witness.is_none() {
            witness = Some(e);
        }
    }
    if let Some(e) = witness {
        let monotone = steps.iter().filter(|s| s.e >= e).all(|s| s.member);
        checks.push(SubCheck::new(
            "witness_monotone",
            monotone,
            format!("membership re-checked for e = {e}..={e_max}"),
        ));
    }
    Ok(CriterionReport {
        verdict: match witness {
            Some(e) => CriterionVerdict::DecisiveNotFInjective { e },
            None => CriterionVerdict::NoFailureUpTo { e_max },
        },
        assumptions: vec![ASSUME_CM.into(), ASSUME_CANONICAL.into(), ASSUME_BOUNDED.into()],
        checks,
        lift: Some(lift),
        steps,
    })
}

/// In characteristic 2 the socle generator `u` kills `I/JI`, so `u ∈ J`
/// and `(ut)² = u²f ∈ J^[2]`: the cover is never F-injective. Verifies the
/// two memberships that argument rests on.
pub fn p2_degeneracy_check(ctx: &CoverContext, sop: &[Polynomial]) -> Result<CriterionReport> {
    let p = ctx.characteristic();
    if p != 2 {
        return Err(Error::OddCharacteristic(p));
    }
    let r = &ctx.quotient;
    let ring = r.ring();
    let (x, tail) = split_sop(sop)?;
    let lift = socle_lift(ctx, x, tail)?;
    let u = &lift.u;
    let j = Ideal::new(ring, sop.to_vec())?;
    let ji = r.extend(&j.product(&ctx.canonical)?)?;
    for g in ctx.canonical.generators() {
        if !ji.contains(&u.mul(g)?)? {
            return Err(Error::InputAssumptionViolation(format!(
                "u*{g} is not in JI, so u does not annihilate I/JI"
            )));
        }
    }
    let jr = r.extend(&j)?;
    if !jr.contains(u)? {
        return Err(Error::InputAssumptionViolation(
            "u is not in J although it annihilates I/JI; I/JI is not faithful over R/J".into(),
        ));
    }
    let j2 = r.extend(&j.bracket_power(1)?)?;
    let square = r.reduce(&u.mul(u)?.mul(&ctx.twist)?)?;
    let squared_in = j2.contains(&square)?;
    let checks = vec![
        SubCheck::new("u_annihilates_I_mod_JI", true, "u*I in JI"),
        SubCheck::new("u_in_J", true, "u in J"),
        SubCheck::new("u2f_in_J2", squared_in, "(ut)^2 = u^2*f in J^[2]"),
    ];
    Ok(CriterionReport {
        verdict: CriterionVerdict::P2Degenerate,
        assumptions: vec![ASSUME_CM.into(), ASSUME_CANONICAL.into()],
        checks,
        lift: Some(lift),
        steps: Vec::new(),
    })
}

#[derive(Clone, Debug)]
pub struct FedderReport {
    pub f_pure: bool,
    /// A generator of `(𝓘^[p] : 𝓘)` outside `m^[p]`.
    pub witness: Option<Polynomial>,
    pub colon_generators: usize,
}

/// Fedder's criterion: `k[x]/𝓘` is F-pure at the origin iff
/// `(𝓘^[p] : 𝓘) ⊄ m^[p]`.
pub fn fedder_test(r: &QuotientPresentation) -> Result<FedderReport> {
    let ring = r.ring();
    let defining = r.defining();
    if defining.is_zero() {
        return Ok(FedderReport {
            f_pure: true,
            witness: Some(Polynomial::one(ring)),
            colon_generators: 1,
        });
    }
    let colon = defining.bracket_power(1)?.colon(defining)?;
    let m_p = r.maximal().bracket_power(1)?;
    let mut witness = None;
    for g in colon.generators() {
        if !m_p.contains(g)? {
            witness = Some(g.clone());
            break;
        }
    }
    Ok(FedderReport {
        f_pure: witness.is_some(),
        witness,
        colon_generators: colon.generators().len(),
    })
}

pub fn fedder_f_pure(r: &QuotientPresentation) -> Result<bool> {
    Ok(fedder_test(r)?.f_pure)
}

/// A k-basis of `S/JS = R/J ⊕ (I/JI)t` with coordinate maps.
struct CoverQuotientSpace<'a> {
    ctx: &'a CoverContext,
    rj: Ideal,
    ji: Ideal,
    std: Vec<Monomial>,
    std_index: HashMap<Monomial, usize>,
    i_columns: HashMap<Monomial, usize>,
    i_basis: Echelon,
    // (pivot column, polynomial) for each basis vector of I/JI
    i_vectors: Vec<(usize, Polynomial)>,
}

impl<'a> CoverQuotientSpace<'a> {
    fn new(ctx: &'a CoverContext, j: &Ideal) -> Result<Self> {
        let r = &ctx.quotient;
        let ring = r.ring();
        let rj = r.extend(j)?;
        let mut std = rj.standard_monomials()?;
        std.reverse();
        let std_index = std.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let ji = r.extend(&j.product(&ctx.canonical)?)?;

        // I/JI is spanned by standard monomials of R/J times generators of I.
        let mut spanning = Vec::new();
        for s in &std {
            for g in ctx.canonical.generators() {
                spanning.push(ji.normal_form(&g.mul_term(s, 1)?)?);
            }
        }
        let mut monos: Vec<Monomial> = spanning
            .iter()
            .flat_map(|p| p.terms().iter().map(|t| t.0.clone()))
            .collect();
        let order = ring.order();
        monos.sort_by(|a, b| order.compare(b, a));
        monos.dedup();
        let i_columns: HashMap<Monomial, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut i_basis = Echelon::new(ring.field(), monos.len());
        for p in &spanning {
            i_basis.insert(dense(p, &i_columns)?);
        }
        let pivots = i_basis.pivots();
        let i_vectors = i_basis
            .basis()
            .into_iter()
            .zip(pivots)
            .map(|(row, pivot)| {
                let terms = row
                    .iter()
                    .zip(monos.iter())
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, m)| (m.clone(), *c))
                    .collect();
                (pivot, Polynomial::from_terms(ring, terms))
            })
            .collect();
        Ok(CoverQuotientSpace {
            ctx,
            rj,
            ji,
            std,
            std_index,
            i_columns,
            i_basis,
            i_vectors,
        })
    }

    fn dim_r(&self) -> usize {
        self.std.len()
    }

    fn dim(&self) -> usize {
        self.std.len() + self.i_vectors.len()
    }

    fn r_coords(&self, a: &Polynomial) -> Result<Vec<u32>> {
        let nf = self.rj.normal_form(a)?;
        let mut v = vec![0u32; self.std.len()];
        for (m, c) in nf.terms() {
            v[self.std_index[m]] = *c;
        }
        Ok(v)
    }

    fn i_coords(&self, b: &Polynomial) -> Result<Vec<u32>> {
        let nf = self.ji.normal_form(b)?;
        let v = dense(&nf, &self.i_columns)?;
        if !self.i_basis.contains(&v) {
            return Err(Error::NotInIdeal(b.to_string()));
        }
        Ok(self.i_vectors.iter().map(|(pivot, _)| v[*pivot]).collect())
    }

    fn coords(&self, a: &Polynomial, b: &Polynomial) -> Result<Vec<u32>> {
        let mut v = self.r_coords(a)?;
        v.extend(self.i_coords(b)?);
        Ok(v)
    }

    /// Basis vector `k` as `(a, b)`.
    fn basis_element(&self, k: usize) -> (Polynomial, Polynomial) {
        let ring = self.ctx.quotient.ring();
        if k < self.std.len() {
            (
                Polynomial::monomial(ring, self.std[k].clone(), 1),
                Polynomial::zero(ring),
            )
        } else {
            (
                Polynomial::zero(ring),
                self.i_vectors[k - self.std.len()].1.clone(),
            )
        }
    }

    fn element(&self, v: &[u32]) -> Result<CoverElement> {
        let ring = self.ctx.quotient.ring();
        let mut a = Polynomial::zero(ring);
        let mut b = Polynomial::zero(ring);
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                let (ea, eb) = self.basis_element(k);
                a = a.add(&ea.scale(c))?;
                b = b.add(&eb.scale(c))?;
            }
        }
        self.ctx.element(&a, &b)
    }
}

fn dense(p: &Polynomial, columns: &HashMap<Monomial, usize>) -> Result<Vec<u32>> {
    let mut v = vec![0u32; columns.len()];
    for (m, c) in p.terms() {
        let col = columns.get(m).ok_or_else(|| Error::NotInIdeal(p.to_string()))?;
        v[*col] = *c;
    }
    Ok(v)
}

/// Socle of `S/JS` for the cover, computed by linear algebra on
/// `R/J ⊕ (I/JI)t` (the maximal ideal of `S` is `m + It`).
#[derive(Clone, Debug)]
pub struct CoverSocle {
    pub dimension: usize,
    pub basis: Vec<CoverElement>,
    pub space_dimension: usize,
    /// Whether `(0, u)` for the supplied `u` spans the socle.
    pub spanned_by_ut: Option<bool>,
}

pub fn cover_socle(ctx: &CoverContext, sop: &[Polynomial], u: Option<&Polynomial>) -> Result<CoverSocle> {
    let ring = ctx.quotient.ring();
    let j = Ideal::new(ring, sop.to_vec())?;
    let space = CoverQuotientSpace::new(ctx, &j)?;
    let n = space.dim();
    let dr = space.dim_r();
    let mut ech = Echelon::new(ring.field(), n);
    // one block of rows per generator of the maximal ideal m + It
    let mut images: Vec<Vec<Vec<u32>>> = Vec::new();
    for k in 0..n {
        let (a, b) = space.basis_element(k);
        let mut col_images = Vec::new();
        for v in 0..ring.nvars() {
            let x = Polynomial::var(ring, v);
            col_images.push(space.coords(&x.mul(&a)?, &x.mul(&b)?)?);
        }
        for g in ctx.canonical.generators() {
            // g t · (a + b t) = g b f + g a t
            let ra = g.mul(&b)?.mul(&ctx.twist)?;
            let rb = g.mul(&a)?;
            col_images.push(space.coords(&ra, &rb)?);
        }
        images.push(col_images);
    }
    let ops = images.first().map_or(0, |c| c.len());
    for op in 0..ops {
        for row in 0..n {
            ech.insert(images.iter().map(|col| col[op][row]).collect());
        }
    }
    let kernel = ech.kernel();
    let basis = kernel
        .iter()
        .map(|v| space.element(v))
        .collect::<Result<Vec<_>>>()?;
    let spanned_by_ut = match u {
        None => None,
        Some(u) => {
            let mut v = vec![0u32; dr];
            v.extend(space.i_coords(u)?);
            let mut span = Echelon::new(ring.field(), n);
            for k in &kernel {
                span.insert(k.clone());
            }
            Some(kernel.len() == 1 && v.iter().any(|&c| c != 0) && span.contains(&v))
        }
    };
    Ok(CoverSocle {
        dimension: kernel.len(),
        basis,
        space_dimension: n,
        spanned_by_ut,
    })
}

/// Socle of the module `I/JI`, by linear algebra. Its dimension is the
/// type of `R/J` when `I` is a canonical ideal, i.e. 1.
pub fn canonical_socle(ctx: &CoverContext, sop: &[Polynomial]) -> Result<SocleBasis> {
    let ring = ctx.quotient.ring();
    let j = Ideal::new(ring, sop.to_vec())?;
    let space = CoverQuotientSpace::new(ctx, &j)?;
    let dr = space.dim_r();
    let n = space.i_vectors.len();
    let mut ech = Echelon::new(ring.field(), n);
    let mut blocks: Vec<Vec<Vec<u32>>> = Vec::new();
    for (_, b) in &space.i_vectors {
        let mut imgs = Vec::new();
        for v in 0..ring.nvars() {
            imgs.push(space.i_coords(&Polynomial::var(ring, v).mul(b)?)?);
        }
        blocks.push(imgs);
    }
    for v in 0..ring.nvars() {
        for row in 0..n {
            ech.insert(blocks.iter().map(|col| col[v][row]).collect());
        }
    }
    let basis = ech
        .kernel()
        .into_iter()
        .map(|coeffs| {
            let mut full = vec![0u32; dr];
            full.extend(coeffs);
            space.element(&full).map(|e| e.b)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SocleBasis {
        parameter: j,
        dimension: basis.len(),
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// All hypotheses verified and no failure found: R is FH-finite and its
    /// top local cohomology is antinilpotent. Implied by the theorem, never
    /// computed.
    FhFinite,
    Withheld {
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub characteristic: u32,
    pub dimension: usize,
    pub hypotheses: Vec<SubCheck>,
    pub fedder_r: FedderReport,
    pub fedder_r_mod_i: FedderReport,
    pub criterion: Option<CriterionReport>,
    pub closure: Option<ClosureReport>,
    pub assumptions: Vec<String>,
    pub conclusion: Conclusion,
}

impl PipelineReport {
    /// A decisive counterexample was found by either bounded search.
    pub fn decisive_failure(&self) -> bool {
        self.criterion.as_ref().is_some_and(|c| c.witness().is_some())
            || self
                .closure
                .as_ref()
                .is_some_and(|c| c.verdict == ClosureVerdict::NotFrobeniusClosed)
    }
}

/// Verifies the hypotheses of the FH-finiteness theorem for
/// `(R, I, x_1, ..., x_d)` where they are computable, runs the cover
/// criterion with `f` and the Frobenius-closure test of `(x_2, ..., x_d)`
/// in `R/I`, and reports the chained verdicts.
pub fn run_pipeline(
    r: &QuotientPresentation,
    canonical: &Ideal,
    twist: &Polynomial,
    sop: &[Polynomial],
    e_max: u32,
) -> Result<PipelineReport> {
    let p = r.characteristic();
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let ctx = CoverContext::new(r.clone(), canonical.clone(), twist.clone())?;
    let ring = r.ring();
    let d = r.dimension()?;
    let (x, tail) = split_sop(sop)?;
    let mut hyp = Vec::new();

    hyp.push(SubCheck::new("characteristic_odd", true, format!("p = {p}")));
    hyp.push(SubCheck::new(
        "dimension_positive",
        d >= 1,
        format!("dim R = {d}"),
    ));
    hyp.push(SubCheck::new(
        "sop_length",
        sop.len() == d,
        format!("{} elements for dimension {d}", sop.len()),
    ));

    let fedder_r = fedder_test(r)?;
    hyp.push(SubCheck::new(
        "R_f_pure",
        fedder_r.f_pure,
        "Fedder: (I^[p] : I) not contained in m^[p]; F-pure implies F-injective",
    ));
    let r_mod_i = r.quotient_by(canonical)?;
    let compact = r_mod_i.drop_vanishing_variables()?;
    let fedder_r_mod_i = fedder_test(&compact.quotient)?;
    hyp.push(SubCheck::new(
        "R_mod_I_f_pure",
        fedder_r_mod_i.f_pure,
        format!(
            "Fedder on R/I presented as k[{}]/{}",
            compact.quotient.ring().vars().join(", "),
            compact.quotient.defining()
        ),
    ));

    let x_in_i = ctx.canonical_ext.contains(x)?;
    hyp.push(SubCheck::new("x_in_I", x_in_i, format!("x = {x}")));
    let x_nzd = match is_nzd(r, x) {
        Ok(b) => b,
        Err(Error::ZeroElement) => false,
        Err(e) => return Err(e),
    };
    hyp.push(SubCheck::new("x_nonzerodivisor", x_nzd, "(0 : x) = 0 in R"));
    let tail_ri = is_regular_sequence(&r_mod_i, tail)?;
    hyp.push(SubCheck::new(
        "tail_regular_on_R_mod_I",
        tail_ri,
        "tail regular on R/I",
    ));
    let r_mod_x = r.quotient_by(&Ideal::new(ring, vec![x.clone()])?)?;
    let tail_rx = is_regular_sequence(&r_mod_x, tail)?;
    hyp.push(SubCheck::new(
        "tail_regular_on_R_mod_x",
        tail_rx,
        "tail regular on R/xR",
    ));
    let j = Ideal::new(ring, sop.to_vec())?;
    let sop_artinian = r.extend(&j)?.is_artinian()?;
    hyp.push(SubCheck::new(
        "sop_is_parameter_system",
        sop_artinian,
        "R/J has finite length",
    ));
    let sop_regular = is_regular_sequence(r, sop)?;
    hyp.push(SubCheck::new("sop_regular_on_R", sop_regular, "sop regular on R"));

    let structural = x_in_i && x_nzd && tail_ri && tail_rx && sop_artinian && sop_regular && d >= 1;
    let criterion = if structural {
        let rep = cover_injectivity_criterion(&ctx, sop, e_max)?;
        if let Some(lift) = &rep.lift {
            // fails when I is not a canonical ideal even though R/(I + tail) has type 1
            let soc = cover_socle(&ctx, sop, Some(&lift.u))?;
            hyp.push(SubCheck::new(
                "cover_socle_spanned_by_ut",
                soc.spanned_by_ut == Some(true),
                format!("socle of S/JS has dimension {}", soc.dimension),
            ));
        }
        Some(rep)
    } else {
        None
    };

    let mapped_tail: Vec<Polynomial> = tail.iter().map(|t| compact.map(t)).collect();
    let tail_ideal = Ideal::new(compact.quotient.ring(), mapped_tail)?;
    let closure = if tail_ri && compact.quotient.extend(&tail_ideal)?.is_artinian()? {
        Some(frobenius_closure_test(&compact.quotient, &tail_ideal, e_max)?)
    } else {
        None
    };

    let mut assumptions = vec![
        ASSUME_CM.to_string(),
        ASSUME_CANONICAL.to_string(),
        ASSUME_BOUNDED.to_string(),
    ];
    if closure.as_ref().is_some_and(|c| c.partial) {
        assumptions.push("socle combinations of R/I were only partially enumerated".into());
    }

    let failed: Vec<&str> = hyp
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    let conclusion = if !failed.is_empty() {
        Conclusion::Withheld {
            reason: format!("hypotheses not met: {}", failed.join(", ")),
        }
    } else if let Some(e) = criterion.as_ref().and_then(|c| c.witness()) {
        Conclusion::Withheld {
            reason: format!("cover criterion failed decisively at e = {e}"),
        }
    } else if closure
        .as_ref()
        .is_none_or(|c| c.verdict == ClosureVerdict::NotFrobeniusClosed)
    {
        Conclusion::Withheld {
            reason: "parameter ideal of R/I is not Frobenius closed".into(),
        }
    } else {
        Conclusion::FhFinite
    };

    Ok(PipelineReport {
        characteristic: p,
        dimension: d,
        hypotheses: hyp,
        fedder_r,
        fedder_r_mod_i,
        criterion,
        closure,
        assumptions,
        conclusion,
    })
}
