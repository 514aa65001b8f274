//! Seeded random search for a system of parameters satisfying the
//! hypotheses the cover commands check.

use froblab_core::fsing::SubCheck;
use froblab_core::quotients::{is_nzd, is_regular_sequence, socle};
use froblab_core::{Error, Ideal, Polynomial, QuotientPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

pub const DEFAULT_ATTEMPTS: usize = 200;

pub struct Found {
    pub sop: Vec<Polynomial>,
    pub checks: Vec<SubCheck>,
    /// Candidates tried, including the successful one.
    pub attempts: usize,
}

/// A sparse random combination: each coefficient is zero with
/// probability 1/2, otherwise uniform in `1..p`.
fn combination(rng: &mut ChaCha8Rng, basis: &[Polynomial], p: u32) -> Result<Polynomial, Error> {
    let ring = basis[0].ring();
    let mut out = Polynomial::zero(ring);
    for b in basis {
        if rng.gen_bool(0.5) {
            out = out.add(&b.scale(rng.gen_range(1..p)))?;
        }
    }
    Ok(out)
}

fn checks_for(
    r: &QuotientPresentation,
    canonical: Option<&Ideal>,
    sop: &[Polynomial],
) -> Result<Option<Vec<SubCheck>>, Error> {
    let ring = r.ring();
    if sop.iter().any(|x| x.is_zero()) {
        return Ok(None);
    }
    let mut checks = Vec::new();
    let x = &sop[0];
    let nzd = match is_nzd(r, x) {
        Ok(b) => b,
        Err(Error::ZeroElement) => false,
        Err(e) => return Err(e),
    };
    if !nzd {
        return Ok(None);
    }
    checks.push(SubCheck::new("x_nonzerodivisor", true, "(0 : x) = 0 in R"));
    if !is_regular_sequence(r, sop)? {
        return Ok(None);
    }
    checks.push(SubCheck::new(
        "sop_regular_on_R",
        true,
        "verified by colon ideals",
    ));
    if !r.extend(&Ideal::new(ring, sop.to_vec())?)?.is_artinian()? {
        return Ok(None);
    }
    checks.push(SubCheck::new(
        "sop_is_parameter_system",
        true,
        "R/J has finite length",
    ));
    if let Some(i) = canonical {
        let tail = &sop[1..];
        let r_mod_i = r.quotient_by(i)?;
        if !is_regular_sequence(&r_mod_i, tail)? {
            return Ok(None);
        }
        checks.push(SubCheck::new(
            "tail_regular_on_R_mod_I",
            true,
            "tail regular on R/I",
        ));
        let r_mod_x = r.quotient_by(&Ideal::new(ring, vec![x.clone()])?)?;
        if !is_regular_sequence(&r_mod_x, tail)? {
            return Ok(None);
        }
        checks.push(SubCheck::new(
            "tail_regular_on_R_mod_x",
            true,
            "tail regular on R/xR",
        ));
        let soc = socle(&r_mod_i, &Ideal::new(ring, tail.to_vec())?)?;
        if soc.dimension != 1 {
            return Ok(None);
        }
        checks.push(SubCheck::new(
            "type_one",
            true,
            "R/(I + tail) has 1-dimensional socle",
        ));
    }
    Ok(Some(checks))
}

/// Tries up to `attempts` random candidates. The first element is drawn
/// from the canonical ideal when one is given; the rest are linear forms.
pub fn find_sop(
    r: &QuotientPresentation,
    canonical: Option<&Ideal>,
    seed: u64,
    attempts: usize,
) -> Result<Found, CliError> {
    let ring = r.ring();
    let p = ring.characteristic();
    let d = r.dimension()?;
    if d == 0 {
        return Ok(Found {
            sop: Vec::new(),
            checks: vec![SubCheck::new(
                "dimension_zero",
                true,
                "the empty sequence is a system of parameters",
            )],
            attempts: 0,
        });
    }
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
    let first_basis = match canonical {
        Some(i) => i.generators().to_vec(),
        None => vars.clone(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=attempts {
        let mut sop = vec![combination(&mut rng, &first_basis, p)?];
        for _ in 1..d {
            sop.push(combination(&mut rng, &vars, p)?);
        }
        if let Some(checks) = checks_for(r, canonical, &sop)? {
            return Ok(Found {
                sop,
                checks,
                attempts: attempt,
            });
        }
    }
    Err(CliError::SearchExhausted(attempts))
}
