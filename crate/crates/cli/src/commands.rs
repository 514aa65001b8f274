use std::time::Instant;

use froblab_core::fsing::{
    cover_injectivity_criterion, cover_regular_sequence, cover_socle, fedder_test, p2_degeneracy_check,
    run_pipeline, Conclusion, CoverContext, ASSUME_BOUNDED, ASSUME_CANONICAL, ASSUME_CM,
};
use froblab_core::quotients::{frobenius_closure_test, ClosureVerdict};
use froblab_core::{Ideal, MonomialOrder, QuotientPresentation};

use crate::error::CliError;
use crate::report::{self, *};
use crate::ringfile::{self, RingSpec};
use crate::search;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gb,
    Dim,
    Membership,
    Minors,
    Fpure,
    Fclosure,
    CoverCheck,
    Pipeline,
    FindSop,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Dim => "dim",
            Command::Membership => "membership",
            Command::Minors => "minors",
            Command::Fpure => "fpure",
            Command::Fclosure => "fclosure",
            Command::CoverCheck => "cover-check",
            Command::Pipeline => "pipeline",
            Command::FindSop => "find-sop",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub e_max: Option<u32>,
    pub f: Option<String>,
    pub sop: Option<String>,
    pub poly: Option<String>,
    pub ideal: Option<String>,
    pub lex: bool,
    pub seed: u64,
    pub attempts: usize,
    pub timing: bool,
}

struct Outcome {
    result: CommandResult,
    decisive: bool,
    assumptions: Vec<String>,
}

impl Outcome {
    fn plain(result: CommandResult) -> Self {
        Outcome {
            result,
            decisive: false,
            assumptions: Vec::new(),
        }
    }
}

/// Runs a command on the ring file at `path`. Errors are folded into the
/// report; the exit code is in `report.exit_code`.
pub fn execute(command: Command, path: &str, opts: &Options) -> Report {
    let start = Instant::now();
    let spec = RingSpec::read(path).map(|mut s| {
        s.override_with(opts.f.as_deref(), opts.sop.as_deref(), opts.e_max);
        s
    });
    let input = spec.as_ref().ok().and_then(|s| echo(s).ok());
    let outcome = spec.and_then(|s| run(command, &s, opts));
    let timing_ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        tool: "froblab",
        tool_version: env!("CARGO_PKG_VERSION"),
        command: command.name().to_string(),
        file: path.to_string(),
        input,
        status: Status::Ok,
        exit_code: EXIT_OK,
        result: None,
        error: None,
        assumptions: Vec::new(),
        timing_ms,
    };
    match outcome {
        Ok(o) => {
            if o.decisive {
                report.status = Status::Decisive;
                report.exit_code = EXIT_DECISIVE;
            }
            report.result = Some(o.result);
            report.assumptions = o.assumptions;
        }
        Err(e) => {
            report.status = Status::Error;
            report.exit_code = EXIT_ERROR;
            report.error = Some(ErrorInfo {
                code: e.code(),
                message: e.to_string(),
            });
        }
    }
    report
}

fn echo(spec: &RingSpec) -> Result<InputEcho, CliError> {
    let ring = spec.ring()?;
    Ok(InputEcho {
        characteristic: spec.p,
        variables: spec.vars.clone(),
        relations: strings(&spec.relations(&ring)?),
        canonical_ideal: spec
            .canonical_ideal
            .as_ref()
            .map(|c| c.iter().map(|l| l.text.clone()).collect()),
        sop: spec
            .sop
            .as_ref()
            .map(|c| c.iter().map(|l| l.text.clone()).collect()),
        f: spec.twist(&ring)?.to_string(),
        e_max: spec.e_max(),
    })
}

pub fn presentation(q: &QuotientPresentation) -> String {
    let ring = q.ring();
    let base = format!("F_{}[{}]", ring.characteristic(), ring.vars().join(", "));
    if q.defining().is_zero() {
        base
    } else {
        format!("{base}/{}", q.defining())
    }
}

fn run(command: Command, spec: &RingSpec, opts: &Options) -> Result<Outcome, CliError> {
    let ring = spec.ring()?;
    let r = spec.quotient(&ring)?;
    let e_max = spec.e_max();
    match command {
        Command::Gb => {
            let order = if opts.lex {
                MonomialOrder::Lex
            } else {
                MonomialOrder::Grevlex
            };
            let gb = r.defining().groebner_in(order)?;
            let lms = gb
                .leading_monomials()
                .iter()
                .map(|m| ring.format_monomial(m))
                .collect();
            Ok(Outcome::plain(CommandResult::Gb(GbResult {
                order: order.name(),
                basis: strings(gb.polys()),
                leading_monomials: lms,
            })))
        }
        Command::Dim => Ok(Outcome::plain(CommandResult::Dim(DimResult {
            dimension: r.dimension()?,
        }))),
        Command::Membership => {
            let text = opts.poly.as_deref().ok_or(CliError::MissingField("poly"))?;
            let g = ringfile::parse_list(&ring, text)?
                .into_iter()
                .next()
                .ok_or(CliError::MissingField("poly"))?;
            let ideal = match &opts.ideal {
                Some(list) => Ideal::new(&ring, ringfile::parse_list(&ring, list)?)?,
                None => r.defining().clone(),
            };
            Ok(Outcome::plain(CommandResult::Membership(MembershipResult {
                polynomial: g.to_string(),
                ideal: strings(ideal.generators()),
                member: ideal.contains(&g)?,
                normal_form: ideal.normal_form(&g)?.to_string(),
            })))
        }
        Command::Minors => {
            let minors = spec.minors(&ring)?;
            Ok(Outcome::plain(CommandResult::Minors(MinorsResult {
                count: minors.len(),
                minors: strings(&minors),
            })))
        }
        Command::Fpure => {
            let ring_report = report::fedder(presentation(&r), &fedder_test(&r)?);
            let canonical_quotient = match &spec.canonical_ideal {
                Some(_) => {
                    let compact = r
                        .quotient_by(&spec.canonical(&ring)?)?
                        .drop_vanishing_variables()?;
                    Some(report::fedder(
                        presentation(&compact.quotient),
                        &fedder_test(&compact.quotient)?,
                    ))
                }
                None => None,
            };
            Ok(Outcome::plain(CommandResult::Fpure(FpureResult {
                ring: ring_report,
                canonical_quotient,
            })))
        }
        Command::Fclosure => {
            let sop = spec.sop(&ring)?;
            let j = Ideal::new(&ring, sop.clone())?;
            let rep = frobenius_closure_test(&r, &j, e_max)?;
            let mut assumptions = vec![ASSUME_BOUNDED.to_string()];
            if rep.partial {
                assumptions.push("only socle basis vectors were tested".into());
            }
            Ok(Outcome {
                decisive: rep.verdict == ClosureVerdict::NotFrobeniusClosed,
                result: CommandResult::Fclosure(report::closure(presentation(&r), &sop, &rep)),
                assumptions,
            })
        }
        Command::CoverCheck => {
            let sop = spec.sop(&ring)?;
            let f = spec.twist(&ring)?;
            let ctx = CoverContext::new(r.clone(), spec.canonical(&ring)?, f.clone())?;
            let rep = if ring.characteristic() == 2 {
                p2_degeneracy_check(&ctx, &sop)?
            } else {
                cover_injectivity_criterion(&ctx, &sop, e_max)?
            };
            let u = rep.lift.as_ref().map(|l| &l.u);
            let soc = cover_socle(&ctx, &sop, u)?;
            Ok(Outcome {
                decisive: rep.witness().is_some()
                    || rep.verdict == froblab_core::fsing::CriterionVerdict::P2Degenerate,
                assumptions: rep.assumptions.clone(),
                result: CommandResult::CoverCheck(CoverCheckResult {
                    f: f.to_string(),
                    sop_regular_on_cover: cover_regular_sequence(&ctx, &sop)?,
                    criterion: report::criterion(&rep),
                    cover_socle: Some(CoverSocleJson {
                        dimension: soc.dimension,
                        space_dimension: soc.space_dimension,
                        spanned_by_ut: soc.spanned_by_ut,
                    }),
                }),
            })
        }
        Command::Pipeline => {
            let sop = spec.sop(&ring)?;
            let canonical = spec.canonical(&ring)?;
            let rep = run_pipeline(&r, &canonical, &spec.twist(&ring)?, &sop, e_max)?;
            let compact = r.quotient_by(&canonical)?.drop_vanishing_variables()?;
            let tail: Vec<_> = sop[1..].iter().map(|t| compact.map(t)).collect();
            let mut assumptions = rep.assumptions.clone();
            if rep.conclusion == Conclusion::FhFinite {
                assumptions.push(
                    "the conclusion is implied by the FH-finiteness theorem from the verified hypotheses; it is not computed"
                        .into(),
                );
            }
            Ok(Outcome {
                decisive: rep.decisive_failure(),
                result: CommandResult::Pipeline(report::pipeline(
                    &rep,
                    presentation(&r),
                    presentation(&compact.quotient),
                    &tail,
                )),
                assumptions,
            })
        }
        Command::FindSop => {
            let canonical = match &spec.canonical_ideal {
                Some(_) => Some(spec.canonical(&ring)?),
                None => None,
            };
            let found = search::find_sop(&r, canonical.as_ref(), opts.seed, opts.attempts)?;
            let mut assumptions = Vec::new();
            if canonical.is_some() {
                assumptions.push(ASSUME_CM.to_string());
                assumptions.push(ASSUME_CANONICAL.to_string());
            }
            Ok(Outcome {
                decisive: false,
                assumptions,
                result: CommandResult::FindSop(FindSopResult {
                    seed: opts.seed,
                    attempts: found.attempts,
                    sop: strings(&found.sop),
                    checks: report::checks(&found.checks),
                }),
            })
        }
    }
}
