//! The line-oriented ring description format; see `docs/ring-file-format.md`.

use std::fmt::Write as _;

use froblab_core::{parse, Error, Ideal, MonomialOrder, PolyRing, Polynomial, QuotientPresentation, Ring};

use crate::error::CliError;

pub const DEFAULT_E_MAX: u32 = 3;

/// A piece of text together with where it came from (1-based line and
/// column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Located {
    fn synthetic(text: &str) -> Self {
        Located {
            text: text.to_string(),
            line: 0,
            column: 0,
        }
    }
}

/// The raw contents of a ring file. Polynomials are kept as text until the
/// ring is known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingSpec {
    pub p: u64,
    pub vars: Vec<String>,
    pub relations: Option<Vec<Located>>,
    pub matrix: Option<Vec<Vec<Located>>>,
    pub canonical_ideal: Option<Vec<Located>>,
    pub sop: Option<Vec<Located>>,
    pub f: Option<Located>,
    pub e_max: Option<u32>,
}

const KEYS: [&str; 8] = [
    "p",
    "vars",
    "relations",
    "matrix",
    "canonical_ideal",
    "sop",
    "f",
    "e_max",
];

fn split_list(text: &str, line: usize, column: usize) -> Vec<Located> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let trimmed = piece.trim();
        if !trimmed.is_empty() {
            out.push(Located {
                text: trimmed.to_string(),
                line,
                column: column + start + lead,
            });
        }
        start += piece.len() + 1;
    }
    out
}

fn file_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::File {
        line,
        message: message.into(),
    }
}

struct Entry {
    key: String,
    line: usize,
    inline: Option<Located>,
    items: Vec<Located>,
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries: Vec<Entry> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            let body = content.trim();
            if let Some(rest) = body.strip_prefix('-') {
                let entry = entries
                    .last_mut()
                    .filter(|e| e.inline.is_none())
                    .ok_or_else(|| file_error(line, "list item without a preceding `key:` line"))?;
                let lead = rest.len() - rest.trim_start().len();
                entry.items.push(Located {
                    text: rest.trim().to_string(),
                    line,
                    column: indent + 2 + lead,
                });
                continue;
            }
            let (key, value) = body
                .split_once(':')
                .ok_or_else(|| file_error(line, "expected `key: value`"))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(file_error(line, format!("unknown key `{key}`")));
            }
            if entries.iter().any(|e| e.key == key) {
                return Err(file_error(line, format!("duplicate key `{key}`")));
            }
            let value_start = content.find(':').unwrap() + 1;
            let lead = value.len() - value.trim_start().len();
            let inline = (!value.trim().is_empty()).then(|| Located {
                text: value.trim().to_string(),
                line,
                column: value_start + lead + 1,
            });
            entries.push(Entry {
                key: key.to_string(),
                line,
                inline,
                items: Vec::new(),
            });
        }

        let mut spec = RingSpec::default();
        let mut have_p = false;
        for entry in entries {
            let line = entry.line;
            let list = |e: &Entry| -> Vec<Located> {
                match &e.inline {
                    Some(v) => split_list(&v.text, v.line, v.column),
                    None => e.items.clone(),
                }
            };
            let scalar = |e: &Entry| -> Result<Located, CliError> {
                if !e.items.is_empty() {
                    return Err(file_error(line, format!("`{}` takes a single value", e.key)));
                }
                e.inline
                    .clone()
                    .ok_or_else(|| file_error(line, format!("`{}` needs a value", e.key)))
            };
            match entry.key.as_str() {
                "p" => {
                    let v = scalar(&entry)?;
                    spec.p = v.text.parse().map_err(|_| {
                        file_error(line, format!("`{}` is not a nonnegative integer", v.text))
                    })?;
                    have_p = true;
                }
                "vars" => spec.vars = list(&entry).into_iter().map(|l| l.text).collect(),
                "relations" => spec.relations = Some(list(&entry)),
                "matrix" => {
                    if entry.inline.is_some() {
                        return Err(file_error(
                            line,
                            "matrix rows must be given as `- a, b, ...` items",
                        ));
                    }
                    spec.matrix = Some(
                        entry
                            .items
                            .iter()
                            .map(|row| split_list(&row.text, row.line, row.column))
                            .collect(),
                    );
                }
                "canonical_ideal" => spec.canonical_ideal = Some(list(&entry)),
                "sop" => spec.sop = Some(list(&entry)),
                "f" => spec.f = Some(scalar(&entry)?),
                "e_max" => {
                    let v = scalar(&entry)?;
                    spec.e_max = Some(v.text.parse().map_err(|_| {
                        file_error(line, format!("`{}` is not a nonnegative integer", v.text))
                    })?);
                }
                _ => unreachable!(),
            }
        }
        if !have_p {
            return Err(CliError::MissingField("p"));
        }
        if spec.vars.is_empty() {
            return Err(CliError::MissingField("vars"));
        }
        if spec.relations.is_some() && spec.matrix.is_some() {
            return Err(file_error(0, "`relations` and `matrix` are mutually exclusive"));
        }
        Ok(spec)
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Writes the ring file back in canonical form.
    pub fn emit(&self) -> String {
        let join = |xs: &[Located]| xs.iter().map(|l| l.text.as_str()).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        writeln!(out, "p: {}", self.p).unwrap();
        writeln!(out, "vars: {}", self.vars.join(", ")).unwrap();
        if let Some(rel) = &self.relations {
            writeln!(out, "relations:").unwrap();
            for r in rel {
                writeln!(out, "  - {}", r.text).unwrap();
            }
        }
        if let Some(m) = &self.matrix {
            writeln!(out, "matrix:").unwrap();
            for row in m {
                writeln!(out, "  - {}", join(row)).unwrap();
            }
        }
        if let Some(c) = &self.canonical_ideal {
            writeln!(out, "canonical_ideal: {}", join(c)).unwrap();
        }
        if let Some(s) = &self.sop {
            writeln!(out, "sop: {}", join(s)).unwrap();
        }
        if let Some(f) = &self.f {
            writeln!(out, "f: {}", f.text).unwrap();
        }
        if let Some(e) = self.e_max {
            writeln!(out, "e_max: {e}").unwrap();
        }
        out
    }

    pub fn ring(&self) -> Result<Ring, CliError> {
        Ok(PolyRing::new(self.p, &self.vars, MonomialOrder::Grevlex)?)
    }

    /// Relations of the quotient: the listed ones, or the 2×2 minors of the
    /// matrix.
    pub fn relations(&self, ring: &Ring) -> Result<Vec<Polynomial>, CliError> {
        if self.matrix.is_some() {
            return self.minors(ring);
        }
        match &self.relations {
            Some(rel) => polys(ring, rel),
            None => Ok(Vec::new()),
        }
    }

    /// All column-pair minors `row1[i]·row2[j] − row1[j]·row2[i]`, `i < j`.
    pub fn minors(&self, ring: &Ring) -> Result<Vec<Polynomial>, CliError> {
        let matrix = self.matrix.as_ref().ok_or(CliError::MissingField("matrix"))?;
        if matrix.len() != 2 {
            return Err(CliError::BadMatrixShape(format!(
                "{} rows, expected 2",
                matrix.len()
            )));
        }
        if matrix[0].len() != matrix[1].len() {
            return Err(CliError::BadMatrixShape(format!(
                "rows have {} and {} entries",
                matrix[0].len(),
                matrix[1].len()
            )));
        }
        let top = polys(ring, &matrix[0])?;
        let bottom = polys(ring, &matrix[1])?;
        let mut out = Vec::new();
        for i in 0..top.len() {
            for j in i + 1..top.len() {
                out.push(top[i].mul(&bottom[j])?.sub(&top[j].mul(&bottom[i])?)?);
            }
        }
        Ok(out)
    }

    pub fn quotient(&self, ring: &Ring) -> Result<QuotientPresentation, CliError> {
        Ok(QuotientPresentation::new(Ideal::new(
            ring,
            self.relations(ring)?,
        )?)?)
    }

    pub fn canonical(&self, ring: &Ring) -> Result<Ideal, CliError> {
        let gens = self
            .canonical_ideal
            .as_ref()
            .ok_or(CliError::MissingField("canonical_ideal"))?;
        Ok(Ideal::new(ring, polys(ring, gens)?)?)
    }

    pub fn sop(&self, ring: &Ring) -> Result<Vec<Polynomial>, CliError> {
        polys(ring, self.sop.as_ref().ok_or(CliError::MissingField("sop"))?)
    }

    /// The twist `f`; defaults to 1.
    pub fn twist(&self, ring: &Ring) -> Result<Polynomial, CliError> {
        match &self.f {
            Some(f) => poly(ring, f),
            None => Ok(Polynomial::one(ring)),
        }
    }

    pub fn e_max(&self) -> u32 {
        self.e_max.unwrap_or(DEFAULT_E_MAX)
    }

    /// Applies command-line overrides.
    pub fn override_with(&mut self, f: Option<&str>, sop: Option<&str>, e_max: Option<u32>) {
        if let Some(f) = f {
            self.f = Some(Located::synthetic(f));
        }
        if let Some(sop) = sop {
            self.sop = Some(split_list(sop, 0, 1));
        }
        if e_max.is_some() {
            self.e_max = e_max;
        }
    }
}

pub fn poly(ring: &Ring, text: &Located) -> Result<Polynomial, CliError> {
    parse(&text.text, ring).map_err(|e| {
        let offset = match &e {
            Error::Syntax { offset, .. } | Error::UnknownVariable { offset, .. } => *offset,
            _ => 0,
        };
        CliError::Polynomial {
            line: text.line,
            column: text.column + offset,
            source: e,
        }
    })
}

pub fn polys(ring: &Ring, items: &[Located]) -> Result<Vec<Polynomial>, CliError> {
    items.iter().map(|l| poly(ring, l)).collect()
}

/// Parses a comma-separated list given on the command line.
pub fn parse_list(ring: &Ring, text: &str) -> Result<Vec<Polynomial>, CliError> {
    polys(ring, &split_list(text, 0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DETERMINANTAL: &str = "\
p: 3
vars: x1, x2, x3, x4, x5
matrix:
  - x1, x2, x2, x5
  - x4, x4, x3, x1
canonical_ideal: x1, x4, x5
";

    #[test]
    fn parses_matrix_form() {
        let spec = RingSpec::parse(DETERMINANTAL).unwrap();
        assert_eq!(spec.p, 3);
        assert_eq!(spec.vars.len(), 5);
        let ring = spec.ring().unwrap();
        let minors = spec.minors(&ring).unwrap();
        assert_eq!(minors.len(), 6);
        assert_eq!(minors[0].to_string(), "x1*x4 + 2*x2*x4");
        assert_eq!(minors[2].to_string(), "x1^2 + 2*x4*x5");
    }

    #[test]
    fn minors_of_small_matrices() {
        let spec = RingSpec::parse("p: 5\nvars: x, y, z, w\nmatrix:\n - x, y\n - z, w\n").unwrap();
        let ring = spec.ring().unwrap();
        let m = spec.minors(&ring).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0], parse("x*w - y*z", &ring).unwrap());
        let spec = RingSpec::parse("p: 5\nvars: x, z\nmatrix:\n - x\n - z\n").unwrap();
        assert!(spec.minors(&spec.ring().unwrap()).unwrap().is_empty());
        let spec = RingSpec::parse("p: 5\nvars: x\nmatrix:\n - x\n").unwrap();
        assert!(matches!(
            spec.minors(&spec.ring().unwrap()),
            Err(CliError::BadMatrixShape(_))
        ));
    }

    #[test]
    fn errors_carry_positions() {
        let err = RingSpec::parse("p: 3\nvars: x\nrelations: x^2, x + q\n").unwrap();
        let ring = err.ring().unwrap();
        match err.relations(&ring) {
            Err(CliError::Polynomial { line, column, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(column, 21);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            RingSpec::parse("vars: x\n"),
            Err(CliError::MissingField("p"))
        ));
        assert!(matches!(
            RingSpec::parse("p: 3\nvars: x\nbogus: 1\n"),
            Err(CliError::File { line: 3, .. })
        ));
        assert!(matches!(
            RingSpec::parse("p: 3\nvars: x, y\nrelations: x\nmatrix:\n - x, y\n - y, x\n"),
            Err(CliError::File { .. })
        ));
    }

    #[test]
    fn emit_round_trips() {
        let spec =
            RingSpec::parse(&format!("{DETERMINANTAL}sop: x4 + x5, x2 - x3\nf: 1\ne_max: 2\n")).unwrap();
        let again = RingSpec::parse(&spec.emit()).unwrap();
        assert_eq!(spec.emit(), again.emit());
        let ring = spec.ring().unwrap();
        assert_eq!(spec.relations(&ring).unwrap(), again.relations(&ring).unwrap());
    }
}
