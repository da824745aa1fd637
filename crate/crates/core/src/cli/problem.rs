//! Sectioned problem files.
//!
//! ```text
//! # comment
//! constants: theta^2 + 1
//! operator: derivation
//! dimension: 2
//! matrix:
//!   theta, 0
//!   0, -theta
//! group: torus
//!   1, -1
//! ideal:
//!   X[1][2]
//!   X[2][1]
//!   X[1][1]*X[2][2] - 1
//! invariants:
//!   W
//! seed: 7
//! ```
//!
//! A section is `key: value` at column 1, followed by indented item lines.
//! `constants` is the minimal polynomial of `theta` (`theta` alone gives the
//! rationals). `group` is `finite` (items: every element, rows separated by
//! `;`), `torus` (items: one weight row each), `sl` or `gl`.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::algebra::{ConstField, OperatorKind, RatFunc};
use crate::invariants::GroupSpec;
use crate::linalg::Matrix;
use crate::poly::VarSpace;
use crate::pv::{GroupElement, IdealPresentation, LinearSystem, LocalizedPoly};

use super::expr::{eval_constant, eval_int, eval_k, eval_localized, eval_minpoly, parse_expr, Pos};
use super::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub field: ConstField,
    pub system: LinearSystem,
    pub group: GroupSpec,
    pub ideal: Vec<LocalizedPoly>,
    pub invariants: Option<Vec<LocalizedPoly>>,
    pub seed: Option<u64>,
}

/// A line fragment with the position of its first character.
#[derive(Clone, Debug)]
struct Span<'a> {
    text: &'a str,
    pos: Pos,
}

impl<'a> Span<'a> {
    fn trimmed(text: &'a str, pos: Pos) -> Self {
        let lead = text.len() - text.trim_start().len();
        Span {
            text: text.trim(),
            pos: Pos {
                line: pos.line,
                col: pos.col + text[..lead].chars().count(),
            },
        }
    }

    /// Splits on `sep`, keeping positions.
    fn split(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut col = self.pos.col;
        for piece in self.text.split(sep) {
            out.push(Span::trimmed(
                piece,
                Pos {
                    line: self.pos.line,
                    col,
                },
            ));
            col += piece.chars().count() + 1;
        }
        out
    }
}

struct Section<'a> {
    key: Span<'a>,
    value: Span<'a>,
    items: Vec<Span<'a>>,
}

const KEYS: [&str; 8] = ["constants", "operator", "dimension", "matrix", "group", "ideal", "invariants", "seed"];

fn sections(text: &str) -> Result<Vec<Section<'_>>, CliError> {
    let mut out: Vec<Section<'_>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let at = |col| Pos { line, col };
        if body.starts_with(char::is_whitespace) {
            let item = Span::trimmed(body, at(1));
            match out.last_mut() {
                Some(s) => s.items.push(item),
                None => return Err(item.pos.error("item line before any section")),
            }
            continue;
        }
        let Some(colon) = body.find(':') else {
            return Err(at(1).error("expected 'key: value'"));
        };
        let key = Span::trimmed(&body[..colon], at(1));
        if !KEYS.contains(&key.text) {
            return Err(key.pos.error(format!("unknown section '{}'", key.text)));
        }
        if out.iter().any(|s| s.key.text == key.text) {
            return Err(key.pos.error(format!("duplicate section '{}'", key.text)));
        }
        let value = Span::trimmed(&body[colon + 1..], at(body[..colon + 1].chars().count() + 1));
        out.push(Section {
            key,
            value,
            items: Vec::new(),
        });
    }
    Ok(out)
}

fn end_pos(text: &str) -> Pos {
    Pos {
        line: text.lines().count() + 1,
        col: 1,
    }
}

fn find<'s, 'a>(secs: &'s [Section<'a>], key: &str) -> Option<&'s Section<'a>> {
    secs.iter().find(|s| s.key.text == key)
}

fn require<'s, 'a>(secs: &'s [Section<'a>], key: &str, text: &str) -> Result<&'s Section<'a>, CliError> {
    find(secs, key).ok_or_else(|| end_pos(text).error(format!("missing section '{key}'")))
}

fn no_items(s: &Section<'_>) -> Result<(), CliError> {
    match s.items.first() {
        Some(i) => Err(i.pos.error(format!("section '{}' takes no items", s.key.text))),
        None => Ok(()),
    }
}

fn no_value(s: &Section<'_>) -> Result<(), CliError> {
    if s.value.text.is_empty() {
        Ok(())
    } else {
        Err(s.value.pos.error(format!("section '{}' takes items on the following lines", s.key.text)))
    }
}

fn expr_at(s: &Span<'_>) -> Result<super::expr::Expr, CliError> {
    if s.text.is_empty() {
        return Err(s.pos.error("empty expression"));
    }
    parse_expr(s.text, s.pos)
}

fn parse_usize(s: &Span<'_>) -> Result<usize, CliError> {
    s.text.parse().map_err(|_| s.pos.error(format!("expected a non-negative integer, found '{}'", s.text)))
}

fn lib_error(pos: Pos, e: crate::Error) -> CliError {
    pos.error(e.to_string())
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem, CliError> {
        let secs = sections(text)?;

        let c = require(&secs, "constants", text)?;
        no_items(c)?;
        let field = ConstField::new(eval_minpoly(&expr_at(&c.value)?)?).map_err(|e| lib_error(c.value.pos, e))?;

        let o = require(&secs, "operator", text)?;
        no_items(o)?;
        let kind = match o.value.text {
            "derivation" => OperatorKind::Derivation,
            "shift" => OperatorKind::Shift,
            other => return Err(o.value.pos.error(format!("operator must be 'derivation' or 'shift', found '{other}'"))),
        };

        let d = require(&secs, "dimension", text)?;
        no_items(d)?;
        let n = parse_usize(&d.value)?;
        if n == 0 {
            return Err(d.value.pos.error("dimension must be positive"));
        }
        let space = VarSpace::new(n);

        let m = require(&secs, "matrix", text)?;
        no_value(m)?;
        if m.items.len() != n {
            let pos = m.items.get(n).map_or(m.key.pos, |i| i.pos);
            return Err(pos.error(format!("matrix needs {n} rows, found {}", m.items.len())));
        }
        let mut rows = Vec::with_capacity(n);
        for item in &m.items {
            let cells = item.split(',');
            if cells.len() != n {
                return Err(item.pos.error(format!("matrix row needs {n} entries, found {}", cells.len())));
            }
            rows.push(cells.iter().map(|c| eval_k(&expr_at(c)?, &field)).collect::<Result<Vec<RatFunc>, _>>()?);
        }
        let system = LinearSystem::new(kind, Matrix::from_rows(rows)).map_err(|e| lib_error(m.key.pos, e))?;

        let g = require(&secs, "group", text)?;
        let group = Self::parse_group(g, n, &field)?;

        let i = require(&secs, "ideal", text)?;
        no_value(i)?;
        let ideal = i
            .items
            .iter()
            .map(|s| eval_localized(&expr_at(s)?, space, &field))
            .collect::<Result<Vec<_>, _>>()?;

        let invariants = match find(&secs, "invariants") {
            Some(s) => {
                no_value(s)?;
                let mut out = Vec::new();
                for item in &s.items {
                    let p = eval_localized(&expr_at(item)?, space, &field)?;
                    if p.wexp() > 0 {
                        return Err(item.pos.error("invariant generators must be polynomials"));
                    }
                    out.push(p);
                }
                Some(out)
            }
            None => None,
        };

        let seed = match find(&secs, "seed") {
            Some(s) => {
                no_items(s)?;
                Some(s.value.text.parse().map_err(|_| s.value.pos.error("seed must be a non-negative integer"))?)
            }
            None => None,
        };

        Ok(Problem {
            field,
            system,
            group,
            ideal,
            invariants,
            seed,
        })
    }

    fn parse_group(g: &Section<'_>, n: usize, field: &ConstField) -> Result<GroupSpec, CliError> {
        let kind = g.value.text;
        match kind {
            "sl" | "gl" => {
                no_items(g)?;
                Ok(if kind == "sl" { GroupSpec::sl(n, field) } else { GroupSpec::gl(n, field) })
            }
            "torus" => {
                let mut weights = Vec::new();
                for item in &g.items {
                    let w = item.split(',').iter().map(|c| eval_int(&expr_at(c)?)).collect::<Result<Vec<_>, _>>()?;
                    if w.len() != n {
                        return Err(item.pos.error(format!("weight row needs {n} entries, found {}", w.len())));
                    }
                    weights.push(w);
                }
                if weights.is_empty() {
                    return Err(g.value.pos.error("torus needs at least one weight row"));
                }
                GroupSpec::torus(field, weights).map_err(|e| lib_error(g.value.pos, e))
            }
            "finite" => {
                let mut elems = Vec::new();
                for item in &g.items {
                    let rows = item.split(';');
                    if rows.len() != n {
                        return Err(item.pos.error(format!("group element needs {n} rows, found {}", rows.len())));
                    }
                    let mut m = Vec::with_capacity(n);
                    for r in &rows {
                        let cells = r.split(',');
                        if cells.len() != n {
                            return Err(r.pos.error(format!("group element row needs {n} entries, found {}", cells.len())));
                        }
                        m.push(cells.iter().map(|c| eval_constant(&expr_at(c)?, field)).collect::<Result<Vec<_>, _>>()?);
                    }
                    elems.push(GroupElement::new(Matrix::from_rows(m)).map_err(|e| lib_error(item.pos, e))?);
                }
                GroupSpec::finite(elems).map_err(|e| lib_error(g.value.pos, e))
            }
            other => Err(g.value.pos.error(format!("group must be finite, torus, sl or gl, found '{other}'"))),
        }
    }

    pub fn space(&self) -> VarSpace {
        self.system.space()
    }

    pub fn ideal_presentation(&self) -> IdealPresentation {
        IdealPresentation::new(self.space(), &self.field, self.ideal.clone())
    }

    /// Invariant generators as polynomials.
    pub fn invariant_polys(&self) -> Option<Vec<crate::poly::MultiPoly>> {
        self.invariants.as_ref().map(|v| v.iter().map(|p| p.numerator().clone()).collect())
    }

    /// The minimal polynomial in the expression grammar.
    pub fn minpoly_string(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.field.minpoly().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let body = match k {
                0 => a.to_string(),
                1 if a.is_one() => "theta".to_string(),
                1 => format!("{a}*theta"),
                _ if a.is_one() => format!("theta^{k}"),
                _ => format!("{a}*theta^{k}"),
            };
            let sign = match (out.is_empty(), c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(out, "{sign}{body}").unwrap();
        }
        out
    }

    /// Canonical text; `parse` of the result gives back an equal problem.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.system.n();
        writeln!(out, "constants: {}", self.minpoly_string()).unwrap();
        writeln!(out, "operator: {}", self.system.kind().name()).unwrap();
        writeln!(out, "dimension: {n}").unwrap();
        writeln!(out, "matrix:").unwrap();
        for row in self.system.matrix().rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(out, "  {}", cells.join(", ")).unwrap();
        }
        match &self.group {
            GroupSpec::FiniteList(elems) => {
                writeln!(out, "group: finite").unwrap();
                for g in elems {
                    writeln!(out, "  {g}").unwrap();
                }
            }
            GroupSpec::DiagonalTorus { weights, .. } => {
                writeln!(out, "group: torus").unwrap();
                for w in weights {
                    let cells: Vec<String> = w.iter().map(ToString::to_string).collect();
                    writeln!(out, "  {}", cells.join(", ")).unwrap();
                }
            }
            GroupSpec::FullSL { .. } => writeln!(out, "group: sl").unwrap(),
            GroupSpec::FullGL { .. } => writeln!(out, "group: gl").unwrap(),
        }
        writeln!(out, "ideal:").unwrap();
        for p in &self.ideal {
            writeln!(out, "  {p}").unwrap();
        }
        if let Some(inv) = &self.invariants {
            writeln!(out, "invariants:").unwrap();
            for p in inv {
                writeln!(out, "  {p}").unwrap();
            }
        }
        if let Some(s) = self.seed {
            writeln!(out, "seed: {s}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "\
# torus
constants: theta^2 + 1
operator: derivation
dimension: 2
matrix:
  theta, 0
  0, -theta
group: torus
  1, -1
ideal:
  X[1][2]
  X[2][1]
  X[1][1]*X[2][2] - 1
invariants:
  W
seed: 3
";

    #[test]
    fn round_trip() {
        let p = Problem::parse(TORUS).unwrap();
        assert_eq!(p.system.n(), 2);
        assert_eq!(p.seed, Some(3));
        let text = p.to_text();
        assert_eq!(Problem::parse(&text).unwrap(), p);
        assert_eq!(Problem::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn finite_group_and_rationals() {
        let src = "constants: theta\noperator: shift\ndimension: 1\nmatrix:\n  -1\ngroup: finite\n  1\n  -1\nideal:\n  X[1][1]^2 - 1\n";
        let p = Problem::parse(src).unwrap();
        assert_eq!(p.field, ConstField::rationals());
        assert_eq!(p.group.elements().unwrap().len(), 2);
        assert_eq!(Problem::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = TORUS.replace("  X[2][1]\n", "  X[2]\n");
        assert_eq!(
            Problem::parse(&bad),
            Err(CliError::Parse {
                line: 12,
                col: 7,
                msg: "expected '[', found end of input".into()
            })
        );
        let bad = TORUS.replace("  0, -theta", "  0");
        assert!(matches!(Problem::parse(&bad), Err(CliError::Parse { line: 7, col: 3, .. })));
        let bad = TORUS.replace("seed: 3\n", "");
        let bad = bad.replace("operator: derivation\n", "");
        assert!(matches!(Problem::parse(&bad), Err(CliError::Parse { msg, .. }) if msg.contains("operator")));
        let bad = TORUS.replace("group: torus", "group: cyclic");
        assert!(matches!(Problem::parse(&bad), Err(CliError::Parse { line: 8, col: 8, .. })));
    }
}
