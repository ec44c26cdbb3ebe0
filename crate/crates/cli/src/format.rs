//! The POLY text format and the companion triangulation format.
//!
//! ```text
//! POLY <d>
//! V <n>          # optional: n rows of d rationals
//! H <m>          # optional: m rows a0 a1 .. ad meaning a0 + a.x >= 0
//! ```
//!
//! `#` starts a comment. Blank lines are ignored. At least one section is
//! required and each may appear once. [`write_poly`] emits the canonical
//! form: lowest-terms rationals, single spaces, LF endings, `V` before `H`.
//!
//! Triangulations are stored as index rows:
//!
//! ```text
//! TRIANGULATION <d>
//! T <t>          # t rows of d+1 point indices
//! ```

use std::fmt::Write as _;

use bbhull_core::arith::Scalar;
use bbhull_core::geometry::{Halfspace, Point, Simplex};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Contents of a POLY file. Inequality rows are kept exactly as read, so
/// a file round-trips without content normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyFile {
    pub dim: usize,
    pub points: Option<Vec<Point>>,
    pub inequalities: Option<Vec<Vec<Scalar>>>,
}

impl PolyFile {
    pub fn from_points(dim: usize, points: Vec<Point>) -> Self {
        PolyFile { dim, points: Some(points), inequalities: None }
    }

    pub fn with_halfspaces(mut self, hs: &[Halfspace]) -> Self {
        self.inequalities = Some(hs.iter().map(halfspace_row).collect());
        self
    }

    /// The inequality rows as content-normalized halfspaces.
    pub fn halfspaces(&self) -> Option<Result<Vec<Halfspace>, bbhull_core::Error>> {
        self.inequalities.as_ref().map(|rows| rows.iter().map(|r| Halfspace::from_coefficients(r)).collect())
    }
}

pub fn halfspace_row(h: &Halfspace) -> Vec<Scalar> {
    h.coefficients().iter().map(|c| Scalar::from_integer(c.clone())).collect()
}

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split_once('#').map_or(line, |(head, _)| head);
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse().or_else(|_| err(line, format!("invalid {what} {tok:?}")))
}

fn header(line: usize, tokens: &[&str], keyword: &str) -> Result<usize, ParseError> {
    match tokens {
        [k, n] if *k == keyword => parse_count(line, n, "count"),
        _ => err(line, format!("expected `{keyword} <count>`, found {:?}", tokens.join(" "))),
    }
}

fn parse_row(line: usize, tokens: &[&str], width: usize) -> Result<Vec<Scalar>, ParseError> {
    if tokens.len() != width {
        return err(line, format!("expected {width} entries, found {}", tokens.len()));
    }
    tokens
        .iter()
        .map(|t| t.parse::<Scalar>().or_else(|_| err(line, format!("malformed rational {t:?}"))))
        .collect()
}

pub fn parse_poly(text: &str) -> Result<PolyFile, ParseError> {
    let mut lines = content_lines(text);
    let Some((first, tokens)) = lines.next() else {
        return err(1, "empty file, expected `POLY <d>`");
    };
    let dim = match tokens.as_slice() {
        ["POLY", d] => parse_count(first, d, "dimension")?,
        _ => return err(first, "expected `POLY <d>`"),
    };
    if dim == 0 {
        return err(first, "dimension must be positive");
    }
    let mut file = PolyFile { dim, points: None, inequalities: None };
    let mut last = first;
    while let Some((line, tokens)) = lines.next() {
        let (width, is_v) = match tokens.first().copied() {
            Some("V") => (dim, true),
            Some("H") => (dim + 1, false),
            _ => return err(line, format!("expected a `V` or `H` section, found {:?}", tokens.join(" "))),
        };
        let count = header(line, &tokens, tokens[0])?;
        if (is_v && file.points.is_some()) || (!is_v && file.inequalities.is_some()) {
            return err(line, format!("duplicate `{}` section", tokens[0]));
        }
        let mut rows = Vec::with_capacity(count);
        last = line;
        for k in 0..count {
            let Some((line, tokens)) = lines.next() else {
                return err(last, format!("section `{}` ends after {k} of {count} rows", if is_v { "V" } else { "H" }));
            };
            let row = parse_row(line, &tokens, width)?;
            if !is_v && row[1..].iter().all(Scalar::is_zero) {
                return err(line, "inequality with zero normal");
            }
            rows.push(row);
            last = line;
        }
        if is_v {
            file.points = Some(rows.into_iter().map(Point::new).collect());
        } else {
            file.inequalities = Some(rows);
        }
    }
    if file.points.is_none() && file.inequalities.is_none() {
        return err(last, "no `V` or `H` section");
    }
    Ok(file)
}

fn push_row<'a>(out: &mut String, row: impl IntoIterator<Item = &'a Scalar>) {
    let mut first = true;
    for x in row {
        if !first {
            out.push(' ');
        }
        first = false;
        write!(out, "{x}").expect("writing to a String");
    }
    out.push('\n');
}

pub fn write_poly(file: &PolyFile) -> String {
    let mut out = format!("POLY {}\n", file.dim);
    if let Some(points) = &file.points {
        writeln!(out, "V {}", points.len()).expect("writing to a String");
        for p in points {
            push_row(&mut out, p.iter());
        }
    }
    if let Some(rows) = &file.inequalities {
        writeln!(out, "H {}", rows.len()).expect("writing to a String");
        for r in rows {
            push_row(&mut out, r);
        }
    }
    out
}

pub fn parse_triangulation(text: &str) -> Result<(usize, Vec<Simplex>), ParseError> {
    let mut lines = content_lines(text);
    let Some((first, tokens)) = lines.next() else {
        return err(1, "empty file, expected `TRIANGULATION <d>`");
    };
    let dim = match tokens.as_slice() {
        ["TRIANGULATION", d] => parse_count(first, d, "dimension")?,
        _ => return err(first, "expected `TRIANGULATION <d>`"),
    };
    let Some((line, tokens)) = lines.next() else {
        return err(first, "missing `T <count>` section");
    };
    let count = header(line, &tokens, "T")?;
    let mut cells = Vec::with_capacity(count);
    let mut last = line;
    for k in 0..count {
        let Some((line, tokens)) = lines.next() else {
            return err(last, format!("section `T` ends after {k} of {count} rows"));
        };
        if tokens.len() != dim + 1 {
            return err(line, format!("expected {} indices, found {}", dim + 1, tokens.len()));
        }
        let idx = tokens.iter().map(|t| parse_count(line, t, "index")).collect::<Result<Vec<_>, _>>()?;
        cells.push(Simplex::new(idx).or_else(|e| err(line, e.to_string()))?);
        last = line;
    }
    if let Some((line, _)) = lines.next() {
        return err(line, "unexpected content after the last cell");
    }
    Ok((dim, cells))
}

pub fn write_triangulation(dim: usize, cells: &[Simplex]) -> String {
    let mut out = format!("TRIANGULATION {dim}\nT {}\n", cells.len());
    for c in cells {
        let row: Vec<String> = c.vertices().iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Comma-separated rationals, as in `--interior "1/2,1/2,0"`.
pub fn parse_point(text: &str) -> Result<Point, String> {
    text.split(',')
        .map(|t| t.trim().parse::<Scalar>().map_err(|_| format!("malformed rational {:?}", t.trim())))
        .collect::<Result<Vec<_>, _>>()
        .map(Point::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_sections_and_comments() {
        let text = "# a square\nPOLY 2\nV 2  # two rows\n1/2 0\n\n-3 4/6\nH 1\n3/2 -1 -1\n";
        let f = parse_poly(text).unwrap();
        assert_eq!(f.dim, 2);
        let pts = f.points.as_ref().unwrap();
        assert_eq!(pts[0][0], Scalar::from_ratio(1, 2).unwrap());
        assert_eq!(pts[1][1], Scalar::from_ratio(2, 3).unwrap());
        assert_eq!(write_poly(&f), "POLY 2\nV 2\n1/2 0\n-3 2/3\nH 1\n3/2 -1 -1\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("POLY 3\nV 1\n1/0 0 1\n", 3, "malformed"),
            ("POLY 3\nV 2\n1 2 3\n", 3, "ends after 1 of 2"),
            ("POLY 2\nV 1\n1 2 3\n", 3, "expected 2 entries"),
            ("POLY 2\n", 1, "no `V` or `H`"),
            ("POLY x\n", 1, "invalid dimension"),
            ("POLY 2\nH 1\n5 0 0\n", 3, "zero normal"),
            ("POLY 2\nV 0\nV 0\n", 3, "duplicate"),
            ("POLY 2\nX 1\n", 2, "expected a `V` or `H`"),
            ("", 1, "empty file"),
        ];
        for (text, line, needle) in cases {
            let e = parse_poly(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn empty_facet_list() {
        let f = PolyFile { dim: 3, points: None, inequalities: Some(Vec::new()) };
        assert_eq!(write_poly(&f), "POLY 3\nH 0\n");
        assert_eq!(parse_poly("POLY 3\nH 0\n").unwrap(), f);
    }

    #[test]
    fn halfspace_rows_render_in_lowest_terms() {
        let h = Halfspace::from_coefficients(&["3/2".parse().unwrap(), (-1).into(), (-1).into(), (-1).into()]).unwrap();
        let f = PolyFile { dim: 3, points: None, inequalities: Some(vec![halfspace_row(&h)]) };
        assert_eq!(write_poly(&f), "POLY 3\nH 1\n3 -2 -2 -2\n");
        let raw = parse_poly("POLY 3\nH 1\n3/2 -1 -1 -1\n").unwrap();
        assert_eq!(write_poly(&raw), "POLY 3\nH 1\n3/2 -1 -1 -1\n");
        assert_eq!(raw.halfspaces().unwrap().unwrap(), vec![h]);
    }

    #[test]
    fn triangulation_round_trip() {
        let cells = vec![Simplex::new(vec![2, 0, 1]).unwrap(), Simplex::new(vec![0, 2, 3]).unwrap()];
        let text = write_triangulation(2, &cells);
        assert_eq!(text, "TRIANGULATION 2\nT 2\n0 1 2\n0 2 3\n");
        assert_eq!(parse_triangulation(&text).unwrap(), (2, cells));
        assert_eq!(parse_triangulation("TRIANGULATION 2\nT 1\n0 1\n").unwrap_err().line, 3);
        assert_eq!(parse_triangulation("TRIANGULATION 1\nT 1\n0 0\n").unwrap_err().line, 3);
    }

    #[test]
    fn interior_points() {
        assert_eq!(parse_point("1/2, 0,-3").unwrap(), Point::new(vec!["1/2".parse().unwrap(), 0.into(), (-3).into()]));
        assert!(parse_point("1/2,,1").is_err());
    }
}
