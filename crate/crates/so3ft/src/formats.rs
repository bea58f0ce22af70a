//! Line-oriented text formats for coefficients and samples.
//!
//! Every file starts with a header line naming the kind, a version and the
//! bandwidth:
//!
//! ```text
//! SO3FT v1 B=<B> flavor=<real|complex>   then  l m n <value>   or  l m n <re> <im>
//! S2FT v1 B=<B> flavor=real              then  l m <value>
//! SO3SAMPLES v1 B=<B> flavor=<real|complex>
//!     then (2B)³ lines <value> or <re> <im>, j₁ slowest, then k, then j₂
//! S2GRID v1 B=<B>
//!     then 2B lines of 2B values; row k is colatitude β_k, column j is
//!     longitude πj/B
//! ```
//!
//! Coefficient files list nonzero entries only. Values are written in the
//! shortest form that parses back to the same `f64`, so writing, reading and
//! writing again reproduces the file byte for byte. Blank lines and lines
//! starting with `#` are ignored by the readers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use so3ft_core::transforms::{S2Coefficients, S2Samples, SO3Coefficients, SO3Samples};
use so3ft_core::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl FormatError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError::Parse {
            line,
            message: message.into(),
        }
    }
}

type Result<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Real,
    Complex,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Real => "real",
            Flavor::Complex => "complex",
        }
    }
}

/// Contents of a coefficient file.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSet {
    So3Real(SO3Coefficients<f64>),
    So3Complex(SO3Coefficients<Complex64>),
    S2Real(S2Coefficients<f64>),
}

/// Contents of a sample file.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleSet {
    So3Real(SO3Samples<f64>),
    So3Complex(SO3Samples<Complex64>),
    S2Grid(S2Samples<f64>),
}

/// Any file this module reads, dispatched on the header.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Coefficients(CoefficientSet),
    Samples(SampleSet),
}

fn push_value(out: &mut String, v: f64) {
    write!(out, "{v:e}").expect("writing to a String cannot fail");
}

fn push_complex(out: &mut String, v: Complex64) {
    push_value(out, v.re);
    out.push(' ');
    push_value(out, v.im);
}

pub fn format_coefficients(set: &CoefficientSet) -> String {
    let mut out = String::new();
    match set {
        CoefficientSet::So3Real(c) => {
            writeln!(out, "SO3FT v1 B={} flavor=real", c.bandwidth()).unwrap();
            for (l, m, n, v) in c.iter().filter(|e| e.3 != 0.0) {
                write!(out, "{l} {m} {n} ").unwrap();
                push_value(&mut out, v);
                out.push('\n');
            }
        }
        CoefficientSet::So3Complex(c) => {
            writeln!(out, "SO3FT v1 B={} flavor=complex", c.bandwidth()).unwrap();
            for (l, m, n, v) in c.iter().filter(|e| e.3 != Complex64::new(0.0, 0.0)) {
                write!(out, "{l} {m} {n} ").unwrap();
                push_complex(&mut out, v);
                out.push('\n');
            }
        }
        CoefficientSet::S2Real(c) => {
            writeln!(out, "S2FT v1 B={} flavor=real", c.bandwidth()).unwrap();
            for (l, m, v) in c.iter().filter(|e| e.2 != 0.0) {
                write!(out, "{l} {m} ").unwrap();
                push_value(&mut out, v);
                out.push('\n');
            }
        }
    }
    out
}

pub fn format_samples(set: &SampleSet) -> String {
    let mut out = String::new();
    match set {
        SampleSet::So3Real(s) => {
            writeln!(out, "SO3SAMPLES v1 B={} flavor=real", s.bandwidth()).unwrap();
            for &v in s.as_slice() {
                push_value(&mut out, v);
                out.push('\n');
            }
        }
        SampleSet::So3Complex(s) => {
            writeln!(out, "SO3SAMPLES v1 B={} flavor=complex", s.bandwidth()).unwrap();
            for &v in s.as_slice() {
                push_complex(&mut out, v);
                out.push('\n');
            }
        }
        SampleSet::S2Grid(s) => {
            writeln!(out, "S2GRID v1 B={}", s.bandwidth()).unwrap();
            for row in s.as_slice().chunks(s.size()) {
                for (j, &v) in row.iter().enumerate() {
                    if j > 0 {
                        out.push(' ');
                    }
                    push_value(&mut out, v);
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn format_document(doc: &Document) -> String {
    match doc {
        Document::Coefficients(c) => format_coefficients(c),
        Document::Samples(s) => format_samples(s),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

struct Header {
    kind: String,
    bandwidth: usize,
    flavor: Flavor,
}

fn parse_header(line: usize, text: &str) -> Result<Header> {
    let mut tokens = text.split_whitespace();
    let kind = tokens.next().ok_or_else(|| FormatError::at(line, "missing header"))?.to_string();
    if !matches!(kind.as_str(), "SO3FT" | "S2FT" | "SO3SAMPLES" | "S2GRID") {
        return Err(FormatError::at(line, format!("unknown file kind `{kind}`")));
    }
    match tokens.next() {
        Some("v1") => {}
        Some(v) => return Err(FormatError::at(line, format!("unsupported version `{v}`"))),
        None => return Err(FormatError::at(line, "missing version")),
    }
    let mut bandwidth = None;
    let mut flavor = Flavor::Real;
    for token in tokens {
        match token.split_once('=') {
            Some(("B", v)) => {
                let b: usize = v.parse().map_err(|_| FormatError::at(line, format!("invalid bandwidth `{v}`")))?;
                if b == 0 {
                    return Err(FormatError::at(line, "bandwidth must be at least 1"));
                }
                bandwidth = Some(b);
            }
            Some(("flavor", "real")) => flavor = Flavor::Real,
            Some(("flavor", "complex")) => flavor = Flavor::Complex,
            _ => return Err(FormatError::at(line, format!("unexpected header field `{token}`"))),
        }
    }
    let bandwidth = bandwidth.ok_or_else(|| FormatError::at(line, "header lacks B=<bandwidth>"))?;
    if matches!(kind.as_str(), "S2FT" | "S2GRID") && flavor == Flavor::Complex {
        return Err(FormatError::at(line, format!("{kind} supports only real values")));
    }
    Ok(Header { kind, bandwidth, flavor })
}

fn parse_f64(line: usize, token: &str) -> Result<f64> {
    let v: f64 = token
        .parse()
        .map_err(|_| FormatError::at(line, format!("invalid number `{token}`")))?;
    if !v.is_finite() {
        return Err(FormatError::at(line, format!("non-finite value `{token}`")));
    }
    Ok(v)
}

fn parse_i64(line: usize, token: &str) -> Result<i64> {
    token
        .parse()
        .map_err(|_| FormatError::at(line, format!("invalid integer `{token}`")))
}

fn fields(line: usize, text: &str, expected: usize) -> Result<Vec<&str>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != expected {
        return Err(FormatError::at(line, format!("expected {expected} fields, found {}", tokens.len())));
    }
    Ok(tokens)
}

fn check_order(line: usize, name: &str, value: i64, l: i64) -> Result<()> {
    if value.abs() > l {
        return Err(FormatError::at(line, format!("{name}={value} outside -{l}..={l}")));
    }
    Ok(())
}

fn parse_degree(line: usize, token: &str, bandwidth: usize) -> Result<usize> {
    let l = parse_i64(line, token)?;
    if l < 0 || l as usize >= bandwidth {
        return Err(FormatError::at(line, format!("degree {l} outside 0..{bandwidth}")));
    }
    Ok(l as usize)
}

/// Reads any supported file from its text.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or_else(|| FormatError::at(1, "empty file"))?;
    let header = parse_header(hline, htext)?;
    let b = header.bandwidth;
    match (header.kind.as_str(), header.flavor) {
        ("SO3FT", flavor) => {
            let width = if flavor == Flavor::Real { 4 } else { 5 };
            let mut real = SO3Coefficients::<f64>::zeros(b);
            let mut complex = SO3Coefficients::<Complex64>::zeros(b);
            let mut seen = std::collections::HashSet::new();
            for (n, text) in lines {
                let t = fields(n, text, width)?;
                let l = parse_degree(n, t[0], b)?;
                let (m, k) = (parse_i64(n, t[1])?, parse_i64(n, t[2])?);
                check_order(n, "m", m, l as i64)?;
                check_order(n, "n", k, l as i64)?;
                if !seen.insert((l, m, k)) {
                    return Err(FormatError::at(n, format!("duplicate entry ({l}, {m}, {k})")));
                }
                match flavor {
                    Flavor::Real => real.set(l, m, k, parse_f64(n, t[3])?),
                    Flavor::Complex => complex.set(l, m, k, Complex64::new(parse_f64(n, t[3])?, parse_f64(n, t[4])?)),
                }
            }
            Ok(Document::Coefficients(match flavor {
                Flavor::Real => CoefficientSet::So3Real(real),
                Flavor::Complex => CoefficientSet::So3Complex(complex),
            }))
        }
        ("S2FT", _) => {
            let mut coeffs = S2Coefficients::<f64>::zeros(b);
            let mut seen = std::collections::HashSet::new();
            for (n, text) in lines {
                let t = fields(n, text, 3)?;
                let l = parse_degree(n, t[0], b)?;
                let m = parse_i64(n, t[1])?;
                check_order(n, "m", m, l as i64)?;
                if !seen.insert((l, m)) {
                    return Err(FormatError::at(n, format!("duplicate entry ({l}, {m})")));
                }
                coeffs.set(l, m, parse_f64(n, t[2])?);
            }
            Ok(Document::Coefficients(CoefficientSet::S2Real(coeffs)))
        }
        ("SO3SAMPLES", flavor) => {
            let expected = (2 * b).pow(3);
            let mut count = 0;
            let mut real = Vec::new();
            let mut complex = Vec::new();
            let mut last = hline;
            for (n, text) in lines {
                last = n;
                count += 1;
                if count > expected {
                    return Err(FormatError::at(n, format!("more than {expected} samples")));
                }
                match flavor {
                    Flavor::Real => real.push(parse_f64(n, fields(n, text, 1)?[0])?),
                    Flavor::Complex => {
                        let t = fields(n, text, 2)?;
                        complex.push(Complex64::new(parse_f64(n, t[0])?, parse_f64(n, t[1])?));
                    }
                }
            }
            if count != expected {
                return Err(FormatError::at(last, format!("expected {expected} samples, found {count}")));
            }
            let set = match flavor {
                Flavor::Real => SampleSet::So3Real(SO3Samples::new(b, real).expect("length checked")),
                Flavor::Complex => SampleSet::So3Complex(SO3Samples::new(b, complex).expect("length checked")),
            };
            Ok(Document::Samples(set))
        }
        ("S2GRID", _) => {
            let size = 2 * b;
            let mut data = Vec::with_capacity(size * size);
            let mut rows = 0;
            let mut last = hline;
            for (n, text) in lines {
                last = n;
                rows += 1;
                if rows > size {
                    return Err(FormatError::at(n, format!("more than {size} rows")));
                }
                for token in fields(n, text, size)? {
                    data.push(parse_f64(n, token)?);
                }
            }
            if rows != size {
                return Err(FormatError::at(last, format!("expected {size} rows, found {rows}")));
            }
            Ok(Document::Samples(SampleSet::S2Grid(S2Samples::new(b, data).expect("shape checked"))))
        }
        _ => unreachable!("header kinds are validated"),
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    parse_document(&fs::read_to_string(path)?)
}

pub fn write_document(path: &Path, doc: &Document) -> Result<()> {
    fs::write(path, format_document(doc))?;
    Ok(())
}
