//! Text and JSON input formats.
//!
//! Circuit lists: a header line `n k`, then `k` lines with one circuit each
//! (space-separated elements). Vector configurations: a header `n d`, then
//! `n` lines of `d` rationals (`p/q` or integers). `#` starts a comment.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use crate::chi_map::{ChiKind, ChiMap};
use crate::elements::{word_set, Element, ElementSet};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::matroid::Matroid;
use crate::realization::{FlatBasisAssignment, VectorConfig};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| {
        Error::parse(
            line,
            format!("expected a nonnegative integer, got {token:?}"),
        )
    })
}

pub fn parse_rational(token: &str, line: usize) -> Result<Rational> {
    token
        .parse::<Rational>()
        .map_err(|e| Error::parse(line, format!("invalid rational {token:?}: {e}")))
}

fn header(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    what: &str,
) -> Result<(usize, usize, usize)> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing header line \"{what}\"")))?;
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(Error::parse(line, format!("header must be \"{what}\"")));
    }
    Ok((
        line,
        parse_usize(tokens[0], line)?,
        parse_usize(tokens[1], line)?,
    ))
}

pub fn parse_circuit_list(text: &str) -> Result<Matroid> {
    let mut lines = content_lines(text);
    let (header_line, n, k) = header(&mut lines, "n k")?;
    let mut circuits = Vec::with_capacity(k);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        let elements = body
            .split_whitespace()
            .map(|t| parse_usize(t, line))
            .collect::<Result<Vec<Element>>>()?;
        let set = ElementSet::checked(n, elements.iter().copied())
            .map_err(|e| Error::parse(line, e.to_string()))?;
        if set.len() != elements.len() {
            return Err(Error::parse(line, "repeated element in circuit"));
        }
        circuits.push(set);
    }
    if circuits.len() != k {
        return Err(Error::parse(
            last_line,
            format!("header announces {k} circuits, found {}", circuits.len()),
        ));
    }
    Matroid::from_circuits(n, circuits)
}

pub fn write_circuit_list(matroid: &Matroid) -> String {
    let mut out = format!("{} {}\n", matroid.n(), matroid.circuits().len());
    for c in matroid.circuits() {
        let labels: Vec<String> = c.iter().map(|e| e.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_vector_config(text: &str) -> Result<VectorConfig> {
    let mut lines = content_lines(text);
    let (header_line, n, d) = header(&mut lines, "n d")?;
    let mut vectors = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        let v = body
            .split_whitespace()
            .map(|t| parse_rational(t, line))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != d {
            return Err(Error::parse(
                line,
                format!("expected {d} coordinates, got {}", v.len()),
            ));
        }
        vectors.push(v);
    }
    if vectors.len() != n {
        return Err(Error::parse(
            last_line,
            format!("header announces {n} vectors, found {}", vectors.len()),
        ));
    }
    VectorConfig::new(d, vectors)
}

pub fn write_vector_config(config: &VectorConfig) -> String {
    let mut out = format!("{} {}\n", config.n(), config.d());
    for v in config.vectors() {
        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.to_string())
}

#[derive(Deserialize)]
struct FlatBasisFile {
    flats: Vec<FlatBasisRecord>,
}

#[derive(Deserialize)]
struct FlatBasisRecord {
    flat: Vec<Element>,
    basis: Vec<Vec<String>>,
}

/// `{"flats": [{"flat": [1,2,3], "basis": [["0","0","1"], ["0","1/2","1"]]}]}`;
/// flats not listed keep the lexicographic default.
pub fn parse_flat_basis(
    text: &str,
    config: &VectorConfig,
    matroid: &Matroid,
) -> Result<FlatBasisAssignment> {
    let file: FlatBasisFile = serde_json::from_str(text).map_err(json_error)?;
    let mut assignment = FlatBasisAssignment::lex();
    for record in file.flats {
        let flat = ElementSet::checked(matroid.n(), record.flat.iter().copied())?;
        let basis = record
            .basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|t| parse_rational(t, 0))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        assignment.set(config, matroid, flat, basis)?;
    }
    Ok(assignment)
}

#[derive(Deserialize)]
struct ChiTableFile {
    n: usize,
    values: Vec<ChiTableRecord>,
}

#[derive(Deserialize)]
struct ChiTableRecord {
    set: Vec<Element>,
    value: String,
}

/// A user-supplied χ: `{"n": 3, "values": [{"set": [1,2], "value": "1/2"}]}`.
/// Values refer to the set read in increasing order; unlisted sets map to
/// zero. The table must be nonzero exactly on the independent sets of
/// `matroid`.
pub fn parse_chi_table(text: &str, matroid: &Matroid) -> Result<ChiMap> {
    let file: ChiTableFile = serde_json::from_str(text).map_err(json_error)?;
    if file.n != matroid.n() {
        return Err(Error::SizeMismatch(format!(
            "table is for {} elements, matroid has {}",
            file.n,
            matroid.n()
        )));
    }
    let mut values = HashMap::new();
    for record in file.values {
        let set = word_set(&record.set)?;
        ElementSet::checked(file.n, record.set.iter().copied())?;
        if values
            .insert(set, parse_rational(&record.value, 0)?)
            .is_some()
        {
            return Err(Error::Invalid(format!("set {set} listed twice")));
        }
    }
    let chi = ChiMap::from_table(ChiKind::Custom, file.n, values);
    if let Some(bad) = crate::chi_map::check_nonvanishing(matroid, &chi, matroid.n()) {
        return Err(Error::Invalid(format!(
            "custom χ must be nonzero exactly on independent sets; {bad} violates this"
        )));
    }
    Ok(chi)
}

#[derive(Deserialize)]
struct BetaFile {
    n: usize,
    values: Vec<BetaRecord>,
}

#[derive(Deserialize)]
struct BetaRecord {
    i: Element,
    j: Element,
    value: String,
}

/// `{"n": 3, "values": [{"i": 1, "j": 2, "value": "-1"}, ...]}` with every
/// pair `i < j` listed.
pub fn parse_beta(text: &str) -> Result<crate::algebra::BetaSystem> {
    let file: BetaFile = serde_json::from_str(text).map_err(json_error)?;
    let mut values = BTreeMap::new();
    for r in file.values {
        values.insert((r.i, r.j), parse_rational(&r.value, 0)?);
    }
    crate::algebra::BetaSystem::custom(file.n, values)
}
