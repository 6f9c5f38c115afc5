//! Text formats for block families, frequency tables, Sidon sets, PBDs,
//! search certificates and anti-magic cubes.
//!
//! Writers emit one canonical form, so equal objects give equal bytes.
//! Readers accept `#` comment lines and blank lines anywhere.

use std::fmt::Write as _;
use std::str::FromStr;

use adesign_core::pbd::PbdInstance;
use adesign_core::search::{CubeAssignment, MuCertificate};
use adesign_core::sidon::SidonSet;
use adesign_core::{Block, BlockFamily, FrequencyTable};

use crate::CliError;

/// A malformed file.
#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FormatError {
    /// Bad content on a (1-based) line.
    #[error("line {line}: {message}")]
    Syntax {
        /// Line number.
        line: usize,
        /// What is wrong.
        message: String,
    },
    /// The parsed content is not a valid object.
    #[error(transparent)]
    Invalid(#[from] adesign_core::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: FromStr>(line: usize, s: &str) -> Result<T, FormatError> {
    s.parse()
        .map_err(|_| syntax(line, format!("expected a nonnegative integer, found {s:?}")))
}

fn parse_list<T: FromStr>(line: usize, s: &str) -> Result<Vec<T>, FormatError> {
    s.split_whitespace().map(|w| parse_num(line, w)).collect()
}

/// Parses `<keyword> key=value ...`, returning values for `keys` in order.
/// Keys listed in `optional` may be absent.
fn parse_header(
    line: Option<(usize, &str)>,
    keyword: &str,
    keys: &[&str],
    optional: &[&str],
) -> Result<Vec<Option<u64>>, FormatError> {
    let (n, text) = line.ok_or_else(|| syntax(1, format!("missing `{keyword}` header")))?;
    let mut words = text.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(syntax(n, format!("expected `{keyword}` header")));
    }
    let mut values = vec![None; keys.len()];
    for w in words {
        let (key, value) = w
            .split_once('=')
            .ok_or_else(|| syntax(n, format!("expected key=value, found {w:?}")))?;
        let slot = keys
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| syntax(n, format!("unknown header key {key:?}")))?;
        if values[slot].is_some() {
            return Err(syntax(n, format!("repeated header key {key:?}")));
        }
        values[slot] = Some(parse_num(n, value)?);
    }
    for (key, value) in keys.iter().zip(&values) {
        if value.is_none() && !optional.contains(key) {
            return Err(syntax(n, format!("header lacks {key}=")));
        }
    }
    Ok(values)
}

fn to_u32(line: usize, x: u64) -> Result<u32, FormatError> {
    u32::try_from(x).map_err(|_| syntax(line, format!("{x} is out of range")))
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// `blockfamily v=<v> k=<k>` then `<multiplicity> : <points>` per block type.
pub fn write_family(family: &BlockFamily) -> String {
    let mut out = format!("blockfamily v={} k={}\n", family.v(), family.k());
    for (block, mult) in family.iter() {
        writeln!(out, "{mult} : {block}").unwrap();
    }
    out
}

/// Reads a block family; repeated blocks add their multiplicities.
pub fn parse_family(text: &str) -> Result<BlockFamily, FormatError> {
    let mut lines = content_lines(text);
    let h = parse_header(lines.next(), "blockfamily", &["v", "k"], &[])?;
    let (v, k) = (to_u32(1, h[0].unwrap())?, to_u32(1, h[1].unwrap())?);
    let mut family = BlockFamily::new(v, k)?;
    for (n, line) in lines {
        let (mult, points) = line
            .split_once(':')
            .ok_or_else(|| syntax(n, "expected `<multiplicity> : <points>`"))?;
        let mult: u64 = parse_num(n, mult.trim())?;
        let points: Vec<u32> = parse_list(n, points)?;
        if points.len() != k as usize {
            return Err(syntax(
                n,
                format!("block has {} points, expected {k}", points.len()),
            ));
        }
        let block = Block::new(points, v).map_err(|e| syntax(n, e.to_string()))?;
        family
            .add(block, mult)
            .map_err(|e| syntax(n, e.to_string()))?;
    }
    Ok(family)
}

/// `<t-subset points> : <frequency>` in lexicographic order.
pub fn write_frequencies(table: &FrequencyTable) -> String {
    let mut out = String::new();
    for (subset, freq) in table.iter() {
        writeln!(out, "{} : {freq}", join(&subset)).unwrap();
    }
    out
}

/// `sidon r=<r> [mod=<n>]` then the elements on one line.
pub fn write_sidon(set: &SidonSet) -> String {
    let mut out = format!("sidon r={}", set.order());
    if let Some(m) = set.modulus() {
        write!(out, " mod={m}").unwrap();
    }
    writeln!(out, "\n{}", join(set.elements())).unwrap();
    out
}

/// Reads a Sidon set file and verifies the B_r property.
pub fn parse_sidon(text: &str) -> Result<SidonSet, FormatError> {
    let mut lines = content_lines(text);
    let h = parse_header(lines.next(), "sidon", &["r", "mod"], &["mod"])?;
    let r = to_u32(1, h[0].unwrap())?;
    let (n, elements) = lines
        .next()
        .ok_or_else(|| syntax(2, "missing element line"))?;
    let elements: Vec<u64> = parse_list(n, elements)?;
    if let Some((n, _)) = lines.next() {
        return Err(syntax(n, "unexpected content after the element line"));
    }
    Ok(SidonSet::new(elements, r, h[1])?)
}

/// `pbd v=<v>` then one block per line.
pub fn write_pbd(pbd: &PbdInstance) -> String {
    let mut out = format!("pbd v={}\n", pbd.v());
    for b in pbd.blocks() {
        writeln!(out, "{}", join(b)).unwrap();
    }
    out
}

/// Reads a PBD file; coverage is checked separately.
pub fn parse_pbd(text: &str) -> Result<PbdInstance, FormatError> {
    let mut lines = content_lines(text);
    let h = parse_header(lines.next(), "pbd", &["v"], &[])?;
    let v = to_u32(1, h[0].unwrap())?;
    let mut blocks = Vec::new();
    for (n, line) in lines {
        blocks.push(parse_list::<u32>(n, line)?);
    }
    Ok(PbdInstance::new(v, blocks)?)
}

/// Block-family file with a `# mu=<m> optimal=<bool> nodes=<count>` trailer.
pub fn write_certificate(cert: &MuCertificate) -> String {
    let mut out = write_family(&cert.family);
    writeln!(
        out,
        "# mu={} optimal={} nodes={}",
        cert.mu, cert.optimal, cert.nodes
    )
    .unwrap();
    out
}

/// Trailer values of a certificate file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateTrailer {
    /// Claimed maximum frequency.
    pub mu: u64,
    /// Whether optimality was proved.
    pub optimal: bool,
    /// Search nodes spent.
    pub nodes: u64,
}

/// Reads a certificate: the family and its trailer.
pub fn parse_certificate(text: &str) -> Result<(BlockFamily, CertificateTrailer), FormatError> {
    let family = parse_family(text)?;
    let (n, line) = text
        .lines()
        .enumerate()
        .filter(|(_, l)| l.trim().starts_with("# mu="))
        .last()
        .ok_or_else(|| syntax(text.lines().count(), "missing `# mu=` trailer"))?;
    let n = n + 1;
    let mut mu = None;
    let mut optimal = None;
    let mut nodes = None;
    for w in line.trim().trim_start_matches('#').split_whitespace() {
        match w.split_once('=') {
            Some(("mu", x)) => mu = Some(parse_num(n, x)?),
            Some(("nodes", x)) => nodes = Some(parse_num(n, x)?),
            Some(("optimal", x)) => {
                optimal = Some(match x {
                    "true" => true,
                    "false" => false,
                    _ => return Err(syntax(n, format!("expected true or false, found {x:?}"))),
                })
            }
            _ => return Err(syntax(n, format!("unexpected trailer field {w:?}"))),
        }
    }
    match (mu, optimal, nodes) {
        (Some(mu), Some(optimal), Some(nodes)) => {
            Ok((family, CertificateTrailer { mu, optimal, nodes }))
        }
        _ => Err(syntax(n, "trailer needs mu=, optimal= and nodes=")),
    }
}

/// Layer `i` as `n` lines of `n` integers, layers separated by a blank line.
pub fn write_cube(cube: &CubeAssignment) -> String {
    let n = cube.n();
    let layers: Vec<String> = cube
        .cells()
        .chunks(n * n)
        .map(|layer| {
            layer
                .chunks(n)
                .map(|row| join(row) + "\n")
                .collect::<String>()
        })
        .collect();
    layers.join("\n")
}

/// Reads a cube and verifies distinct line sums.
pub fn parse_cube(text: &str) -> Result<CubeAssignment, FormatError> {
    let rows: Vec<(usize, Vec<u64>)> = content_lines(text)
        .map(|(n, l)| parse_list(n, l).map(|r| (n, r)))
        .collect::<Result<_, _>>()?;
    let n = rows.first().map_or(0, |(_, r)| r.len());
    if n == 0 || rows.len() != n * n {
        return Err(syntax(
            1,
            format!("expected n^2 rows of n integers, found {} rows", rows.len()),
        ));
    }
    let mut cells = Vec::with_capacity(n * n * n);
    for (line, row) in rows {
        if row.len() != n {
            return Err(syntax(line, format!("expected {n} integers")));
        }
        cells.extend(row);
    }
    Ok(CubeAssignment::new(n, cells)?)
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(e) => CliError::Core(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}
