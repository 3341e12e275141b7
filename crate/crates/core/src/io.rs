//! Text formats: configuration matrices, circulant scheme files and the
//! inline graph shorthands.
//!
//! ```text
//! n=3            n=6            n=5;S=1,4
//! 0 1 1          C: 0           n=3; arcs=1:0,1;1:1,2;2:2,0
//! 1 0 1          C: 1,5
//! 1 1 0          C: 2,3,4
//! ```

use crate::circulant::CirculantScheme;
use crate::coloring::Coloring;
use crate::config::CoherentConfig;
use crate::error::{Error, Result};

/// A parsed input of any of the supported formats.
#[derive(Clone, Debug)]
pub enum Input {
    /// A color matrix, not yet validated.
    Matrix(Coloring),
    /// A partition of Z_n given as connection sets, with whether the
    /// partition was already coherent. The scheme is its closure.
    Scheme {
        scheme: CirculantScheme,
        coherent: bool,
    },
    /// `n=<int>;S=...`: the closure of a circulant graph.
    Circulant {
        scheme: CirculantScheme,
        connection: Vec<usize>,
    },
    /// `n=<int>;arcs=...`: the closure of an arc-colored graph.
    Arcs(CoherentConfig),
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| {
        perr(format!(
            "{what}: expected a non-negative integer, got {:?}",
            s.trim()
        ))
    })
}

fn parse_header(line: &str) -> Result<usize> {
    let rest = line
        .trim()
        .strip_prefix("n=")
        .ok_or_else(|| perr(format!("expected \"n=<int>\", got {:?}", line.trim())))?;
    let n = parse_usize(rest, "n")?;
    if n == 0 {
        return Err(perr("n must be positive"));
    }
    Ok(n)
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_usize(t, what)).collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

/// Parses any supported format, detected from its shape.
pub fn parse_input(text: &str) -> Result<Input> {
    let first = content_lines(text)
        .next()
        .ok_or_else(|| perr("empty input"))?;
    if first.contains(';') {
        let mut parts = first.splitn(2, ';');
        let n = parse_header(parts.next().unwrap_or(""))?;
        let tail = parts.next().unwrap_or("").trim();
        if let Some(s) = tail.strip_prefix("S=") {
            let connection = parse_list(s, "connection set")?;
            let scheme = CirculantScheme::of_graph(n, &connection)?;
            return Ok(Input::Circulant { scheme, connection });
        }
        if let Some(a) = tail.strip_prefix("arcs=") {
            return Ok(Input::Arcs(parse_arcs(n, a)?));
        }
        return Err(perr(format!(
            "expected \"S=\" or \"arcs=\" after ';', got {tail:?}"
        )));
    }
    if content_lines(text)
        .nth(1)
        .is_some_and(|l| l.starts_with("C:"))
    {
        let (scheme, coherent) = parse_scheme_file(text)?;
        return Ok(Input::Scheme { scheme, coherent });
    }
    Ok(Input::Matrix(parse_matrix(text)?))
}

/// `<color>:<i>,<j>` items separated by ';'. Unlisted pairs get color 0
/// off the diagonal; the diagonal gets its own color.
fn parse_arcs(n: usize, text: &str) -> Result<CoherentConfig> {
    let mut labels: Vec<u64> = (0..n * n).map(|i| u64::from(i / n == i % n)).collect();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (c, pair) = item
            .split_once(':')
            .ok_or_else(|| perr(format!("arc {item:?}: expected <color>:<i>,<j>")))?;
        let c = parse_usize(c, "arc color")?;
        let ends = parse_list(pair, "arc end")?;
        let [i, j] = ends[..] else {
            return Err(perr(format!("arc {item:?}: expected two ends")));
        };
        if i >= n || j >= n {
            return Err(Error::PointOutOfRange { point: i.max(j), n });
        }
        labels[i * n + j] = c as u64 + 2;
    }
    CoherentConfig::closure(n, &labels)
}

/// "n=<int>" then n rows of n color ids.
pub fn parse_matrix(text: &str) -> Result<Coloring> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next().ok_or_else(|| perr("empty input"))?)?;
    let mut labels = Vec::with_capacity(n * n);
    let mut rows = 0;
    for line in lines {
        let row: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| perr(format!("bad color id {t:?}"))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(perr(format!(
                "row {rows} has {} entries, expected {n}",
                row.len()
            )));
        }
        labels.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(perr(format!("{rows} rows, expected {n}")));
    }
    Coloring::from_labels(n, &labels)
}

pub fn format_matrix(cc: &CoherentConfig) -> String {
    let n = cc.n();
    let mut s = format!("n={n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| cc.color(a, b).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// "n=<int>" then one "C: a,b,c" line per part. The part {0} may be left
/// out. Returns the closure and whether the partition was coherent.
pub fn parse_scheme_file(text: &str) -> Result<(CirculantScheme, bool)> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next().ok_or_else(|| perr("empty input"))?)?;
    let mut parts = Vec::new();
    for line in lines {
        let rest = line
            .strip_prefix("C:")
            .ok_or_else(|| perr(format!("expected \"C: a,b,c\", got {line:?}")))?;
        parts.push(parse_list(rest, "connection set")?);
    }
    if !parts.iter().flatten().any(|&d| d == 0) {
        parts.push(vec![0]);
    }
    CirculantScheme::from_connection_partition(n, &parts)
}

/// Parses `n=<int>;S=a,b,c`.
pub fn parse_graph_shorthand(text: &str) -> Result<(usize, Vec<usize>)> {
    match parse_input(text)? {
        Input::Circulant { scheme, connection } => Ok((scheme.n(), connection)),
        _ => Err(perr("expected \"n=<int>;S=a,b,c\"")),
    }
}

pub fn format_graph_shorthand(n: usize, connection: &[usize]) -> String {
    let items: Vec<String> = connection.iter().map(|d| d.to_string()).collect();
    format!("n={n};S={}", items.join(","))
}

impl Input {
    /// The coherent configuration the input describes, closing where the
    /// format calls for it. A matrix must already be coherent.
    pub fn into_config(self) -> Result<CoherentConfig> {
        match self {
            Input::Matrix(c) => CoherentConfig::new(c),
            Input::Scheme { scheme, .. } | Input::Circulant { scheme, .. } => {
                Ok(scheme.config().clone())
            }
            Input::Arcs(cc) => Ok(cc),
        }
    }

    /// The circulant scheme, if the input is one or is a translation
    /// invariant configuration on Z_n.
    pub fn into_scheme(self) -> Result<CirculantScheme> {
        match self {
            Input::Scheme { scheme, .. } | Input::Circulant { scheme, .. } => Ok(scheme),
            other => CirculantScheme::from_config(&other.into_config()?),
        }
    }
}
