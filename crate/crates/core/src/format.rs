//! JSON files: instances, points, results and witnesses.
//!
//! Every rational travels as a string `"p"` or `"p/r"`; JSON numbers are
//! accepted only for grid sizes, exponent indices and dimensions. An entry
//! is `{"q": grid, "num": [[k, "c"], ...], "den": [...]}` meaning
//! `sum c t^(k/q)` over the same for `den`; a missing `den` means 1 and a
//! missing `q` inherits the file's grid (1 if the file has none).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Instance, TropPoint};
use crate::linalg::Matrix;
use crate::scalar::rational::{format_rational, parse_rational};
use crate::scalar::{LaurentPoly, PuiseuxRational, Valuation};

/// Largest accepted grid, per entry and for a whole file.
pub const MAX_GRID: u64 = 1 << 16;
/// Largest accepted `|k|` in `t^(k/q)`, and numerator or denominator
/// magnitude of a point coordinate.
pub const MAX_EXPONENT: i64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn invalid(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub num: Vec<(i64, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<(i64, String)>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<EntryJson>>,
    pub b: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub v: Vec<String>,
}

/// Output of `check`/`lift`, also accepted as a witness file.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<EntryJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default)]
    pub timings: BTreeMap<String, f64>,
    /// Truncated series of each witness coordinate, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion: Option<Vec<String>>,
}

fn check_grid(q: u64, path: &str) -> Result<u64, FormatError> {
    if q == 0 || q > MAX_GRID {
        return Err(invalid(path, format!("grid q = {q} outside 1..={MAX_GRID}")));
    }
    Ok(q)
}

fn terms_from_json(q: u64, terms: &[(i64, String)], path: &str) -> Result<LaurentPoly, FormatError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for (t, (k, c)) in terms.iter().enumerate() {
        if k.abs() > MAX_EXPONENT {
            return Err(invalid(&format!("{path}[{t}][0]"), format!("exponent index {k} exceeds {MAX_EXPONENT}")));
        }
        let c = parse_rational(c).map_err(|e| invalid(&format!("{path}[{t}][1]"), e.to_string()))?;
        parsed.push((*k, c));
    }
    Ok(LaurentPoly::from_grid_terms(q, parsed))
}

fn entry_from_json(e: &EntryJson, file_q: u64, path: &str) -> Result<PuiseuxRational, FormatError> {
    let q = match e.q {
        Some(q) => check_grid(q, &format!("{path}.q"))?,
        None => file_q,
    };
    let num = terms_from_json(q, &e.num, &format!("{path}.num"))?;
    let den = match &e.den {
        None => LaurentPoly::one(),
        Some(d) => terms_from_json(q, d, &format!("{path}.den"))?,
    };
    PuiseuxRational::new(num, den).map_err(|_| invalid(&format!("{path}.den"), "denominator is zero"))
}

fn terms_to_json(p: &LaurentPoly, q: u64) -> Vec<(i64, String)> {
    p.on_grid(q).into_iter().map(|(k, c)| (k, format_rational(&c))).collect()
}

/// Serializes `x` on grid `q`, which must be a multiple of `x.grid()`.
/// The `q` field is written only when `with_q` is set.
pub fn entry_to_json(x: &PuiseuxRational, q: u64, with_q: bool) -> EntryJson {
    EntryJson {
        q: with_q.then_some(q),
        num: terms_to_json(x.num(), q),
        den: (!x.is_laurent()).then(|| terms_to_json(x.den(), q)),
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance, FormatError> {
    let raw: InstanceJson = serde_json::from_slice(bytes)?;
    instance_from_json(&raw)
}

pub fn instance_from_json(raw: &InstanceJson) -> Result<Instance, FormatError> {
    let file_q = check_grid(raw.q.unwrap_or(1), "q")?;
    let m = raw.a.len();
    if let Some(expected) = raw.m {
        if expected != m {
            return Err(invalid("A", format!("has {m} rows but m = {expected}")));
        }
    }
    if raw.b.len() != m {
        return Err(invalid("b", format!("has {} entries but A has {m} rows", raw.b.len())));
    }
    let n = match (raw.n, raw.a.first()) {
        (Some(n), _) => n,
        (None, Some(row)) => row.len(),
        (None, None) => 0,
    };
    let mut rows = Vec::with_capacity(m);
    let mut grid = file_q;
    for (i, row) in raw.a.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(&format!("A[{i}]"), format!("has {} entries, expected {n}", row.len())));
        }
        let mut parsed = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            let path = format!("A[{i}][{j}]");
            let x = entry_from_json(e, file_q, &path)?;
            grid = refine_grid(grid, x.grid(), &path)?;
            parsed.push(x);
        }
        rows.push(parsed);
    }
    let mut b = Vec::with_capacity(m);
    for (i, e) in raw.b.iter().enumerate() {
        let path = format!("b[{i}]");
        let x = entry_from_json(e, file_q, &path)?;
        grid = refine_grid(grid, x.grid(), &path)?;
        b.push(x);
    }
    check_span(rows.iter().flatten().chain(&b), grid)?;
    let a = Matrix::with_cols(n, rows).expect("row lengths checked");
    Ok(Instance::new(a, b).expect("rhs length checked"))
}

fn refine_grid(grid: u64, q: u64, path: &str) -> Result<u64, FormatError> {
    let g = grid.lcm(&q);
    if g > MAX_GRID {
        return Err(invalid(path, format!("common grid exceeds {MAX_GRID}")));
    }
    Ok(g)
}

/// On the common grid every exponent index must stay within bounds.
fn check_span<'a>(xs: impl Iterator<Item = &'a PuiseuxRational>, grid: u64) -> Result<(), FormatError> {
    for x in xs {
        for k in x.num().on_grid(grid).iter().chain(&x.den().on_grid(grid)).map(|(k, _)| k) {
            if k.abs() > MAX_EXPONENT {
                return Err(invalid("A", format!("exponent index {k} on the common grid {grid} exceeds {MAX_EXPONENT}")));
            }
        }
    }
    Ok(())
}

/// Serializes with the file grid equal to the instance grid.
pub fn instance_to_json(inst: &Instance) -> InstanceJson {
    let q = inst.grid();
    InstanceJson {
        q: Some(q),
        m: Some(inst.m()),
        n: Some(inst.n()),
        a: inst
            .a()
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|x| entry_to_json(x, q, false)).collect())
            .collect(),
        b: inst.b().iter().map(|x| entry_to_json(x, q, false)).collect(),
    }
}

pub fn parse_point(bytes: &[u8]) -> Result<TropPoint, FormatError> {
    let raw: PointJson = serde_json::from_slice(bytes)?;
    point_from_json(&raw)
}

pub fn point_from_json(raw: &PointJson) -> Result<TropPoint, FormatError> {
    let bound = BigInt::from(MAX_EXPONENT);
    let mut coords = Vec::with_capacity(raw.v.len());
    for (j, s) in raw.v.iter().enumerate() {
        let path = format!("v[{j}]");
        if s == "inf" {
            coords.push(Valuation::Infinity);
            continue;
        }
        let x = parse_rational(s).map_err(|e| invalid(&path, e.to_string()))?;
        if x.numer().abs() > bound || x.denom() > &bound {
            return Err(invalid(&path, format!("`{s}` exceeds the magnitude bound {MAX_EXPONENT}")));
        }
        coords.push(Valuation::Finite(x));
    }
    Ok(TropPoint::new(coords))
}

pub fn point_to_json(v: &TropPoint) -> PointJson {
    PointJson {
        v: v.coords()
            .iter()
            .map(|c| match c {
                Valuation::Finite(x) => format_rational(x),
                Valuation::Infinity => "inf".to_string(),
            })
            .collect(),
    }
}

pub fn parse_result(bytes: &[u8]) -> Result<ResultFile, FormatError> {
    let raw: ResultFile = serde_json::from_slice(bytes)?;
    if raw.verdict != "member" && raw.verdict != "not_member" {
        return Err(invalid("verdict", format!("`{}` is neither member nor not_member", raw.verdict)));
    }
    Ok(raw)
}

/// Reads the `witness` array of a result file.
pub fn parse_witness(bytes: &[u8]) -> Result<Vec<PuiseuxRational>, FormatError> {
    let raw = parse_result(bytes)?;
    let entries = raw.witness.ok_or_else(|| invalid("witness", "missing"))?;
    witness_from_json(&entries)
}

pub fn witness_from_json(entries: &[EntryJson]) -> Result<Vec<PuiseuxRational>, FormatError> {
    let xs = entries
        .iter()
        .enumerate()
        .map(|(j, e)| entry_from_json(e, 1, &format!("witness[{j}]")))
        .collect::<Result<Vec<_>, _>>()?;
    for (j, x) in xs.iter().enumerate() {
        check_span(std::iter::once(x), x.grid()).map_err(|e| match e {
            FormatError::Invalid { message, .. } => invalid(&format!("witness[{j}]"), message),
            other => other,
        })?;
    }
    Ok(xs)
}

/// Each coordinate on its own grid, `q` always written.
pub fn witness_to_json(x: &[PuiseuxRational]) -> Vec<EntryJson> {
    x.iter().map(|xj| entry_to_json(xj, xj.grid(), true)).collect()
}

/// `x` expanded at `t = 0` below order `upto`, e.g. `1 - t + O(t^2)`.
pub fn render_expansion(x: &PuiseuxRational, upto: i64) -> String {
    let e = BigRational::from_integer(BigInt::from(upto));
    let terms: Vec<(BigRational, BigRational)> = x.expansion(&e).into_iter().filter(|(k, _)| k < &e).collect();
    let grid = terms.iter().fold(1u64, |g, (k, _)| g.lcm(&k.denom().to_u64().expect("grid fits u64")));
    let poly = LaurentPoly::from_grid_terms(
        grid,
        terms.into_iter().map(|(k, c)| {
            let idx = (k * BigRational::from_integer(BigInt::from(grid))).to_integer();
            (idx.to_i64().expect("index fits i64"), c)
        }),
    );
    let exact = x.is_laurent() && x.num().exponent_terms().all(|(k, _)| k < e);
    if exact {
        poly.to_string()
    } else if poly.is_zero() {
        format!("O(t^{upto})")
    } else {
        format!("{poly} + O(t^{upto})")
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}
